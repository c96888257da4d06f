#pragma once

// Linear decoding-energy model and energy-aware mode decision.
//
// Estimated energy is E = sum_i n_i * e_i over N coding tools; a candidate's
// cost is J = D + lambda_R * R + lambda_E * E. Units are the caller's: the
// library never converts them.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace greenmeta {

class EnergyModel {
public:
  /// Throws InvalidArgument on empty, length-mismatched, duplicate-named or
  /// negative input.
  EnergyModel(std::vector<std::string> tool_names, std::vector<double> coefficients);

  std::size_t size() const { return coefficients_.size(); }
  const std::vector<std::string>& tool_names() const { return tool_names_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  /// Index of the named tool, or size() if absent.
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;

private:
  std::vector<std::string> tool_names_;
  std::vector<double> coefficients_;
};

struct FeatureCounts {
  std::vector<std::uint64_t> counts;

  friend bool operator==(const FeatureCounts&, const FeatureCounts&) = default;
};

FeatureCounts operator+(const FeatureCounts& a, const FeatureCounts& b);

struct CodingCandidate {
  std::string id;
  double distortion = 0.0;
  double rate = 0.0;
  FeatureCounts counts;

  friend bool operator==(const CodingCandidate&, const CodingCandidate&) = default;
};

struct LagrangeWeights {
  double lambda_rate = 0.0;
  double lambda_energy = 0.0;
};

inline constexpr double kFracpelAvoidanceEnergy = 65536.0;  // 2^16

double estimate_energy(const EnergyModel& model, const FeatureCounts& counts);

double cost(const CodingCandidate& candidate, const LagrangeWeights& weights,
            const EnergyModel& model);

/// Minimum-cost candidate. Ties go to lower distortion, then lower rate, then
/// earlier position.
const CodingCandidate& derdo_select(std::span<const CodingCandidate> candidates,
                                    const LagrangeWeights& weights, const EnergyModel& model);

/// Same tools as `base`; "fracpel" set to 2^16 and every other coefficient to 0.
EnergyModel fracpel_avoiding_model(const EnergyModel& base);

}  // namespace greenmeta
