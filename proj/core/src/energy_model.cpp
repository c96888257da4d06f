#include "greenmeta/energy_model.hpp"

#include <algorithm>
#include <set>

#include "greenmeta/error.hpp"

namespace greenmeta {

namespace {

void require_dimension(const EnergyModel& model, const FeatureCounts& counts) {
  if (counts.counts.size() != model.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "model has " + std::to_string(model.size()) + " tools, counts have " +
                    std::to_string(counts.counts.size()));
  }
}

void require_weights(const LagrangeWeights& w) {
  if (!(w.lambda_rate >= 0.0) || !(w.lambda_energy >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Lagrange multipliers must be non-negative");
  }
}

}  // namespace

EnergyModel::EnergyModel(std::vector<std::string> tool_names, std::vector<double> coefficients)
    : tool_names_(std::move(tool_names)), coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "energy model needs at least one tool");
  }
  if (tool_names_.size() != coefficients_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "tool names and coefficients differ in length");
  }
  std::set<std::string_view> seen;
  for (const auto& name : tool_names_) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate tool name '" + name + "'");
    }
  }
  for (double e : coefficients_) {
    if (!(e >= 0.0)) throw Error(ErrorCode::InvalidArgument, "energy coefficients must be >= 0");
  }
}

std::size_t EnergyModel::index_of(std::string_view name) const {
  const auto it = std::find(tool_names_.begin(), tool_names_.end(), name);
  return static_cast<std::size_t>(it - tool_names_.begin());
}

FeatureCounts operator+(const FeatureCounts& a, const FeatureCounts& b) {
  if (a.counts.size() != b.counts.size()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot add counts of different length");
  }
  FeatureCounts sum{a.counts};
  for (std::size_t i = 0; i < sum.counts.size(); ++i) sum.counts[i] += b.counts[i];
  return sum;
}

double estimate_energy(const EnergyModel& model, const FeatureCounts& counts) {
  require_dimension(model, counts);
  double energy = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    energy += static_cast<double>(counts.counts[i]) * model.coefficients()[i];
  }
  return energy;
}

double cost(const CodingCandidate& candidate, const LagrangeWeights& weights,
            const EnergyModel& model) {
  require_weights(weights);
  if (!(candidate.distortion >= 0.0) || !(candidate.rate >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "candidate '" + candidate.id + "' has negative distortion or rate");
  }
  return candidate.distortion + weights.lambda_rate * candidate.rate +
         weights.lambda_energy * estimate_energy(model, candidate.counts);
}

const CodingCandidate& derdo_select(std::span<const CodingCandidate> candidates,
                                    const LagrangeWeights& weights, const EnergyModel& model) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidateSet, "no candidates to select from");

  std::size_t best = 0;
  double best_cost = cost(candidates[0], weights, model);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double j = cost(candidates[i], weights, model);
    const auto& c = candidates[i];
    const auto& b = candidates[best];
    const bool better = j < best_cost ||
                        (j == best_cost && (c.distortion < b.distortion ||
                                            (c.distortion == b.distortion && c.rate < b.rate)));
    if (better) {
      best = i;
      best_cost = j;
    }
  }
  return candidates[best];
}

EnergyModel fracpel_avoiding_model(const EnergyModel& base) {
  const std::size_t idx = base.index_of("fracpel");
  if (idx == base.size()) throw Error(ErrorCode::MissingTool, "model has no 'fracpel' tool");
  std::vector<double> coefficients(base.size(), 0.0);
  coefficients[idx] = kFracpelAvoidanceEnergy;
  return EnergyModel(base.tool_names(), std::move(coefficients));
}

}  // namespace greenmeta
