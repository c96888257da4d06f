#pragma once

// Receiver-side adaptation: composition of successive operations-reduction
// requests, and a planner that turns a power-reduction target into a single
// DOR-req using a calibrated device profile.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greenmeta/dor_request.hpp"
#include "greenmeta/error.hpp"

namespace greenmeta {

enum class LoopFilter { All, Dbf, Sao, Alf };

std::string_view to_string(LoopFilter f);

struct OpsReduction {
  int percent = 0;
  friend bool operator==(const OpsReduction&, const OpsReduction&) = default;
};
struct DisableLoopFilters {
  // Which filter a measurement refers to; every variant is signalled with the
  // same single bit.
  LoopFilter filter = LoopFilter::All;
  friend bool operator==(const DisableLoopFilters&, const DisableLoopFilters&) = default;
};
struct DisableBiPrediction {
  friend bool operator==(const DisableBiPrediction&, const DisableBiPrediction&) = default;
};
struct DisableIntraInB {
  friend bool operator==(const DisableIntraInB&, const DisableIntraInB&) = default;
};
struct DisableFracpel {
  friend bool operator==(const DisableFracpel&, const DisableFracpel&) = default;
};
struct SetResolution {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  friend bool operator==(const SetResolution&, const SetResolution&) = default;
};
struct SetFps {
  std::uint16_t fps = 0;
  friend bool operator==(const SetFps&, const SetFps&) = default;
};

using AdaptationAction = std::variant<OpsReduction, DisableLoopFilters, DisableBiPrediction,
                                      DisableIntraInB, DisableFracpel, SetResolution, SetFps>;

/// Throws OutOfRange / OddPercentage / FieldOutOfRange when the action cannot
/// be carried by a DOR-req (zero resolution or fps is the no-change sentinel
/// and therefore rejected).
void validate(const AdaptationAction& action);

/// Single-action request; untouched fields stay at their sentinel values.
DorRequest to_request(const AdaptationAction& action);

/// Compact text form: "ops:-36", "loop_filters", "loop_filters:dbf", "bi_pred",
/// "intra_in_B", "fracpel", "res:640x360", "fps:30".
std::string to_string(const AdaptationAction& action);
AdaptationAction parse_action(std::string_view text);

enum class DecoderBackend { Software, Hardware };

std::string_view to_string(DecoderBackend b);
DecoderBackend parse_backend(std::string_view text);

struct SavingsEntry {
  AdaptationAction action;
  double savings_pct = 0.0;         // positive = less energy
  std::optional<double> bdr_pct;    // nullopt = not available
  std::string label;                // optional human label, e.g. "half fps"

  friend bool operator==(const SavingsEntry&, const SavingsEntry&) = default;
};

struct DeviceProfile {
  std::string name;
  DecoderBackend decoder_backend = DecoderBackend::Software;
  std::string content_class;
  std::vector<SavingsEntry> entries;

  const SavingsEntry* find(const AdaptationAction& action) const;

  friend bool operator==(const DeviceProfile&, const DeviceProfile&) = default;
};

/// Savings in (-100, 100), valid actions, at most one entry per action.
void validate(const DeviceProfile& profile);

struct PowerTarget {
  double required_savings = 0.0;       // percent, in (0, 100)
  std::optional<double> max_bdr;       // nullopt = unbounded
};

enum class OpsRangeMode {
  V3,      // [-62, 64]
  Legacy,  // [-100, 100]
};

/// Product of (1 + c/100): the fraction of decoder operations that remains
/// after applying every request in turn. Empty input gives 1.
double cumulative_ops_factor(std::span<const double> percents, OpsRangeMode mode = OpsRangeMode::V3);

/// True iff a single v3 codeword c' satisfies (1 + c/100)(1 + c'/100) = 1
/// exactly. Throws OutOfRange outside [-62, 64].
bool single_request_invertible(int percent);

class UnreachableError : public Error {
public:
  UnreachableError(double best_residual, std::vector<int> best_sequence, int max_steps);

  double best_residual() const { return best_residual_; }
  const std::vector<int>& best_sequence() const { return best_sequence_; }

private:
  double best_residual_;
  std::vector<int> best_sequence_;
};

/// Shortest sequence of v3 codeword percentages bringing `current_factor` into
/// [1 - tolerance, 1 + tolerance]. Among shortest sequences the one that comes
/// first in largest-step-first order is returned, sorted descending.
///
/// `max_steps` bounds the search (default: the length lower bound + 2). Throws
/// UnreachableError carrying the best residual |factor * product - 1| over all
/// sequences up to that length.
std::vector<int> restoration_plan(double current_factor, double tolerance,
                                  std::optional<int> max_steps = std::nullopt);

struct PlanResult {
  SavingsEntry entry;
  DorRequest request;
  bool shortfall = false;
};

/// Picks the single action that meets the target with the smallest BDR
/// (unavailable BDR ranks worst). If nothing meets the target, returns the
/// largest-savings action with `shortfall` set.
PlanResult plan_request(const DeviceProfile& profile, const PowerTarget& target);

}  // namespace greenmeta
