#pragma once

// Deterministic sender/receiver simulation of a P2P call in which the
// receiver sends DOR-reqs and the sender reconfigures its encoder.
//
// Receiver power is static_watts + baseline_watts * prod(1 - s_a / 100) over
// the active actions a, with s_a taken from the receiver's device profile.
// Time advances from event to event; energy is integrated exactly between
// events.

#include <optional>
#include <string>
#include <vector>

#include "greenmeta/adaptation.hpp"
#include "greenmeta/builtin_profiles.hpp"
#include "greenmeta/dor_request.hpp"

namespace greenmeta {

struct EncoderConfig {
  bool no_dbf = false;
  bool no_sao = false;
  bool bframes_zero = false;
  bool no_b_intra = false;
  bool forbid_fracpel = false;
  // Accumulated change in decoder operations, composed multiplicatively over
  // successive requests. Empty when no change is in effect.
  std::optional<double> derdo_percent;
  std::uint16_t out_width = 0;
  std::uint16_t out_height = 0;
  std::uint16_t out_fps = 0;

  static EncoderConfig from_format(const VideoFormat& format);

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

/// Tool flags are one-way: a set bit disables the tool, a clear bit leaves it
/// as it is. Zero width/height/fps leave the output format untouched.
EncoderConfig apply_request_to_config(const EncoderConfig& cfg, const DorRequest& req);

struct ActiveSaving {
  std::string action;
  double savings_pct = 0.0;
  bool calibrated = true;

  friend bool operator==(const ActiveSaving&, const ActiveSaving&) = default;
};

/// Savings of every action in effect when `current` differs from `initial`.
std::vector<ActiveSaving> active_savings(const DeviceProfile& profile, const EncoderConfig& initial,
                                         const EncoderConfig& current);

struct ReceiverState {
  DeviceProfile profile;
  std::optional<double> battery_joules;  // empty = mains powered
  double baseline_watts = 1.0;           // dynamic decoding power before any request
  double static_watts = 0.0;
};

struct LedgerEvent {
  double time_s = 0.0;
  DorRequest request;

  friend bool operator==(const LedgerEvent&, const LedgerEvent&) = default;
};

struct EnergyLedger {
  double baseline_energy = 0.0;
  double actual_energy = 0.0;
  std::vector<LedgerEvent> events;

  double saved_energy() const { return baseline_energy - actual_energy; }

  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;
};

struct Segment {
  double start_s = 0.0;
  double end_s = 0.0;
  double power_w = 0.0;
  double baseline_power_w = 0.0;
  double energy_j = 0.0;
  double baseline_energy_j = 0.0;
  std::vector<ActiveSaving> active;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SessionState {
  EncoderConfig sender;
  EncoderConfig initial;
  ReceiverState receiver;
  double clock_s = 0.0;
  EnergyLedger ledger;
  std::vector<Segment> segments;
  std::optional<double> exhausted_at_s;
};

SessionState make_session(ReceiverState receiver, const VideoFormat& initial_format);

/// Applies `pending` (if any) at the current clock, then drains for `dt`
/// seconds or until the battery runs out. Throws SessionEnded when the battery
/// is already empty.
SessionState step_session(SessionState state, double dt, const std::optional<DorRequest>& pending);

struct ScheduledRequest {
  double t_s = 0.0;
  DorRequest request;
};

struct SessionReport {
  SessionState final_state;
  double realized_savings_pct = 0.0;
  double dynamic_savings_pct = 0.0;
  std::optional<double> battery_exhausted_at_s;
  std::vector<ScheduledRequest> undelivered;

  const EnergyLedger& ledger() const { return final_state.ledger; }
};

/// Replays `scenario` (times relative to the session start, strictly
/// increasing, within [0, duration]). Requests reach the sender after
/// `latency_s`; those arriving at or after the end are reported undelivered.
SessionReport run_session(const std::vector<ScheduledRequest>& scenario, double duration_s,
                          SessionState state0, double latency_s = 0.0);

struct Scenario {
  double duration_s = 0.0;
  double baseline_watts = 1.0;
  double static_watts = 0.0;
  std::optional<double> battery_joules;
  double latency_s = 0.0;
  DeviceProfile profile;
  VideoFormat initial;
  std::vector<ScheduledRequest> events;
};

SessionReport run_scenario(const Scenario& scenario);

}  // namespace greenmeta
