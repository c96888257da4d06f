#include "greenmeta/session.hpp"

#include <cmath>
#include <cstdio>

#include "greenmeta/error.hpp"

namespace greenmeta {

namespace {

constexpr double kRestoredEpsilon = 1e-9;

void add_entry(std::vector<ActiveSaving>& out, const DeviceProfile& profile,
               const AdaptationAction& action) {
  if (const auto* e = profile.find(action)) {
    out.push_back({to_string(action), e->savings_pct, true});
  } else {
    out.push_back({to_string(action), 0.0, false});
  }
}

}  // namespace

EncoderConfig EncoderConfig::from_format(const VideoFormat& format) {
  if (format.width == 0 || format.height == 0 || format.fps == 0) {
    throw Error(ErrorCode::InvalidArgument, "initial output format must be positive");
  }
  EncoderConfig cfg;
  cfg.out_width = format.width;
  cfg.out_height = format.height;
  cfg.out_fps = format.fps;
  return cfg;
}

EncoderConfig apply_request_to_config(const EncoderConfig& cfg, const DorRequest& req) {
  validate(req);
  EncoderConfig next = cfg;
  if (req.disable_loop_filters) {
    next.no_dbf = true;
    next.no_sao = true;
  }
  if (req.disable_bi_prediction) next.bframes_zero = true;
  if (req.disable_intra_in_B) next.no_b_intra = true;
  if (req.disable_fracpel_filtering) next.forbid_fracpel = true;
  if (req.pic_width_in_luma_samples != 0) next.out_width = req.pic_width_in_luma_samples;
  if (req.pic_height_in_luma_samples != 0) next.out_height = req.pic_height_in_luma_samples;
  if (req.frames_per_second != 0) next.out_fps = req.frames_per_second;

  const int change = code_to_percent_v3(req.ops_reduction);
  if (change != 0) {
    const double factor = (1.0 + next.derdo_percent.value_or(0.0) / 100.0) * (1.0 + change / 100.0);
    const double percent = 100.0 * (factor - 1.0);
    if (std::abs(percent) < kRestoredEpsilon) {
      next.derdo_percent.reset();
    } else {
      next.derdo_percent = percent;
    }
  }
  return next;
}

std::vector<ActiveSaving> active_savings(const DeviceProfile& profile, const EncoderConfig& initial,
                                         const EncoderConfig& current) {
  std::vector<ActiveSaving> out;

  if (current.derdo_percent) {
    const double pct = *current.derdo_percent;
    const SavingsEntry* match = nullptr;
    for (const auto& e : profile.entries) {
      if (const auto* ops = std::get_if<OpsReduction>(&e.action);
          ops && std::abs(ops->percent - pct) < kRestoredEpsilon) {
        match = &e;
        break;
      }
    }
    if (match) {
      out.push_back({to_string(match->action), match->savings_pct, true});
    } else {
      // Uncalibrated: assume energy tracks the operation count.
      char buf[48];
      std::snprintf(buf, sizeof buf, "ops:%.4g", pct);
      out.push_back({buf, -pct, false});
    }
  }

  if ((current.no_dbf && !initial.no_dbf) || (current.no_sao && !initial.no_sao)) {
    if (profile.find(DisableLoopFilters{LoopFilter::All})) {
      add_entry(out, profile, DisableLoopFilters{LoopFilter::All});
    } else {
      if (current.no_dbf && !initial.no_dbf) add_entry(out, profile, DisableLoopFilters{LoopFilter::Dbf});
      if (current.no_sao && !initial.no_sao) add_entry(out, profile, DisableLoopFilters{LoopFilter::Sao});
    }
  }
  if (current.bframes_zero && !initial.bframes_zero) add_entry(out, profile, DisableBiPrediction{});
  if (current.no_b_intra && !initial.no_b_intra) add_entry(out, profile, DisableIntraInB{});
  if (current.forbid_fracpel && !initial.forbid_fracpel) add_entry(out, profile, DisableFracpel{});
  if (current.out_width != initial.out_width || current.out_height != initial.out_height) {
    add_entry(out, profile, SetResolution{current.out_width, current.out_height});
  }
  if (current.out_fps != initial.out_fps) add_entry(out, profile, SetFps{current.out_fps});
  return out;
}

SessionState make_session(ReceiverState receiver, const VideoFormat& initial_format) {
  if (!(receiver.baseline_watts > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "baseline drain must be positive");
  }
  if (!(receiver.static_watts >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "static drain must be non-negative");
  }
  if (receiver.battery_joules && !(*receiver.battery_joules >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "battery charge must be non-negative");
  }
  validate(receiver.profile);
  SessionState s;
  s.initial = EncoderConfig::from_format(initial_format);
  s.sender = s.initial;
  s.receiver = std::move(receiver);
  if (s.receiver.battery_joules && *s.receiver.battery_joules == 0.0) s.exhausted_at_s = 0.0;
  return s;
}

SessionState step_session(SessionState state, double dt, const std::optional<DorRequest>& pending) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  auto& rx = state.receiver;
  if (rx.battery_joules && *rx.battery_joules <= 0.0) {
    throw Error(ErrorCode::SessionEnded, "battery exhausted at t = " + std::to_string(state.clock_s) + " s");
  }

  if (pending) {
    state.sender = apply_request_to_config(state.sender, *pending);
    state.ledger.events.push_back({state.clock_s, *pending});
  }

  Segment seg;
  seg.active = active_savings(rx.profile, state.initial, state.sender);
  double remaining = 1.0;
  for (const auto& a : seg.active) remaining *= 1.0 - a.savings_pct / 100.0;
  seg.power_w = rx.static_watts + rx.baseline_watts * remaining;
  seg.baseline_power_w = rx.static_watts + rx.baseline_watts;

  double elapsed = dt;
  bool exhausted = false;
  if (rx.battery_joules && seg.power_w > 0.0 && seg.power_w * dt >= *rx.battery_joules) {
    elapsed = *rx.battery_joules / seg.power_w;
    exhausted = true;
  }

  seg.start_s = state.clock_s;
  seg.end_s = state.clock_s + elapsed;
  seg.energy_j = seg.power_w * elapsed;
  seg.baseline_energy_j = seg.baseline_power_w * elapsed;

  state.ledger.actual_energy += seg.energy_j;
  state.ledger.baseline_energy += seg.baseline_energy_j;
  state.clock_s = seg.end_s;
  if (rx.battery_joules) {
    *rx.battery_joules = exhausted ? 0.0 : *rx.battery_joules - seg.energy_j;
  }
  if (exhausted) state.exhausted_at_s = state.clock_s;
  state.segments.push_back(std::move(seg));
  return state;
}

SessionReport run_session(const std::vector<ScheduledRequest>& scenario, double duration_s,
                          SessionState state0, double latency_s) {
  if (!(duration_s > 0.0)) throw Error(ErrorCode::InvalidArgument, "duration must be positive");
  if (!(latency_s >= 0.0)) throw Error(ErrorCode::InvalidArgument, "latency must be non-negative");
  for (std::size_t i = 0; i < scenario.size(); ++i) {
    const double t = scenario[i].t_s;
    if (!(t >= 0.0 && t <= duration_s)) {
      throw Error(ErrorCode::InvalidArgument, "event time " + std::to_string(t) + " s outside the session");
    }
    if (i > 0 && !(t > scenario[i - 1].t_s)) {
      throw Error(ErrorCode::InvalidArgument, "event times must be strictly increasing");
    }
    validate(scenario[i].request);
  }

  if (state0.receiver.battery_joules && *state0.receiver.battery_joules <= 0.0) {
    throw Error(ErrorCode::SessionEnded, "battery already exhausted");
  }

  SessionReport report;
  const double start = state0.clock_s;
  const double end = start + duration_s;
  SessionState state = std::move(state0);
  double cur = start;
  std::optional<DorRequest> pending;

  for (const auto& ev : scenario) {
    const double arrival = start + ev.t_s + latency_s;
    if (arrival >= end || state.exhausted_at_s) {
      report.undelivered.push_back(ev);
      continue;
    }
    if (arrival > cur) {
      state = step_session(std::move(state), arrival - cur, pending);
      pending.reset();
      cur = arrival;
      if (state.exhausted_at_s) {
        report.undelivered.push_back(ev);
        continue;
      }
    }
    pending = ev.request;
  }
  if (!state.exhausted_at_s && end > cur) {
    state = step_session(std::move(state), end - cur, pending);
  }

  const auto& ledger = state.ledger;
  if (ledger.baseline_energy > 0.0) {
    report.realized_savings_pct = 100.0 * (1.0 - ledger.actual_energy / ledger.baseline_energy);
    const double static_energy = state.receiver.static_watts * (state.clock_s - start);
    const double dyn_base = ledger.baseline_energy - static_energy;
    const double dyn_actual = ledger.actual_energy - static_energy;
    if (dyn_base > 0.0) report.dynamic_savings_pct = 100.0 * (1.0 - dyn_actual / dyn_base);
  }
  report.battery_exhausted_at_s = state.exhausted_at_s;
  report.final_state = std::move(state);
  return report;
}

SessionReport run_scenario(const Scenario& scenario) {
  ReceiverState rx{scenario.profile, scenario.battery_joules, scenario.baseline_watts,
                   scenario.static_watts};
  return run_session(scenario.events, scenario.duration_s, make_session(std::move(rx), scenario.initial),
                     scenario.latency_s);
}

}  // namespace greenmeta
