#include "greenmeta/json_io.hpp"

#include "greenmeta/builtin_profiles.hpp"
#include "greenmeta/error.hpp"

namespace greenmeta::json_io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return get<T>(j, key);
}

std::uint16_t get_u16(const json& j, const char* key) {
  const auto v = get<std::int64_t>(j, key);
  if (v < 0 || v > 0xFFFF) throw Error(ErrorCode::FieldOutOfRange, std::string(key) + " out of range");
  return static_cast<std::uint16_t>(v);
}

LoopFilter parse_filter(const std::string& s) {
  if (s == "all") return LoopFilter::All;
  if (s == "dbf") return LoopFilter::Dbf;
  if (s == "sao") return LoopFilter::Sao;
  if (s == "alf") return LoopFilter::Alf;
  throw Error(ErrorCode::ParseError, "unknown loop filter '" + s + "'");
}

json active_to_json(const std::vector<ActiveSaving>& active) {
  json arr = json::array();
  for (const auto& a : active) {
    arr.push_back({{"action", a.action}, {"savings_pct", a.savings_pct}, {"calibrated", a.calibrated}});
  }
  return arr;
}

}  // namespace

json to_json(const DorRequest& req) {
  return {
      {"dec_ops_reduction_req", req.ops_reduction.value()},
      {"dec_ops_reduction_pct", code_to_percent_v3(req.ops_reduction)},
      {"disable_loop_filters", req.disable_loop_filters ? 1 : 0},
      {"disable_bi_iprediction", req.disable_bi_prediction ? 1 : 0},
      {"disable_intra_in_B", req.disable_intra_in_B ? 1 : 0},
      {"disable_fracpel_filtering", req.disable_fracpel_filtering ? 1 : 0},
      {"pic_width_in_luma_samples", req.pic_width_in_luma_samples},
      {"pic_height_in_luma_samples", req.pic_height_in_luma_samples},
      {"frames_per_second", req.frames_per_second},
  };
}

DorRequest request_from_json(const json& j) {
  // Absent fields keep their "no change" value.
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "request must be a JSON object");
  const auto flag = [&](const char* key) {
    if (!j.contains(key)) return false;
    const json& v = j.at(key);
    if (v.is_boolean()) return v.get<bool>();
    const auto n = get<std::int64_t>(j, key);
    if (n != 0 && n != 1) throw Error(ErrorCode::FieldOutOfRange, std::string(key) + " must be 0 or 1");
    return n == 1;
  };
  const auto u16 = [&](const char* key) -> std::uint16_t { return j.contains(key) ? get_u16(j, key) : 0; };
  DorRequest req;
  if (j.contains("dec_ops_reduction_req")) {
    const auto code = get<std::int64_t>(j, "dec_ops_reduction_req");
    if (code < 0 || code > OpsReductionCode::kMax) {
      throw Error(ErrorCode::FieldOutOfRange, "dec_ops_reduction_req out of range");
    }
    req.ops_reduction = OpsReductionCode(static_cast<unsigned>(code));
  } else if (j.contains("dec_ops_reduction_pct")) {
    req.ops_reduction = percent_to_code_v3(get<int>(j, "dec_ops_reduction_pct"));
  }
  req.disable_loop_filters = flag("disable_loop_filters");
  req.disable_bi_prediction = flag("disable_bi_iprediction") || flag("disable_bi_prediction");
  req.disable_intra_in_B = flag("disable_intra_in_B");
  req.disable_fracpel_filtering = flag("disable_fracpel_filtering");
  req.pic_width_in_luma_samples = u16("pic_width_in_luma_samples");
  req.pic_height_in_luma_samples = u16("pic_height_in_luma_samples");
  req.frames_per_second = u16("frames_per_second");
  validate(req);
  return req;
}

json to_json(const AdaptationAction& action) {
  return std::visit(
      Overloaded{
          [](const OpsReduction& a) { return json{{"kind", "ops_reduction"}, {"percent", a.percent}}; },
          [](const DisableLoopFilters& a) {
            return json{{"kind", "disable_loop_filters"}, {"filter", std::string(to_string(a.filter))}};
          },
          [](const DisableBiPrediction&) { return json{{"kind", "disable_bi_prediction"}}; },
          [](const DisableIntraInB&) { return json{{"kind", "disable_intra_in_B"}}; },
          [](const DisableFracpel&) { return json{{"kind", "disable_fracpel"}}; },
          [](const SetResolution& a) {
            return json{{"kind", "set_resolution"}, {"width", a.width}, {"height", a.height}};
          },
          [](const SetFps& a) { return json{{"kind", "set_fps"}, {"fps", a.fps}}; },
      },
      action);
}

AdaptationAction action_from_json(const json& j) {
  if (j.is_string()) return parse_action(j.get<std::string>());
  const auto kind = get<std::string>(j, "kind");
  AdaptationAction a;
  if (kind == "ops_reduction") a = OpsReduction{get<int>(j, "percent")};
  else if (kind == "disable_loop_filters") a = DisableLoopFilters{parse_filter(get_or<std::string>(j, "filter", "all"))};
  else if (kind == "disable_bi_prediction") a = DisableBiPrediction{};
  else if (kind == "disable_intra_in_B") a = DisableIntraInB{};
  else if (kind == "disable_fracpel") a = DisableFracpel{};
  else if (kind == "set_resolution") a = SetResolution{get_u16(j, "width"), get_u16(j, "height")};
  else if (kind == "set_fps") a = SetFps{get_u16(j, "fps")};
  else throw Error(ErrorCode::ParseError, "unknown action kind '" + kind + "'");
  validate(a);
  return a;
}

json to_json(const DeviceProfile& profile) {
  json entries = json::array();
  for (const auto& e : profile.entries) {
    json row{{"action", to_json(e.action)}, {"savings_pct", e.savings_pct}};
    row["bdr_pct"] = e.bdr_pct ? json(*e.bdr_pct) : json(nullptr);
    if (!e.label.empty()) row["label"] = e.label;
    entries.push_back(std::move(row));
  }
  json j{{"decoder_backend", std::string(to_string(profile.decoder_backend))},
         {"content_class", profile.content_class},
         {"entries", std::move(entries)}};
  if (!profile.name.empty()) j["name"] = profile.name;
  return j;
}

DeviceProfile profile_from_json(const json& j) {
  DeviceProfile p;
  p.name = get_or<std::string>(j, "name", "");
  p.decoder_backend = parse_backend(get<std::string>(j, "decoder_backend"));
  p.content_class = get<std::string>(j, "content_class");
  const json& entries = field(j, "entries");
  if (!entries.is_array()) throw Error(ErrorCode::ParseError, "'entries' must be an array");
  for (const auto& row : entries) {
    SavingsEntry e;
    e.action = action_from_json(field(row, "action"));
    e.savings_pct = get<double>(row, "savings_pct");
    if (row.contains("bdr_pct") && !row.at("bdr_pct").is_null()) e.bdr_pct = get<double>(row, "bdr_pct");
    e.label = get_or<std::string>(row, "label", "");
    p.entries.push_back(std::move(e));
  }
  validate(p);
  return p;
}

json to_json(const EnergyModel& model) {
  return {{"tools", model.tool_names()}, {"coefficients", model.coefficients()}};
}

EnergyModel model_from_json(const json& j) {
  return EnergyModel(get<std::vector<std::string>>(j, "tools"), get<std::vector<double>>(j, "coefficients"));
}

json to_json(const CodingCandidate& c) {
  return {{"id", c.id}, {"distortion", c.distortion}, {"rate", c.rate}, {"counts", c.counts.counts}};
}

std::vector<CodingCandidate> candidates_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "candidate set must be a JSON array");
  std::vector<CodingCandidate> out;
  for (const auto& c : j) {
    const json& id = field(c, "id");
    out.push_back(CodingCandidate{id.is_string() ? id.get<std::string>() : id.dump(), get<double>(c, "distortion"),
                                  get<double>(c, "rate"),
                                  FeatureCounts{get<std::vector<std::uint64_t>>(c, "counts")}});
  }
  return out;
}

json to_json(const PlanResult& plan) {
  json j{{"action", to_json(plan.entry.action)},
         {"action_text", to_string(plan.entry.action)},
         {"savings_pct", plan.entry.savings_pct},
         {"shortfall", plan.shortfall},
         {"request_hex", to_hex(encode_message(plan.request))},
         {"request", to_json(plan.request)}};
  j["bdr_pct"] = plan.entry.bdr_pct ? json(*plan.entry.bdr_pct) : json(nullptr);
  if (!plan.entry.label.empty()) j["label"] = plan.entry.label;
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.duration_s = get<double>(j, "duration_s");
  s.baseline_watts = get<double>(j, "baseline_watts");
  s.static_watts = get_or<double>(j, "static_watts", 0.0);
  if (j.contains("battery_joules") && !j.at("battery_joules").is_null()) {
    s.battery_joules = get<double>(j, "battery_joules");
  }
  s.latency_s = get_or<double>(j, "latency_s", 0.0);

  const json& profile = field(j, "profile");
  std::optional<VideoFormat> native;
  if (profile.is_string()) {
    const auto text = profile.get<std::string>();
    constexpr std::string_view kPrefix = "builtin:";
    if (!text.starts_with(kPrefix)) {
      throw Error(ErrorCode::ParseError, "profile string must look like 'builtin:<key>'");
    }
    const auto& b = builtin_profile(std::string_view(text).substr(kPrefix.size()));
    s.profile = b.profile;
    native = b.native;
  } else {
    s.profile = profile_from_json(profile);
  }

  if (j.contains("initial")) {
    const json& init = j.at("initial");
    s.initial = VideoFormat{get_u16(init, "width"), get_u16(init, "height"), get_u16(init, "fps")};
  } else {
    s.initial = native.value_or(VideoFormat{1920, 1080, 60});
  }

  for (const auto& ev : get_or<json>(j, "events", json::array())) {
    ScheduledRequest r;
    r.t_s = get<double>(ev, "t_s");
    if (ev.contains("request_hex")) {
      const auto msg = from_hex(get<std::string>(ev, "request_hex"));
      r.request = decode_message(msg);
    } else {
      r.request = request_from_json(field(ev, "request"));
    }
    s.events.push_back(r);
  }
  return s;
}

json to_json(const SessionReport& report) {
  const auto& st = report.final_state;
  json events = json::array();
  for (const auto& e : st.ledger.events) {
    events.push_back({{"t_s", e.time_s}, {"request_hex", to_hex(encode_message(e.request))}});
  }
  json segments = json::array();
  for (const auto& seg : st.segments) {
    segments.push_back({{"start_s", seg.start_s},
                        {"end_s", seg.end_s},
                        {"power_w", seg.power_w},
                        {"baseline_power_w", seg.baseline_power_w},
                        {"energy_j", seg.energy_j},
                        {"baseline_energy_j", seg.baseline_energy_j},
                        {"active", active_to_json(seg.active)}});
  }
  json undelivered = json::array();
  for (const auto& e : report.undelivered) {
    undelivered.push_back({{"t_s", e.t_s}, {"request_hex", to_hex(encode_message(e.request))}});
  }
  json j{{"realized_savings_pct", report.realized_savings_pct},
         {"dynamic_savings_pct", report.dynamic_savings_pct},
         {"baseline_energy_j", st.ledger.baseline_energy},
         {"actual_energy_j", st.ledger.actual_energy},
         {"saved_energy_j", st.ledger.saved_energy()},
         {"end_time_s", st.clock_s},
         {"events", std::move(events)},
         {"segments", std::move(segments)},
         {"undelivered", std::move(undelivered)}};
  j["battery_exhausted_at_s"] =
      report.battery_exhausted_at_s ? json(*report.battery_exhausted_at_s) : json(nullptr);
  j["battery_remaining_j"] =
      st.receiver.battery_joules ? json(*st.receiver.battery_joules) : json(nullptr);
  return j;
}

}  // namespace greenmeta::json_io
