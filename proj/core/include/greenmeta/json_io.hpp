#pragma once

// JSON forms of the library's exchange types.
//
// DorRequest uses the syntax-element names of the wire format. Device
// profiles look like
//
//   {"name": "...", "decoder_backend": "hardware", "content_class": "ClassB",
//    "entries": [{"action": {"kind": "set_resolution", "width": 640,
//                            "height": 360},
//                 "savings_pct": 78.21, "bdr_pct": null, "label": "..."}]}
//
// Scenario files carry duration_s, baseline_watts, static_watts, an optional
// battery_joules and latency_s, a profile (inline object or "builtin:<key>"),
// an optional initial {width, height, fps} and events [{t_s, request_hex}].

#include <nlohmann/json.hpp>

#include "greenmeta/adaptation.hpp"
#include "greenmeta/energy_model.hpp"
#include "greenmeta/session.hpp"

namespace greenmeta::json_io {

using nlohmann::json;

json to_json(const DorRequest& req);
DorRequest request_from_json(const json& j);

json to_json(const AdaptationAction& action);
AdaptationAction action_from_json(const json& j);

json to_json(const DeviceProfile& profile);
DeviceProfile profile_from_json(const json& j);

json to_json(const EnergyModel& model);
EnergyModel model_from_json(const json& j);

json to_json(const CodingCandidate& c);
std::vector<CodingCandidate> candidates_from_json(const json& j);

json to_json(const PlanResult& plan);

Scenario scenario_from_json(const json& j);
json to_json(const SessionReport& report);

}  // namespace greenmeta::json_io
