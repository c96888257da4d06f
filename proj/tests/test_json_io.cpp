#include <gtest/gtest.h>

#include "greenmeta/builtin_profiles.hpp"
#include "greenmeta/error.hpp"
#include "greenmeta/json_io.hpp"

using namespace greenmeta;
using greenmeta::json_io::json;

TEST(JsonIo, RequestRoundTrip) {
  DorRequest r;
  r.ops_reduction = OpsReductionCode(13);
  r.disable_intra_in_B = true;
  r.pic_width_in_luma_samples = 960;
  r.frames_per_second = 24;
  const json j = json_io::to_json(r);
  EXPECT_EQ(j.at("dec_ops_reduction_req"), 13);
  EXPECT_EQ(j.at("dec_ops_reduction_pct"), -36);
  EXPECT_EQ(json_io::request_from_json(j), r);
  EXPECT_EQ(json_io::request_from_json(json::parse(j.dump())), r);
}

TEST(JsonIo, ProfileRoundTrip) {
  for (const auto& b : builtin_profiles()) {
    const auto back = json_io::profile_from_json(json::parse(json_io::to_json(b.profile).dump()));
    ASSERT_EQ(back.entries.size(), b.profile.entries.size()) << b.key;
    EXPECT_EQ(back.name, b.profile.name);
    EXPECT_EQ(back.decoder_backend, b.profile.decoder_backend);
    for (std::size_t i = 0; i < back.entries.size(); ++i) {
      EXPECT_EQ(back.entries[i].action, b.profile.entries[i].action);
      EXPECT_EQ(back.entries[i].savings_pct, b.profile.entries[i].savings_pct);
      EXPECT_EQ(back.entries[i].bdr_pct, b.profile.entries[i].bdr_pct);
    }
  }
}

TEST(JsonIo, ActionsAcceptTextForm) {
  EXPECT_EQ(json_io::action_from_json(json("res:640x360")), (AdaptationAction{SetResolution{640, 360}}));
  EXPECT_EQ(json_io::action_from_json(json{{"kind", "disable_loop_filters"}}),
            AdaptationAction{DisableLoopFilters{LoopFilter::All}});
  EXPECT_THROW(json_io::action_from_json(json{{"kind", "teleport"}}), Error);
}

TEST(JsonIo, ScenarioWithBuiltinProfile) {
  const auto j = json::parse(R"({
    "duration_s": 600, "baseline_watts": 2.0, "battery_joules": null,
    "profile": "builtin:hw-classB",
    "events": [{"t_s": 300, "request_hex": "7C028005A000"},
               {"t_s": 600, "request": {"frames_per_second": 30}}]
  })");
  const auto s = json_io::scenario_from_json(j);
  EXPECT_EQ(s.initial.width, 1920);
  EXPECT_EQ(s.initial.fps, 60);
  EXPECT_FALSE(s.battery_joules);
  ASSERT_EQ(s.events.size(), 2u);
  EXPECT_EQ(s.events[0].request.pic_width_in_luma_samples, 640);
  EXPECT_EQ(s.events[0].request.pic_height_in_luma_samples, 360);
  EXPECT_EQ(s.events[1].request.frames_per_second, 30);

  const auto rep = run_scenario(s);
  const json out = json_io::to_json(rep);
  EXPECT_NEAR(out.at("realized_savings_pct").get<double>(), 39.105, 0.01);
  EXPECT_TRUE(out.at("battery_exhausted_at_s").is_null());
  EXPECT_EQ(out.at("undelivered").size(), 1u);
}

TEST(JsonIo, ScenarioErrors) {
  EXPECT_THROW(json_io::scenario_from_json(json::parse(R"({"duration_s": 1, "baseline_watts": 1, "profile": "hw"})")),
               Error);
  EXPECT_THROW(json_io::scenario_from_json(json::parse(R"({"baseline_watts": 1, "profile": "builtin:hw-classB"})")),
               Error);
}
