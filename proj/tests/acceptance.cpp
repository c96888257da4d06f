// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "greenmeta/adaptation.hpp"
#include "greenmeta/analysis.hpp"
#include "greenmeta/builtin_profiles.hpp"
#include "greenmeta/dor_request.hpp"
#include "greenmeta/energy_model.hpp"
#include "greenmeta/session.hpp"
#include "oracles.hpp"

using namespace greenmeta;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome protocol_round_trip() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 10000; ++i) {
    DorRequest r;
    r.ops_reduction = OpsReductionCode(static_cast<unsigned>(rng() % 64));
    r.disable_loop_filters = rng() & 1;
    r.disable_bi_prediction = rng() & 1;
    r.disable_intra_in_B = rng() & 1;
    r.disable_fracpel_filtering = rng() & 1;
    r.pic_width_in_luma_samples = static_cast<std::uint16_t>(rng() % (DorRequest::kMaxPicDimension + 1));
    r.pic_height_in_luma_samples = static_cast<std::uint16_t>(rng() % (DorRequest::kMaxPicDimension + 1));
    r.frames_per_second = static_cast<std::uint16_t>(rng() % (DorRequest::kMaxFramesPerSecond + 1));
    const auto msg = encode_message(r);
    o.check(decode_message(msg) == r, "round trip mismatch at iteration " + std::to_string(i));
  }
  std::set<int> image;
  for (unsigned c = 0; c <= OpsReductionCode::kMax; ++c) image.insert(code_to_percent_v3(OpsReductionCode(c)));
  std::set<int> evens;
  for (int p = -62; p <= 64; p += 2) evens.insert(p);
  o.check(image == evens, "ops codeword image is not the even integers of [-62, 64]");
  const double t = seconds_since(t0);
  o.check(t < 5.0, "runtime " + std::to_string(t) + " s");
  return o;
}

Outcome legacy_conformance() {
  Outcome o;
  o.check(legacy_percent(64) == Percent::make(50, 1), "legacy_percent(64) != 50");
  o.check(legacy_percent(-128) == Percent::make(-100, 1), "legacy_percent(-128) != -100");
  return o;
}

Outcome golden_vector() {
  Outcome o;
  DorRequest r;
  r.ops_reduction = percent_to_code_v3(0);
  r.disable_loop_filters = true;
  r.disable_fracpel_filtering = true;
  r.pic_width_in_luma_samples = 1280;
  r.pic_height_in_luma_samples = 720;
  r.frames_per_second = 30;
  const auto expected = oracle::pack_by_bitstring({31, 1, 0, 0, 1, 1280, 720, 30});
  const auto msg = encode_message(r);
  o.check(std::equal(msg.begin(), msg.end(), expected.begin(), expected.end()), "encoder disagrees with oracle");
  o.check(to_hex(msg) == "7E45000B401E", "frozen vector changed: " + to_hex(msg));
  return o;
}

Outcome derdo_avoidance() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto model = fracpel_avoiding_model(EnergyModel({"dbf", "fracpel"}, {1.0, 1.0}));
  const std::size_t fp = model.index_of("fracpel");
  const LagrangeWeights w{1.0, 1.0};

  std::vector<CodingCandidate> pool;
  const double dr[] = {0.0, 1.0, 10.0};
  for (std::uint64_t a = 0; a <= 2; ++a)
    for (std::uint64_t b = 0; b <= 2; ++b)
      for (double d : dr)
        for (double r : dr) pool.push_back({std::to_string(pool.size()), d, r, FeatureCounts{{a, b}}});

  std::vector<CodingCandidate> set;
  long checked = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t first) {
    if (!set.empty()) {
      ++checked;
      bool free_exists = false;
      for (const auto& c : set) free_exists |= c.counts.counts[fp] == 0;
      const auto& best = derdo_select(set, w, model);
      if (free_exists && best.counts.counts[fp] != 0) {
        o.check(false, "selected fracpel candidate " + best.id + " in set of " + std::to_string(set.size()));
      }
    }
    if (set.size() == 4) return;
    for (std::size_t i = first; i < pool.size(); ++i) {
      set.push_back(pool[i]);
      rec(i);
      set.pop_back();
    }
  };
  rec(0);
  const double t = seconds_since(t0);
  o.check(t < 10.0, "runtime " + std::to_string(t) + " s");
  if (o.ok) o.detail = std::to_string(checked) + " candidate sets";
  return o;
}

Outcome composition() {
  Outcome o;
  const double halve_double[] = {-50.0, 100.0};
  o.check(cumulative_ops_factor(halve_double, OpsRangeMode::Legacy) == 1.0, "[-50, +100] does not compose to 1");
  const auto plan = restoration_plan(0.38, 0.05);
  std::vector<double> pcts(plan.begin(), plan.end());
  const double f = 0.38 * cumulative_ops_factor(pcts);
  o.check(f >= 0.95 && f <= 1.05, "restored factor " + std::to_string(f));
  const int min_len = oracle::brute_force_min_restoration(0.38, 0.05, 3);
  o.check(min_len == static_cast<int>(plan.size()),
          "plan length " + std::to_string(plan.size()) + " vs brute force " + std::to_string(min_len));
  return o;
}

Outcome calibrated_simulation() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto realized = [](const char* key, double at, const DorRequest& r) {
    const auto& b = builtin_profile(key);
    const auto s0 = make_session(ReceiverState{b.profile, std::nullopt, 2.0, 0.0}, b.native);
    return run_session({{at, r}}, 600.0, s0).realized_savings_pct;
  };
  DorRequest res360;
  res360.pic_width_in_luma_samples = 640;
  res360.pic_height_in_luma_samples = 360;
  DorRequest half_fps;
  half_fps.frames_per_second = 30;

  const struct {
    const char* key;
    double at;
    DorRequest req;
    double expected;
  } cases[] = {{"hw-classB", 0.0, res360, 78.21},
               {"hw-classB", 300.0, res360, 39.105},
               {"sw-classB", 0.0, res360, 89.64},
               {"sw-classB", 0.0, half_fps, 43.07}};
  for (const auto& c : cases) {
    const double got = realized(c.key, c.at, c.req);
    o.check(std::abs(got - c.expected) <= 0.01,
            std::string(c.key) + ": " + std::to_string(got) + " vs " + std::to_string(c.expected));
  }
  const double t = seconds_since(t0);
  o.check(t < 1.0, "runtime " + std::to_string(t) + " s");
  return o;
}

Outcome bd_rate_properties() {
  Outcome o;
  const RdCurve a({{1000, 32}, {1800, 34.5}, {3200, 36.8}, {6000, 39}});
  const auto self = bd_rate(a, a);
  o.check(self && std::abs(*self) <= 1e-9, "BDR(a, a) != 0");
  const RdCurve twice({{2000, 32}, {3600, 34.5}, {6400, 36.8}, {12000, 39}});
  const auto dbl = bd_rate(a, twice);
  o.check(dbl && std::abs(*dbl - 100.0) <= 0.05, "2x rate offset gives " + (dbl ? std::to_string(*dbl) : "n/a"));
  const RdCurve low({{500, 30}, {900, 33}, {1500, 36}, {2600, 38}});
  const RdCurve high({{5000, 40}, {7000, 42}, {9000, 43.5}, {12000, 45}});
  o.check(!bd_rate(low, high).has_value(), "disjoint spans gave a value");

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> step(0.8, 3.0), ratio(1.3, 2.2), base(300, 3000), q0(28, 33);
  const auto curve = [&] {
    std::vector<RdPoint> p;
    double q = q0(rng), r = base(rng);
    for (int i = 0; i < 4; ++i) {
      p.push_back({r, q});
      q += step(rng);
      r *= ratio(rng);
    }
    return RdCurve(p);
  };
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const RdCurve x = curve(), y = curve();
    const auto xy = bd_rate(x, y), yx = bd_rate(y, x);
    o.check(xy.has_value() == yx.has_value(), "availability not symmetric");
    if (!xy || !yx) continue;
    ++compared;
    const double prod = (1 + *xy / 100) * (1 + *yx / 100);
    o.check(std::abs(prod - 1.0) <= 1e-6, "reciprocity product " + std::to_string(prod));
  }
  o.check(compared >= 90, "only " + std::to_string(compared) + " overlapping pairs");
  return o;
}

Outcome akima_correctness() {
  Outcome o;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dx(0.2, 2.0), y(-5.0, 5.0), slope(-3.0, 3.0);
  std::uniform_int_distribution<int> n(4, 8);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> xs{y(rng)}, ys{y(rng)};
    for (int i = n(rng) - 1; i > 0; --i) {
      xs.push_back(xs.back() + dx(rng));
      ys.push_back(y(rng));
    }
    const AkimaSpline s(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i) o.check(s(xs[i]) == ys[i], "not exact at knot");
    const double h = 1e-7;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      // One-sided second-order differences from each neighbouring piece.
      const double left = (3 * s(xs[i]) - 4 * s(xs[i] - h) + s(xs[i] - 2 * h)) / (2 * h);
      const double right = (-3 * s(xs[i]) + 4 * s(xs[i] + h) - s(xs[i] + 2 * h)) / (2 * h);
      o.check(std::abs(left - right) <= 1e-6 * std::max(1.0, std::abs(left)),
              "derivative jump " + std::to_string(left - right));
    }

    const double m = slope(rng), c = y(rng);
    std::vector<double> ls;
    for (double x : xs) ls.push_back(m * x + c);
    const AkimaSpline line(xs, ls);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double xq = 0.5 * (xs[i] + xs[i + 1]);
      o.check(std::abs(line(xq) - (m * xq + c)) <= 1e-12, "collinear data not reproduced");
    }
  }
  return o;
}

Outcome planner_policy() {
  Outcome o;
  const auto& profile = builtin_profile("sw-classE").profile;
  const auto p40 = plan_request(profile, {40.0, std::nullopt});
  o.check(p40.entry.action == AdaptationAction{SetFps{30}}, "target 40 picked " + to_string(p40.entry.action));
  o.check(!p40.shortfall, "target 40 reported shortfall");
  o.check(p40.entry.savings_pct == 43.76 && p40.entry.bdr_pct == 38.06, "half-fps row values");
  const auto* r540 = profile.find(SetResolution{960, 540});
  o.check(r540 && r540->savings_pct == 48.77 && r540->bdr_pct == 46.44, "Res:540p row values");

  const auto p95 = plan_request(profile, {95.0, std::nullopt});
  o.check(p95.entry.action == AdaptationAction{SetResolution{640, 360}}, "target 95 picked " + to_string(p95.entry.action));
  o.check(p95.shortfall, "target 95 did not report shortfall");
  return o;
}

}  // namespace

int main() {
  const struct {
    const char* name;
    Outcome (*fn)();
  } criteria[] = {
      {"protocol round-trip", protocol_round_trip},
      {"legacy percentage", legacy_conformance},
      {"golden vector", golden_vector},
      {"derdo fracpel avoidance", derdo_avoidance},
      {"composition algebra", composition},
      {"calibrated simulation", calibrated_simulation},
      {"bd-rate properties", bd_rate_properties},
      {"akima correctness", akima_correctness},
      {"planner policy", planner_policy},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& c : criteria) {
    ++idx;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%d] %-26s %s%s%s\n", idx, c.name, o.ok ? "PASS" : "FAIL", o.detail.empty() ? "" : "  ",
                o.detail.c_str());
    if (!o.ok) ++failed;
  }
  std::printf("%d/%d criteria passed\n", idx - failed, idx);
  return failed == 0 ? 0 : 1;
}
