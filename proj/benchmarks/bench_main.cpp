#include <benchmark/benchmark.h>

#include <random>

#include "greenmeta/adaptation.hpp"
#include "greenmeta/analysis.hpp"
#include "greenmeta/builtin_profiles.hpp"
#include "greenmeta/dor_request.hpp"
#include "greenmeta/energy_model.hpp"
#include "greenmeta/session.hpp"

using namespace greenmeta;

static void BM_EncodeDecode(benchmark::State& state) {
  DorRequest r;
  r.ops_reduction = OpsReductionCode(13);
  r.disable_loop_filters = true;
  r.pic_width_in_luma_samples = 1280;
  r.pic_height_in_luma_samples = 720;
  r.frames_per_second = 30;
  for (auto _ : state) {
    const auto msg = encode_message(r);
    benchmark::DoNotOptimize(decode_message(msg));
  }
}
BENCHMARK(BM_EncodeDecode);

static void BM_AkimaEval(benchmark::State& state) {
  const std::vector<double> x{0, 1, 2.5, 3, 5, 6}, y{1, 3, 2, 4, 4.5, 3};
  const AkimaSpline s(x, y);
  double q = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s(q));
    q = q > 5.9 ? 0.0 : q + 0.01;
  }
}
BENCHMARK(BM_AkimaEval);

static void BM_BdRate(benchmark::State& state) {
  const RdCurve ref({{1000, 32.0}, {1800, 34.5}, {3200, 36.8}, {6000, 39.0}});
  const RdCurve tst({{1200, 32.4}, {2100, 34.7}, {3900, 37.1}, {7000, 39.5}});
  for (auto _ : state) benchmark::DoNotOptimize(bd_rate(ref, tst));
}
BENCHMARK(BM_BdRate);

static void BM_DerdoSelect(benchmark::State& state) {
  const EnergyModel model({"intra", "bi", "fracpel", "dbf"}, {4.0, 2.5, 1.5, 0.8});
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dr(0.0, 100.0);
  std::uniform_int_distribution<std::uint64_t> n(0, 64);
  std::vector<CodingCandidate> candidates;
  for (int i = 0; i < state.range(0); ++i) {
    candidates.push_back({std::to_string(i), dr(rng), dr(rng), FeatureCounts{{n(rng), n(rng), n(rng), n(rng)}}});
  }
  const LagrangeWeights w{0.5, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(&derdo_select(candidates, w, model));
}
BENCHMARK(BM_DerdoSelect)->Arg(8)->Arg(64)->Arg(512);

static void BM_RestorationPlan(benchmark::State& state) {
  const double factor = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(restoration_plan(factor, 0.005));
}
BENCHMARK(BM_RestorationPlan)->Arg(38)->Arg(50)->Arg(10);

static void BM_RunSession(benchmark::State& state) {
  const auto& b = builtin_profile("sw-classB");
  const auto s0 = make_session(ReceiverState{b.profile, 5000.0, 2.0, 0.5}, b.native);
  std::vector<ScheduledRequest> events;
  for (int i = 0; i < state.range(0); ++i) {
    DorRequest r;
    r.frames_per_second = static_cast<std::uint16_t>(i % 2 ? 30 : 60);
    events.push_back({static_cast<double>(i), r});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_session(events, static_cast<double>(state.range(0)) + 1.0, s0));
  }
}
BENCHMARK(BM_RunSession)->Arg(16)->Arg(256);

BENCHMARK_MAIN();
