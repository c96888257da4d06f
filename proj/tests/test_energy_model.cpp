#include <gtest/gtest.h>

#include <random>

#include "greenmeta/energy_model.hpp"
#include "greenmeta/error.hpp"

using namespace greenmeta;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected greenmeta::Error";
  return ErrorCode::InvalidArgument;
}

// Independent re-scan: lexicographic minimum of (J, D, R, index).
std::size_t rescan(const std::vector<CodingCandidate>& cs, const LagrangeWeights& w, const EnergyModel& m) {
  std::vector<std::tuple<double, double, double, std::size_t>> keys;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    double e = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) e += m.coefficients()[k] * static_cast<double>(cs[i].counts.counts[k]);
    keys.emplace_back(cs[i].distortion + w.lambda_rate * cs[i].rate + w.lambda_energy * e, cs[i].distortion,
                      cs[i].rate, i);
  }
  return std::get<3>(*std::min_element(keys.begin(), keys.end()));
}

}  // namespace

TEST(EstimateEnergy, DotProduct) {
  const EnergyModel m({"a", "b"}, {1.5, 2.0});
  EXPECT_DOUBLE_EQ(estimate_energy(m, {{2, 3}}), 9.0);
  EXPECT_DOUBLE_EQ(estimate_energy(m, {{0, 0}}), 0.0);
  EXPECT_EQ(code_of([&] { estimate_energy(m, {{1, 2, 3}}); }), ErrorCode::DimensionMismatch);
}

TEST(EnergyModelCtor, RejectsBadInput) {
  EXPECT_EQ(code_of([] { EnergyModel({}, {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { EnergyModel({"a"}, {-1.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { EnergyModel({"a", "a"}, {1.0, 2.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { EnergyModel({"a"}, {1.0, 2.0}); }), ErrorCode::DimensionMismatch);
}

TEST(EstimateEnergy, LinearAndMonotone) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coef(0.0, 5.0);
  std::uniform_int_distribution<std::uint64_t> cnt(0, 1000);
  for (int it = 0; it < 200; ++it) {
    const EnergyModel m({"a", "b", "c"}, {coef(rng), coef(rng), coef(rng)});
    const FeatureCounts n1{{cnt(rng), cnt(rng), cnt(rng)}}, n2{{cnt(rng), cnt(rng), cnt(rng)}};
    EXPECT_NEAR(estimate_energy(m, n1 + n2), estimate_energy(m, n1) + estimate_energy(m, n2), 1e-9);
    for (std::size_t k = 0; k < 3; ++k) {
      auto bumped = n1;
      ++bumped.counts[k];
      if (m.coefficients()[k] > 0.0) EXPECT_GT(estimate_energy(m, bumped), estimate_energy(m, n1));
    }
  }
}

TEST(Cost, EvaluatesLagrangian) {
  const EnergyModel m({"t"}, {1.0});
  const CodingCandidate c{"c", 10.0, 4.0, {{2}}};
  EXPECT_DOUBLE_EQ(cost(c, {0.5, 0.25}, m), 12.5);
  EXPECT_DOUBLE_EQ(cost(c, {0.5, 0.0}, m), 12.0);
  EXPECT_DOUBLE_EQ(cost(c, {0.0, 0.0}, m), 10.0);
  EXPECT_EQ(code_of([&] { cost(c, {-1.0, 0.0}, m); }), ErrorCode::InvalidArgument);
}

TEST(DerdoSelect, PicksMinimumCost) {
  const EnergyModel m({"t"}, {1.0});
  const std::vector<CodingCandidate> cs{{"a", 10.0, 4.0, {{2}}}, {"b", 9.0, 2.0, {{4}}}};
  // a: 10 + 2 + 0.5 = 12.5; b: 9 + 1 + 1 = 11
  EXPECT_EQ(derdo_select(cs, {0.5, 0.25}, m).id, "b");
}

TEST(DerdoSelect, SingletonAndTies) {
  const EnergyModel m({"t"}, {1.0});
  const std::vector<CodingCandidate> one{{"only", 1.0, 1.0, {{1}}}};
  EXPECT_EQ(derdo_select(one, {1.0, 1.0}, m).id, "only");

  const std::vector<CodingCandidate> same{{"first", 1.0, 1.0, {{1}}}, {"second", 1.0, 1.0, {{1}}}};
  EXPECT_EQ(derdo_select(same, {1.0, 1.0}, m).id, "first");

  // Equal J: lower distortion wins, then lower rate.
  const std::vector<CodingCandidate> tie{{"hiD", 3.0, 1.0, {{0}}}, {"loD", 2.0, 2.0, {{0}}}};
  EXPECT_EQ(derdo_select(tie, {1.0, 0.0}, m).id, "loD");
  const std::vector<CodingCandidate> tie2{{"hiR", 2.0, 2.0, {{0}}}, {"loR", 2.0, 1.0, {{1}}}};
  EXPECT_EQ(derdo_select(tie2, {1.0, 1.0}, m).id, "loR");
}

TEST(DerdoSelect, Errors) {
  const EnergyModel m({"t"}, {1.0});
  EXPECT_EQ(code_of([&] { derdo_select({}, {1.0, 1.0}, m); }), ErrorCode::EmptyCandidateSet);
  const std::vector<CodingCandidate> bad{{"x", 1.0, 1.0, {{1, 2}}}};
  EXPECT_EQ(code_of([&] { derdo_select(bad, {1.0, 1.0}, m); }), ErrorCode::DimensionMismatch);
}

TEST(DerdoSelect, AgreesWithIndependentRescan) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(0, 4);
  std::uniform_real_distribution<double> lam(0.0, 3.0);
  const EnergyModel m({"a", "b"}, {0.5, 2.0});
  for (int it = 0; it < 2000; ++it) {
    std::vector<CodingCandidate> cs;
    const int n = 1 + small(rng);
    for (int i = 0; i < n; ++i) {
      cs.push_back({std::to_string(i), double(small(rng)), double(small(rng)),
                    {{std::uint64_t(small(rng)), std::uint64_t(small(rng))}}});
    }
    const LagrangeWeights w{lam(rng), lam(rng)};
    const auto& sel = derdo_select(cs, w, m);
    const std::size_t idx = static_cast<std::size_t>(&sel - cs.data());
    ASSERT_EQ(idx, rescan(cs, w, m));
    for (const auto& c : cs) EXPECT_LE(cost(sel, w, m), cost(c, w, m));
  }
}

TEST(DerdoSelect, EnergyNonIncreasingInLambdaE) {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> small(0, 5);
  const EnergyModel m({"a", "b"}, {1.0, 3.0});
  for (int it = 0; it < 500; ++it) {
    std::vector<CodingCandidate> cs;
    for (int i = 0; i < 4; ++i) {
      cs.push_back({std::to_string(i), double(small(rng)), double(small(rng)),
                    {{std::uint64_t(small(rng)), std::uint64_t(small(rng))}}});
    }
    double prev = std::numeric_limits<double>::infinity();
    for (double le : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}) {
      const double e = estimate_energy(m, derdo_select(cs, {1.0, le}, m).counts);
      EXPECT_LE(e, prev);
      prev = e;
    }
  }
}

TEST(FracpelAvoidingModel, SetsOnlyFracpel) {
  const EnergyModel base({"dbf", "fracpel", "sao"}, {3.0, 1.0, 2.0});
  const auto m = fracpel_avoiding_model(base);
  EXPECT_EQ(m.tool_names(), base.tool_names());
  EXPECT_EQ(m.coefficients(), (std::vector<double>{0.0, 65536.0, 0.0}));
  EXPECT_EQ(code_of([] { fracpel_avoiding_model(EnergyModel({"dbf"}, {1.0})); }), ErrorCode::MissingTool);
}

TEST(FracpelAvoidingModel, NeverPicksFracpelWhenAvoidable) {
  // Exhaustive over ordered pairs and triples of small candidates.
  const auto m = fracpel_avoiding_model(EnergyModel({"dbf", "fracpel"}, {1.0, 1.0}));
  std::vector<CodingCandidate> pool;
  for (std::uint64_t a = 0; a < 3; ++a)
    for (std::uint64_t f = 0; f < 3; ++f)
      for (double d : {0.0, 1.0, 10.0})
        for (double r : {0.0, 10.0}) pool.push_back({"c", d, r, {{a, f}}});
  for (const auto& x : pool)
    for (const auto& y : pool)
      for (const auto& z : pool) {
        const std::vector<CodingCandidate> cs{x, y, z};
        const bool avoidable = std::any_of(cs.begin(), cs.end(), [](auto& c) { return c.counts.counts[1] == 0; });
        const auto& sel = derdo_select(cs, {1.0, 1.0}, m);
        if (avoidable) ASSERT_EQ(sel.counts.counts[1], 0u);
      }
}
