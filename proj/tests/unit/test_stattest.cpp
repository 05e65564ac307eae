#include <gtest/gtest.h>

#include <cmath>

#include "gadgetforge/gadget.hpp"
#include "gadgetforge/stattest.hpp"
#include "test_support.hpp"

namespace gf = gadgetforge;

TEST(ChiSquare, PValueKnownQuantiles) {
  EXPECT_NEAR(gf::chi_square_pvalue(3.841459, 1), 0.05, 1e-6);
  EXPECT_NEAR(gf::chi_square_pvalue(23.209251, 10), 0.01, 1e-6);
  EXPECT_NEAR(gf::chi_square_pvalue(2.0, 2), std::exp(-1.0), 1e-12);
  EXPECT_DOUBLE_EQ(gf::chi_square_pvalue(0.0, 5), 1.0);
}

TEST(ChiSquare, Statistic) {
  const std::vector<std::uint64_t> counts{10, 20, 30, 40};
  const std::vector<double> probs(4, 0.25);
  EXPECT_DOUBLE_EQ(gf::chi_square_statistic(counts, probs), 20.0);
}

TEST(MomentAccumulator, SmallExample) {
  gf::MomentAccumulator acc(2, {{0, 1}});
  for (const auto& row : std::vector<std::vector<std::int64_t>>{{1, 2}, {3, 6}, {5, 10}}) acc.add(row);
  EXPECT_EQ(acc.count(), 3u);
  EXPECT_DOUBLE_EQ(acc.mean(0), 3.0);
  EXPECT_DOUBLE_EQ(acc.mean(1), 6.0);
  EXPECT_NEAR(acc.variance(0), 8.0 / 3, 1e-12);
  EXPECT_NEAR(acc.correlation(0), 1.0, 1e-12);
}

TEST(CorrelationPairs, DistinctAndInRange) {
  const auto reg = gf::ParamRegistry::builtin();
  for (const auto& ps : reg.all()) {
    const auto pairs = gf::correlation_pairs(ps);
    EXPECT_EQ(pairs.size(), ps.scheme == gf::Scheme::kRobin ? 6u : 9u);
    for (const auto& [i, j] : pairs) {
      EXPECT_NE(i, j);
      EXPECT_GE(std::min(i, j), 0);
      EXPECT_LT(std::max(i, j), ps.m());
    }
  }
}

// The ideal simulator passes its own checks; shrinking the reference fails.
TEST(SimulatabilityCollector, IdealSimulatorPasses) {
  const auto ps = gf::testing::toy_registry().find("robin-toy");
  auto rng = gf::testing::seeded(120);
  const gf::IntegerGaussian base(ps.preimage_width());
  gf::SimulatabilityCollector good(ps), shrunk(ps, 0.5);
  std::vector<std::int64_t> u(ps.n, 0);
  const int N = 100000;
  for (int t = 0; t < N; ++t) {
    gf::Preimage pre;
    pre.x.resize(ps.m());
    for (auto& v : pre.x) v = base.sample(0.0, rng);
    pre.e.resize(ps.n);
    for (auto& v : pre.e) v = static_cast<std::int64_t>(rng.below(ps.p)) - ps.p / 2;
    const bool accepted = t % 100 != 0;
    const gf::SignAttempt at{u, pre, 0.0, accepted};
    good.observe(at);
    shrunk.observe(at);
    if (accepted) {
      good.add_signature();
      shrunk.add_signature();
    }
  }
  const auto rep = good.report();
  EXPECT_EQ(rep.attempts, static_cast<std::uint64_t>(N));
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.value;
  EXPECT_NEAR(rep.check("restart_rate").value, 0.01, 1e-12);
  EXPECT_FALSE(shrunk.report().check("variance").pass);
  EXPECT_THROW((void)rep.check("nonexistent"), std::out_of_range);
}

TEST(SimulatabilityCollector, BiasedErrorsFailUniformity) {
  const auto ps = gf::ParamRegistry::builtin().find("eagle-512");
  auto rng = gf::testing::seeded(121);
  gf::SimulatabilityCollector col(ps);
  std::vector<std::int64_t> u(ps.n, 0);
  for (int t = 0; t < 200; ++t) {
    gf::Preimage pre;
    pre.x.assign(ps.m(), 0);
    pre.e.resize(ps.n);
    for (auto& v : pre.e) v = static_cast<std::int64_t>(rng.below(ps.p - 40)) - ps.p / 2;
    col.observe({u, pre, 0.0, true});
    col.add_signature();
  }
  const auto rep = col.report();
  EXPECT_FALSE(rep.check("error_uniformity").pass);
  EXPECT_FALSE(rep.check("restart_rate").pass);
  EXPECT_FALSE(rep.all_pass());
}

// Small rings concentrate the norm poorly, so the toy set restarts far more
// often than the real ones; only the distribution checks apply there.
TEST(RunSimulatability, ToySignerMatchesSimulator) {
  const auto reg = gf::testing::toy_registry();
  for (const char* name : {"robin-toy", "eagle-toy"}) {
    auto rng = gf::testing::seeded(122);
    const auto rep = gf::run_simulatability(reg.find(name), 50000, rng);
    EXPECT_EQ(rep.signatures, 50000u);
    for (const char* check : {"variance", "mean", "error_uniformity", "correlation"}) {
      EXPECT_TRUE(rep.check(check).pass) << name << " " << check << " " << rep.check(check).value;
    }
    auto again = gf::testing::seeded(122);
    const auto bad = gf::run_simulatability(reg.find(name), 10000, again, 0.5);
    EXPECT_FALSE(bad.check("variance").pass);
    EXPECT_FALSE(bad.all_pass());
  }
}

TEST(RunSimulatability, RestartRateAtRealParameters) {
  const auto ps = gf::ParamRegistry::builtin().find("robin-701");
  auto rng = gf::testing::seeded(123);
  const auto rep = gf::run_simulatability(ps, 10000, rng);
  EXPECT_NEAR(rep.reference_variance, 449.8 * 449.8, 1e-6);
  EXPECT_TRUE(rep.check("restart_rate").pass) << rep.check("restart_rate").value;
  EXPECT_TRUE(rep.check("error_uniformity").pass) << rep.check("error_uniformity").value;
  EXPECT_TRUE(rep.check("correlation").pass) << rep.check("correlation").value;
}
