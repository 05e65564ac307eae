#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <optional>

#include "gadgetforge/gadget.hpp"
#include "gadgetforge/hash.hpp"
#include "gadgetforge/robin.hpp"
#include "gadgetforge/eagle.hpp"
#include "gadgetforge/stattest.hpp"
#include "test_support.hpp"

namespace gf = gadgetforge;

TEST(GadgetParams, Validation) {
  EXPECT_THROW((gf::GadgetParams{2048, 8, 16000, 25.6}.validate()), std::invalid_argument);
  EXPECT_THROW((gf::GadgetParams{1, 8, 8, 25.6}.validate()), std::invalid_argument);
  EXPECT_THROW((gf::GadgetParams{2048, 8, 16384, 0.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((gf::GadgetParams{2048, 8, 16384, 25.6}.validate()));
}

TEST(DecodeModP, Examples) {
  auto d = gf::decode_mod_p(std::vector<std::int64_t>{0}, 2048);
  EXPECT_EQ(d.c[0], 0);
  EXPECT_EQ(d.e[0], 0);
  d = gf::decode_mod_p(std::vector<std::int64_t>{3000}, 2048);
  EXPECT_EQ(d.c[0], 1);
  EXPECT_EQ(d.e[0], 952);
  d = gf::decode_mod_p(std::vector<std::int64_t>{1024}, 2048);
  EXPECT_EQ(d.c[0], 1);
  EXPECT_EQ(d.e[0], -1024);
  EXPECT_THROW(gf::decode_mod_p(std::vector<std::int64_t>{1}, 1), std::invalid_argument);
}

TEST(DecodeModP, RangeIdentityAndIdempotence) {
  auto rng = gf::testing::seeded(50);
  for (std::int64_t p : {2, 3, 2000, 2048, 2700, 4096}) {
    std::vector<std::int64_t> u(5000);
    for (auto& v : u) v = static_cast<std::int64_t>(rng.below(8 * p + 1)) - 4 * p;
    const auto d = gf::decode_mod_p(u, p);
    for (std::size_t i = 0; i < u.size(); ++i) {
      ASSERT_GE(d.e[i], -(p / 2));
      ASSERT_LE(d.e[i], p - p / 2 - 1);
      ASSERT_EQ(p * d.c[i] + d.e[i], u[i]);
    }
    const auto again = gf::decode_mod_p(d.e, p);
    for (std::size_t i = 0; i < u.size(); ++i) {
      ASSERT_EQ(again.c[i], 0);
      ASSERT_EQ(again.e[i], d.e[i]);
    }
  }
}

TEST(GadgetSample, ZeroTargetGivesMultiplesOfQ) {
  auto rng = gf::testing::seeded(51);
  const gf::CompactGadget g({2048, 8, 16384, gf::stddev_to_width(10.22)});
  const std::vector<std::int64_t> u(701, 0);
  for (int t = 0; t < 100; ++t) {
    const auto x = gf::gadget_sample(u, g, rng);
    for (auto v : x) {
      ASSERT_EQ(v % 8, 0);
      ASSERT_EQ(gf::center_mod(2048 * v, 16384), 0);
    }
  }
}

TEST(GadgetSample, CorrectnessIdentity) {
  auto rng = gf::testing::seeded(52);
  const auto reg = gf::ParamRegistry::builtin();
  for (const auto& ps : reg.all()) {
    const gf::CompactGadget g({ps.p, ps.q, ps.Q, ps.gadget_width()});
    for (int t = 0; t < 50; ++t) {
      std::vector<std::int64_t> u(ps.n);
      for (auto& v : u) v = gf::center_mod(static_cast<std::int64_t>(rng.below(ps.Q)), ps.Q);
      const auto x = gf::gadget_sample(u, g, rng);
      const auto d = gf::decode_mod_p(u, ps.p);
      for (int i = 0; i < ps.n; ++i) {
        ASSERT_EQ(gf::center_mod(ps.p * x[i] + d.e[i] - u[i], ps.Q), 0);
        ASSERT_EQ(((x[i] - d.c[i]) % ps.q + ps.q) % ps.q, 0);
      }
    }
  }
}

// (n=1, p=3, q=4, Q=12, r=6): for uniform u the real joint law of (x, e, u)
// and the simulator's (x <- D_{Z,6}, e <- U{-1,0,1}, u = 3x + e) are close.
TEST(GadgetSample, ToyMatchesSimulatorInTotalVariation) {
  auto rng = gf::testing::seeded(53);
  const gf::CompactGadget g({3, 4, 12, 6.0});
  const int N = 200000;
  std::map<std::pair<std::int64_t, std::int64_t>, int> counts;
  for (int t = 0; t < N; ++t) {
    const std::vector<std::int64_t> u = {gf::center_mod(static_cast<std::int64_t>(rng.below(12)), 12)};
    const auto x = gf::gadget_sample(u, g, rng);
    const auto d = gf::decode_mod_p(u, 3);
    ASSERT_EQ(gf::center_mod(3 * x[0] + d.e[0] - u[0], 12), 0);
    ++counts[{x[0], d.e[0]}];
  }
  const auto lo = -40, hi = 40;
  const auto pmf = gf::discrete_gaussian_pmf(6.0, 0.0, lo, hi);
  double tv = 0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    for (std::int64_t e = -1; e <= 1; ++e) {
      const double sim = pmf[x - lo] / 3.0;
      const auto it = counts.find({x, e});
      const double emp = it == counts.end() ? 0.0 : it->second / static_cast<double>(N);
      tv += std::abs(sim - emp);
    }
  }
  EXPECT_LT(0.5 * tv, 0.02);
}

TEST(Presamp, OutputSatisfiesApproximateRelation) {
  auto rng = gf::testing::seeded(54);
  const auto reg = gf::testing::toy_registry();
  for (const char* name : {"robin-toy", "eagle-toy", "robin-701", "eagle-512"}) {
    const auto& ps = reg.find(name);
    const gf::HashSigner* signer = nullptr;
    std::optional<gf::RobinKeyPair> rk;
    std::optional<gf::EagleKeyPair> ek;
    if (ps.scheme == gf::Scheme::kRobin) {
      rk.emplace(gf::robin_keygen(ps, rng));
      signer = &rk->sk.signer();
    } else {
      ek.emplace(gf::eagle_keygen(ps, rng));
      signer = &ek->sk.signer();
    }
    const auto& td = signer->trapdoor_map();
    // A T = p I on random vectors
    for (int t = 0; t < 5; ++t) {
      std::vector<std::int64_t> v(ps.n);
      for (auto& c : v) c = static_cast<std::int64_t>(rng.below(201)) - 100;
      const auto atv = td.apply_A(td.apply_T(v));
      for (int i = 0; i < ps.n; ++i) ASSERT_EQ(gf::center_mod(atv[i] - ps.p * v[i], ps.Q), 0);
    }
    for (int t = 0; t < 30; ++t) {
      const gf::Bytes msg = {static_cast<std::uint8_t>(t)};
      const auto u = gf::hash_to_point(msg, msg, ps.n, ps.Q);
      const auto pre = gf::presamp(td, signer->gadget(), u, signer->perturbation(), rng);
      ASSERT_EQ(static_cast<int>(pre.x.size()), ps.m());
      const auto ax = td.apply_A(pre.x);
      for (int i = 0; i < ps.n; ++i) {
        ASSERT_EQ(gf::center_mod(ax[i] - (u[i] - pre.e[i]), ps.Q), 0);
        ASSERT_GE(pre.e[i], -(ps.p / 2));
        ASSERT_LT(pre.e[i], ps.p - ps.p / 2);
      }
    }
  }
}

TEST(Presamp, DimensionMismatchThrows) {
  auto rng = gf::testing::seeded(55);
  const auto reg = gf::testing::toy_registry();
  const auto kp = gf::robin_keygen(reg.find("robin-toy"), rng);
  const auto& s = kp.sk.signer();
  const std::vector<std::int64_t> u(5, 0);
  EXPECT_THROW(gf::presamp(s.trapdoor_map(), s.gadget(), u, s.perturbation(), rng),
               std::invalid_argument);
}

TEST(Presamp, ToyVarianceAndErrorUniformity) {
  auto rng = gf::testing::seeded(56);
  const auto reg = gf::testing::toy_registry();
  const auto& ps = reg.find("robin-toy");
  const auto kp = gf::robin_keygen(ps, rng);
  const auto& s = kp.sk.signer();
  const int N = 40000;
  std::vector<double> sum(ps.m(), 0), sum2(ps.m(), 0);
  std::vector<int> ecount(ps.p, 0);
  for (int t = 0; t < N; ++t) {
    std::vector<std::int64_t> u(ps.n);
    for (auto& v : u) v = gf::center_mod(static_cast<std::int64_t>(rng.below(ps.Q)), ps.Q);
    const auto pre = gf::presamp(s.trapdoor_map(), s.gadget(), u, s.perturbation(), rng);
    for (int i = 0; i < ps.m(); ++i) {
      sum[i] += pre.x[i];
      sum2[i] += static_cast<double>(pre.x[i]) * pre.x[i];
    }
    for (auto e : pre.e) ++ecount[e + ps.p / 2];
  }
  for (int i = 0; i < ps.m(); ++i) {
    const double mean = sum[i] / N;
    const double var = sum2[i] / N - mean * mean;
    EXPECT_LT(std::abs(var / (ps.s * ps.s) - 1.0), 0.03) << i;
  }
  double chi2 = 0;
  const double expect = static_cast<double>(N) * ps.n / ps.p;
  for (int c : ecount) chi2 += (c - expect) * (c - expect) / expect;
  EXPECT_GT(gf::chi_square_pvalue(chi2, ps.p - 1), 1e-3);
}
