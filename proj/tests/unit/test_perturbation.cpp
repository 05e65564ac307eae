#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gadgetforge/errors.hpp"
#include "gadgetforge/perturbation.hpp"
#include "gadgetforge/gaussian.hpp"
#include "test_support.hpp"

namespace gf = gadgetforge;
using gf::FactorMode;
using gf::Poly;
using gf::Ring;
using gf::RingKind;

namespace {

Eigen::MatrixXd stack_blocks(const std::vector<Poly>& blocks, RingKind kind) {
  const int n = static_cast<int>(blocks[0].size());
  Eigen::MatrixXd t(blocks.size() * n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    t.block(b * n, 0, n, n) = gf::testing::dense_ring_matrix(blocks[b], kind);
  }
  return t;
}

struct Toy {
  Ring ring;
  std::vector<Poly> blocks;
};

Toy toy_trapdoor(int n, RingKind kind, int k, gf::Rng& rng) {
  Ring ring(n, kind, 1 << 20);
  std::vector<Poly> blocks;
  for (int b = 0; b < k; ++b) {
    if (b == 2) {
      blocks.push_back(ring.one());
    } else {
      blocks.emplace_back(gf::sample_ternary({n, n / 4 + 1, n / 4}, rng));
    }
  }
  return {ring, blocks};
}

double min_eigen(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly)
      .eigenvalues()
      .minCoeff();
}

}  // namespace

TEST(BuildContext, ZeroTrapdoorFactorIsScaledIdentity) {
  const Eigen::MatrixXd t = Eigen::MatrixXd::Zero(6, 3);
  const auto ctx = gf::build_context(t, 2.0, 1.0, 1.0);
  EXPECT_TRUE(ctx.dense_factor().isApprox(std::sqrt(3.0) * Eigen::MatrixXd::Identity(6, 6)));
  EXPECT_EQ(ctx.dimension(), 6);
}

TEST(BuildContext, BoundViolationIsReported) {
  auto rng = gf::testing::seeded(60);
  auto toy = toy_trapdoor(17, RingKind::kConvolution, 2, rng);
  EXPECT_THROW(gf::build_context(toy.ring, toy.blocks, 10.0, 10.0, 1.0, FactorMode::kDense),
               gf::NotPositiveDefinite);
  EXPECT_THROW(gf::build_context(toy.ring, toy.blocks, 10.0, 10.0, 1.0, FactorMode::kSpectral),
               gf::NotPositiveDefinite);
  EXPECT_THROW(gf::build_context(Eigen::MatrixXd::Zero(4, 2), 1.0, 1.0, 1.0),
               gf::NotPositiveDefinite);
}

TEST(BuildContext, DenseFactorReconstructsSigma) {
  auto rng = gf::testing::seeded(61);
  for (const auto& [n, kind, k] : {std::tuple{17, RingKind::kConvolution, 2},
                                   std::tuple{16, RingKind::kCyclotomic, 2},
                                   std::tuple{16, RingKind::kCyclotomic, 3}}) {
    auto toy = toy_trapdoor(n, kind, k, rng);
    const double r = gf::stddev_to_width(10.22), rbar = gf::stddev_to_width(10.22 / 8);
    const double s = gf::stddev_to_width(120.0);
    const auto ctx = gf::build_context(toy.ring, toy.blocks, s, r, rbar, FactorMode::kDense);
    const Eigen::MatrixXd t = stack_blocks(toy.blocks, kind);
    Eigen::MatrixXd sigma = -r * r * t * t.transpose();
    sigma.diagonal().array() += s * s;
    EXPECT_TRUE(ctx.sigma_p().isApprox(sigma, 1e-12));
    const Eigen::MatrixXd& c = ctx.dense_factor();
    EXPECT_TRUE(c.isLowerTriangular());
    Eigen::MatrixXd rec = c * c.transpose();
    rec.diagonal().array() += rbar * rbar;
    EXPECT_LT((rec - sigma).norm() / sigma.norm(), 1e-8);
    // the explicit-matrix entry point agrees
    const auto direct = gf::build_context(t, s, r, rbar);
    EXPECT_LT((direct.dense_factor() - c).norm() / c.norm(), 1e-10);
  }
}

TEST(BuildContext, SpectralBlocksReconstruct) {
  auto rng = gf::testing::seeded(62);
  for (const auto& [n, kind, k] : {std::tuple{17, RingKind::kConvolution, 2},
                                   std::tuple{16, RingKind::kCyclotomic, 3},
                                   std::tuple{701, RingKind::kConvolution, 2}}) {
    auto toy = toy_trapdoor(n, kind, k, rng);
    const double r = 25.6, rbar = 3.2, s = gf::stddev_to_width(n < 100 ? 120.0 : 600.0);
    const auto ctx = gf::build_context(toy.ring, toy.blocks, s, r, rbar, FactorMode::kSpectral);
    const auto emb0 = toy.ring.embed(toy.blocks[0]);
    for (int j = 0; j < n; j += std::max(1, n / 50)) {
      const Eigen::MatrixXcd l = ctx.spectral_factor(j);
      const Eigen::MatrixXcd block = ctx.spectral_block(j);
      EXPECT_LT((l * l.adjoint() - block).norm() / block.norm(), 1e-10);
      // diagonal entry 0 is (s^2 - rbar^2) - r^2 |t_0(w_j)|^2
      EXPECT_NEAR(block(0, 0).real(), s * s - rbar * rbar - r * r * std::norm(emb0[j]),
                  1e-9 * s * s);
    }
  }
}

TEST(BuildContext, FailsExactlyWhenEigenvalueNonPositive) {
  auto rng = gf::testing::seeded(63);
  for (const auto& [n, kind, k] : {std::tuple{13, RingKind::kConvolution, 2},
                                   std::tuple{16, RingKind::kCyclotomic, 2},
                                   std::tuple{8, RingKind::kCyclotomic, 3}}) {
    auto toy = toy_trapdoor(n, kind, k, rng);
    const double r = 5.0, rbar = 2.0;
    const Eigen::MatrixXd t = stack_blocks(toy.blocks, kind);
    for (double s = 5.0; s < 120.0; s *= 1.07) {
      Eigen::MatrixXd m = -r * r * t * t.transpose();
      m.diagonal().array() += s * s - rbar * rbar;
      const double lmin = min_eigen(m);
      if (std::abs(lmin) < 1e-6 * s * s) continue;
      for (auto mode : {FactorMode::kDense, FactorMode::kSpectral}) {
        bool built = true;
        try {
          (void)gf::build_context(toy.ring, toy.blocks, s, r, rbar, mode);
        } catch (const gf::NotPositiveDefinite&) {
          built = false;
        }
        EXPECT_EQ(built, lmin > 0) << "n=" << n << " s=" << s;
      }
    }
  }
}

TEST(SamplePerturbation, ZeroTrapdoorMoments) {
  auto rng = gf::testing::seeded(64);
  const double s = 50.0;
  const auto ctx = gf::build_context(Eigen::MatrixXd::Zero(8, 4), s, 10.0, 3.2);
  const int N = 100000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(8), sum2 = Eigen::VectorXd::Zero(8);
  for (int t = 0; t < N; ++t) {
    const auto p = gf::sample_perturbation(ctx, rng);
    for (int i = 0; i < 8; ++i) {
      sum[i] += p[i];
      sum2[i] += static_cast<double>(p[i]) * p[i];
    }
  }
  const double expect = s * s / (2 * std::numbers::pi);
  for (int i = 0; i < 8; ++i) {
    const double mean = sum[i] / N;
    const double var = sum2[i] / N - mean * mean;
    EXPECT_LT(std::abs(var / expect - 1), 0.03);
    EXPECT_LT(std::abs(mean) / std::sqrt(var / N), 4.0);
  }
}

// Empirical covariance of both paths against each other and against Sigma_p / 2 pi.
TEST(SamplePerturbation, DenseAndSpectralCovariancesAgree) {
  auto rng = gf::testing::seeded(65);
  auto toy = toy_trapdoor(16, RingKind::kCyclotomic, 2, rng);
  const double r = gf::stddev_to_width(10.22), rbar = gf::stddev_to_width(10.22 / 8);
  const double s = gf::stddev_to_width(100.0);
  const auto dense = gf::build_context(toy.ring, toy.blocks, s, r, rbar, FactorMode::kDense);
  const auto spectral = gf::build_context(toy.ring, toy.blocks, s, r, rbar, FactorMode::kSpectral);
  const int m = dense.dimension();
  const int N = 100000;
  auto moments = [&](const gf::PerturbContext& ctx) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd x(m);
    for (int t = 0; t < N; ++t) {
      const auto p = ctx.sample(rng);
      for (int i = 0; i < m; ++i) x[i] = static_cast<double>(p[i]);
      mean += x;
      acc.selfadjointView<Eigen::Lower>().rankUpdate(x);
    }
    mean /= N;
    Eigen::MatrixXd cov = acc.selfadjointView<Eigen::Lower>();
    return Eigen::MatrixXd(cov / N - mean * mean.transpose());
  };
  const Eigen::MatrixXd cd = moments(dense), cs = moments(spectral);
  const Eigen::MatrixXd ref = dense.sigma_p() / (2 * std::numbers::pi);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double se = std::sqrt((ref(i, i) * ref(j, j) + ref(i, j) * ref(i, j)) / N);
      ASSERT_LT(std::abs(cd(i, j) - cs(i, j)), 5 * std::sqrt(2.0) * se) << i << "," << j;
      ASSERT_LT(std::abs(cd(i, j) - ref(i, j)), 5 * se) << i << "," << j;
      ASSERT_LT(std::abs(cs(i, j) - ref(i, j)), 5 * se) << i << "," << j;
    }
  }
}

TEST(PerturbContext, ModeSpecificAccessorsThrow) {
  auto rng = gf::testing::seeded(66);
  auto toy = toy_trapdoor(17, RingKind::kConvolution, 2, rng);
  const auto spectral = gf::build_context(toy.ring, toy.blocks, 400.0, 25.6, 3.2, FactorMode::kSpectral);
  EXPECT_THROW(spectral.dense_factor(), std::logic_error);
  const auto dense = gf::build_context(toy.ring, toy.blocks, 400.0, 25.6, 3.2, FactorMode::kDense);
  EXPECT_THROW(dense.spectral_factor(0), std::logic_error);
  EXPECT_EQ(dense.mode(), FactorMode::kDense);
  EXPECT_EQ(spectral.mode(), FactorMode::kSpectral);
}
