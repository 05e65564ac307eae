#include "gadgetforge/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gadgetforge/errors.hpp"

namespace gadgetforge {

namespace {

const double kInvSqrtTwoPi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

std::size_t packed(int i, int j) { return static_cast<std::size_t>(i) * (i + 1) / 2 + j; }

Eigen::MatrixXd ring_trapdoor_matrix(const Ring& ring, const std::vector<Poly>& blocks) {
  const int n = ring.degree();
  Eigen::MatrixXd t(static_cast<Eigen::Index>(blocks.size()) * n, n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto m = ring.matrix(blocks[b]);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        t(static_cast<Eigen::Index>(b) * n + i, j) = static_cast<double>(m[i][j]);
      }
    }
  }
  return t;
}

void check_widths(double s, double r, double rbar) {
  if (!(s > 0.0) || !(r >= 0.0) || !(rbar > 0.0)) {
    throw std::invalid_argument("perturbation widths must satisfy s > 0, r >= 0, rbar > 0");
  }
}

}  // namespace

PerturbContext::PerturbContext(double s, double r, double rbar)
    : s_(s), r_(r), rbar_(rbar), rounding_(std::make_shared<IntegerGaussian>(rbar)) {}

PerturbContext PerturbContext::dense(const Eigen::MatrixXd& trapdoor, double s,
                                     double r, double rbar) {
  check_widths(s, r, rbar);
  PerturbContext ctx(s, r, rbar);
  ctx.mode_ = FactorMode::kDense;
  ctx.m_ = static_cast<int>(trapdoor.rows());
  ctx.trapdoor_ = trapdoor;
  Eigen::MatrixXd reduced = ctx.sigma_p();
  reduced.diagonal().array() -= rbar * rbar;
  Eigen::LLT<Eigen::MatrixXd> llt(reduced);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("Sigma_p - rbar^2 I is not positive definite");
  }
  ctx.factor_ = llt.matrixL();
  return ctx;
}

PerturbContext PerturbContext::from_ring(const Ring& ring, std::vector<Poly> blocks,
                                         double s, double r, double rbar,
                                         FactorMode mode) {
  check_widths(s, r, rbar);
  if (blocks.empty()) throw std::invalid_argument("trapdoor needs at least one block");
  if (mode == FactorMode::kDense) {
    PerturbContext ctx = dense(ring_trapdoor_matrix(ring, blocks), s, r, rbar);
    ctx.ring_ = ring;
    ctx.blocks_ = std::move(blocks);
    ctx.k_ = static_cast<int>(ctx.blocks_.size());
    return ctx;
  }

  PerturbContext ctx(s, r, rbar);
  ctx.mode_ = FactorMode::kSpectral;
  ctx.ring_ = ring;
  ctx.blocks_ = std::move(blocks);
  const int n = ring.degree();
  const int k = static_cast<int>(ctx.blocks_.size());
  ctx.k_ = k;
  ctx.m_ = k * n;
  ctx.embedded_.resize(static_cast<std::size_t>(k) * n);
  for (int b = 0; b < k; ++b) {
    const auto e = ring.embed(ctx.blocks_[b]);
    std::copy(e.begin(), e.end(), ctx.embedded_.begin() + static_cast<std::size_t>(b) * n);
  }

  const std::size_t tri = static_cast<std::size_t>(k) * (k + 1) / 2;
  ctx.chol_.assign(tri * n, {});
  const double diag = s * s - rbar * rbar;
  const double r2 = r * r;
  for (int j = 0; j < n; ++j) {
    std::complex<double>* l = ctx.chol_.data() + tri * j;
    for (int i = 0; i < k; ++i) {
      const auto vi = ctx.embedded_[static_cast<std::size_t>(i) * n + j];
      for (int c = 0; c <= i; ++c) {
        const auto vc = ctx.embedded_[static_cast<std::size_t>(c) * n + j];
        std::complex<double> sum = -r2 * vi * std::conj(vc);
        if (i == c) sum += diag;
        for (int t = 0; t < c; ++t) sum -= l[packed(i, t)] * std::conj(l[packed(c, t)]);
        if (i == c) {
          if (!(sum.real() > 0.0)) {
            throw NotPositiveDefinite("spectral block " + std::to_string(j) +
                                      " is not positive definite");
          }
          l[packed(i, i)] = std::sqrt(sum.real());
        } else {
          l[packed(i, c)] = sum / l[packed(c, c)].real();
        }
      }
    }
  }
  return ctx;
}

std::vector<double> PerturbContext::sample_centers(Rng& rng) const {
  std::vector<double> c(m_);
  if (mode_ == FactorMode::kDense) {
    Eigen::VectorXd y(m_);
    for (int i = 0; i < m_; ++i) y[i] = rng.normal();
    const Eigen::VectorXd x = factor_.triangularView<Eigen::Lower>() * y;
    for (int i = 0; i < m_; ++i) c[i] = x[i] * kInvSqrtTwoPi;
    return c;
  }

  const int n = ring_->degree();
  const auto& transform = ring_->transform();
  const std::size_t tri = static_cast<std::size_t>(k_) * (k_ + 1) / 2;
  std::vector<std::complex<double>> freq(static_cast<std::size_t>(k_) * n);
  std::vector<std::complex<double>> y(n);
  for (int b = 0; b < k_; ++b) {
    for (int i = 0; i < n; ++i) y[i] = rng.normal();
    transform.forward(y, std::span(freq).subspan(static_cast<std::size_t>(b) * n, n));
  }
  std::vector<std::complex<double>> mixed(freq.size());
  for (int j = 0; j < n; ++j) {
    const std::complex<double>* l = chol_.data() + tri * j;
    for (int i = 0; i < k_; ++i) {
      std::complex<double> acc = 0.0;
      for (int t = 0; t <= i; ++t) acc += l[packed(i, t)] * freq[static_cast<std::size_t>(t) * n + j];
      mixed[static_cast<std::size_t>(i) * n + j] = acc;
    }
  }
  std::vector<std::complex<double>> out(n);
  for (int b = 0; b < k_; ++b) {
    transform.inverse(std::span(mixed).subspan(static_cast<std::size_t>(b) * n, n), out);
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(b) * n + i] = out[i].real() * kInvSqrtTwoPi;
  }
  return c;
}

std::vector<std::int64_t> PerturbContext::sample(Rng& rng) const {
  const auto centers = sample_centers(rng);
  std::vector<std::int64_t> p(m_);
  for (int i = 0; i < m_; ++i) p[i] = rounding_->sample(centers[i], rng);
  return p;
}

const Eigen::MatrixXd& PerturbContext::dense_factor() const {
  if (mode_ != FactorMode::kDense) {
    throw std::logic_error("dense_factor() requires a DENSE context");
  }
  return factor_;
}

Eigen::MatrixXd PerturbContext::sigma_p() const {
  const Eigen::MatrixXd t =
      trapdoor_.size() > 0 ? trapdoor_ : ring_trapdoor_matrix(*ring_, blocks_);
  Eigen::MatrixXd sigma = -r_ * r_ * (t * t.transpose());
  sigma.diagonal().array() += s_ * s_;
  return sigma;
}

Eigen::MatrixXcd PerturbContext::spectral_factor(int j) const {
  if (mode_ != FactorMode::kSpectral) {
    throw std::logic_error("spectral_factor() requires a SPECTRAL context");
  }
  const std::size_t tri = static_cast<std::size_t>(k_) * (k_ + 1) / 2;
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(k_, k_);
  for (int i = 0; i < k_; ++i) {
    for (int c = 0; c <= i; ++c) l(i, c) = chol_[tri * j + packed(i, c)];
  }
  return l;
}

Eigen::MatrixXcd PerturbContext::spectral_block(int j) const {
  if (mode_ != FactorMode::kSpectral) {
    throw std::logic_error("spectral_block() requires a SPECTRAL context");
  }
  const int n = ring_->degree();
  Eigen::VectorXcd v(k_);
  for (int i = 0; i < k_; ++i) v[i] = embedded_[static_cast<std::size_t>(i) * n + j];
  Eigen::MatrixXcd block = -r_ * r_ * (v * v.adjoint());
  block.diagonal().array() += s_ * s_ - rbar_ * rbar_;
  return block;
}

PerturbContext build_context(const Eigen::MatrixXd& trapdoor, double s, double r,
                             double rbar) {
  return PerturbContext::dense(trapdoor, s, r, rbar);
}

PerturbContext build_context(const Ring& ring, std::vector<Poly> blocks, double s,
                             double r, double rbar, FactorMode mode) {
  return PerturbContext::from_ring(ring, std::move(blocks), s, r, rbar, mode);
}

std::vector<std::int64_t> sample_perturbation(const PerturbContext& ctx, Rng& rng) {
  return ctx.sample(rng);
}

}  // namespace gadgetforge
