#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gadgetforge/gaussian.hpp"
#include "gadgetforge/ring.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

enum class FactorMode { kDense, kSpectral };

// Offline state for sampling p <- D_{Z^m, sqrt(Sigma_p)} with
// Sigma_p = s^2 I_m - r^2 T T^t (all widths in the rho_s convention).
//
// A continuous vector c with covariance (Sigma_p - rbar^2 I) / (2 pi) is
// drawn first and then every coordinate is rounded with D_{Z, rbar, c_i}.
// The DENSE factor is the Cholesky factor of the assembled m x m matrix; the
// SPECTRAL factor holds, for every evaluation point, the Cholesky factor of
// the k x k Hermitian block (s^2 - rbar^2) I - r^2 v v^*, v = (t_0(w_j), ...).
class PerturbContext {
 public:
  static PerturbContext dense(const Eigen::MatrixXd& trapdoor, double s, double r,
                              double rbar);
  // T = [M(t_0); M(t_1); ...] over `ring`.
  static PerturbContext from_ring(const Ring& ring, std::vector<Poly> blocks,
                                  double s, double r, double rbar, FactorMode mode);

  FactorMode mode() const { return mode_; }
  int dimension() const { return m_; }
  double s() const { return s_; }
  double r() const { return r_; }
  double rbar() const { return rbar_; }

  // Continuous centers c (before rounding).
  std::vector<double> sample_centers(Rng& rng) const;
  std::vector<std::int64_t> sample(Rng& rng) const;

  // Lower-triangular C with C C^t = Sigma_p - rbar^2 I (DENSE only).
  const Eigen::MatrixXd& dense_factor() const;
  // Explicit Sigma_p; assembles an m x m matrix, intended for small m.
  Eigen::MatrixXd sigma_p() const;
  // Per-frequency Cholesky factor at evaluation point j (SPECTRAL only).
  Eigen::MatrixXcd spectral_factor(int j) const;
  // Per-frequency block (s^2 - rbar^2) I - r^2 v v^* (SPECTRAL only).
  Eigen::MatrixXcd spectral_block(int j) const;

 private:
  PerturbContext(double s, double r, double rbar);

  FactorMode mode_ = FactorMode::kDense;
  int m_ = 0;
  double s_, r_, rbar_;
  std::shared_ptr<const IntegerGaussian> rounding_;

  // dense path
  Eigen::MatrixXd trapdoor_;
  Eigen::MatrixXd factor_;

  // ring/spectral path
  std::optional<Ring> ring_;
  std::vector<Poly> blocks_;
  int k_ = 0;
  std::vector<std::complex<double>> embedded_;  // k_ x n, block-major
  std::vector<std::complex<double>> chol_;      // n x packed lower k_ x k_
};

PerturbContext build_context(const Eigen::MatrixXd& trapdoor, double s, double r,
                             double rbar);
PerturbContext build_context(const Ring& ring, std::vector<Poly> blocks, double s,
                             double r, double rbar, FactorMode mode);
std::vector<std::int64_t> sample_perturbation(const PerturbContext& ctx, Rng& rng);

}  // namespace gadgetforge
