#pragma once

#include <cstdint>
#include <vector>

#include "gadgetforge/xof.hpp"

namespace gadgetforge {

// Gaussian width s in rho_s(x) = exp(-pi x^2 / s^2); the standard deviation
// is s / sqrt(2 pi).
struct GaussParams {
  double width;
  double center = 0.0;
  double tailcut = 10.0;  // in standard deviations

  void validate() const;
  double stddev() const;
};

double width_to_stddev(double width);
double stddev_to_width(double stddev);

// Discrete Gaussian over Z with arbitrary center and any width up to the
// reference width fixed at construction.
//
// A half-Gaussian z0 >= 0 at the reference deviation is drawn from a
// cumulative table, mirrored with a random bit to z = b + (2b - 1) z0, and
// accepted with probability exp(-(z - c)^2 / 2 sigma^2 + z0^2 / 2 sigma0^2),
// where c in [0, 1) is the fractional part of the center. Outputs farther
// than tailcut standard deviations from the center are rejected.
class IntegerGaussian {
 public:
  explicit IntegerGaussian(double reference_width, double tailcut = 10.0);

  std::int64_t sample(double center, Rng& rng) const;
  std::int64_t sample(double width, double center, Rng& rng) const;

  double reference_width() const { return width0_; }
  double tailcut() const { return tailcut_; }

 private:
  double width0_;
  double sigma0_;
  double tailcut_;
  std::vector<double> cdf_;  // cdf_[k] = P(z0 <= k), last entry == 1
};

// D_{Z, width, center}; builds a table per call, prefer IntegerGaussian in loops.
std::int64_t sample_z(const GaussParams& params, Rng& rng);

// Sample from D_{qZ + c, r} (centered at 0) using a base sampler whose
// reference width is at least r / q.
std::int64_t sample_coset(std::int64_t q, std::int64_t c, double r,
                          const IntegerGaussian& base, Rng& rng);
std::int64_t sample_coset(std::int64_t q, std::int64_t c, double r, Rng& rng);

// Exact probabilities of D_{Z, width, center} on [lo, hi] by direct summation
// over the tailcut support. Shared by tests and the statistics harness.
std::vector<double> discrete_gaussian_pmf(double width, double center,
                                          std::int64_t lo, std::int64_t hi);

struct TernaryShape {
  int n;
  int plus;   // number of +1 coefficients
  int minus;  // number of -1 coefficients

  void validate() const;
};

// Uniform element of T(n, plus, minus): Fisher-Yates over the fixed multiset.
std::vector<std::int64_t> sample_ternary(const TernaryShape& shape, Rng& rng);

}  // namespace gadgetforge
