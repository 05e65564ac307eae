#include "gadgetforge/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gadgetforge {

namespace {
const double kSqrtTwoPi = std::sqrt(2.0 * std::numbers::pi);
}

double width_to_stddev(double width) { return width / kSqrtTwoPi; }
double stddev_to_width(double stddev) { return stddev * kSqrtTwoPi; }

void GaussParams::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("Gaussian width must be positive");
  }
  if (!(tailcut >= 6.0)) throw std::invalid_argument("tailcut must be >= 6");
  if (!std::isfinite(center)) throw std::invalid_argument("center must be finite");
}

double GaussParams::stddev() const { return width_to_stddev(width); }

IntegerGaussian::IntegerGaussian(double reference_width, double tailcut)
    : width0_(reference_width),
      sigma0_(width_to_stddev(reference_width)),
      tailcut_(tailcut) {
  GaussParams{reference_width, 0.0, tailcut}.validate();
  const auto support = static_cast<std::int64_t>(std::ceil(tailcut * sigma0_)) + 1;
  std::vector<double> weights(support + 1);
  for (std::int64_t k = 0; k <= support; ++k) {
    const double x = static_cast<double>(k) / sigma0_;
    weights[k] = std::exp(-0.5 * x * x);
  }
  cdf_.resize(weights.size());
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    total += weights[k];
    cdf_[k] = total;
  }
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::int64_t IntegerGaussian::sample(double center, Rng& rng) const {
  return sample(width0_, center, rng);
}

std::int64_t IntegerGaussian::sample(double width, double center, Rng& rng) const {
  if (!(width > 0.0) || width > width0_ * (1.0 + 1e-12)) {
    throw std::invalid_argument("IntegerGaussian: width exceeds the reference width");
  }
  const double sigma = width_to_stddev(width);
  const double floor_c = std::floor(center);
  const double frac = center - floor_c;
  const double radius = tailcut_ * sigma;
  if (std::floor(frac + radius) < std::ceil(frac - radius)) {
    throw std::invalid_argument("IntegerGaussian: no integer inside the tailcut window");
  }
  const double inv_2s2 = 1.0 / (2.0 * sigma * sigma);
  const double inv_2s02 = 1.0 / (2.0 * sigma0_ * sigma0_);
  for (;;) {
    const double u = rng.uniform();
    const auto z0 = static_cast<std::int64_t>(
        std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    const std::int64_t b = rng.bit() ? 1 : 0;
    const std::int64_t z = b + (2 * b - 1) * z0;
    const double d = static_cast<double>(z) - frac;
    if (std::abs(d) > radius) continue;
    const double x = d * d * inv_2s2 - static_cast<double>(z0 * z0) * inv_2s02;
    if (rng.uniform() < std::exp(-x)) {
      return z + static_cast<std::int64_t>(floor_c);
    }
  }
}

std::int64_t sample_z(const GaussParams& params, Rng& rng) {
  params.validate();
  IntegerGaussian sampler(params.width, params.tailcut);
  return sampler.sample(params.center, rng);
}

std::int64_t sample_coset(std::int64_t q, std::int64_t c, double r,
                          const IntegerGaussian& base, Rng& rng) {
  if (q < 1) throw std::invalid_argument("sample_coset: q must be >= 1");
  const std::int64_t rep = ((c % q) + q) % q;
  const double inner_width = r / static_cast<double>(q);
  const double inner_center = -static_cast<double>(rep) / static_cast<double>(q);
  return q * base.sample(inner_width, inner_center, rng) + rep;
}

std::int64_t sample_coset(std::int64_t q, std::int64_t c, double r, Rng& rng) {
  if (q < 1) throw std::invalid_argument("sample_coset: q must be >= 1");
  IntegerGaussian base(r / static_cast<double>(q));
  return sample_coset(q, c, r, base, rng);
}

std::vector<double> discrete_gaussian_pmf(double width, double center,
                                          std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return {};
  std::vector<double> pmf(hi - lo + 1);
  double total = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const double d = (static_cast<double>(x) - center) / width;
    pmf[x - lo] = std::exp(-std::numbers::pi * d * d);
    total += pmf[x - lo];
  }
  for (auto& p : pmf) p /= total;
  return pmf;
}

void TernaryShape::validate() const {
  if (n < 0 || plus < 0 || minus < 0 || plus + minus > n) {
    throw std::invalid_argument("ternary shape requires plus, minus >= 0 and plus + minus <= n");
  }
}

std::vector<std::int64_t> sample_ternary(const TernaryShape& shape, Rng& rng) {
  shape.validate();
  std::vector<std::int64_t> v(shape.n, 0);
  std::fill_n(v.begin(), shape.plus, 1);
  std::fill_n(v.begin() + shape.plus, shape.minus, -1);
  for (int i = shape.n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(v[i], v[j]);
  }
  return v;
}

}  // namespace gadgetforge
