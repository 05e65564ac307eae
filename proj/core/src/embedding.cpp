#include "gadgetforge/embedding.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace gadgetforge {

namespace {
// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}
}  // namespace

struct EmbeddingTransform::Plans {
  fftw_plan evaluate = nullptr;     // sign +1: sum_k a_k w^{jk}
  fftw_plan interpolate = nullptr;  // sign -1
};

EmbeddingTransform::EmbeddingTransform(int n, RingKind kind)
    : n_(n), kind_(kind), plans_(std::make_unique<Plans>()) {
  if (n < 1) throw std::invalid_argument("EmbeddingTransform: n must be positive");
  if (kind == RingKind::kCyclotomic) {
    twist_.resize(n);
    for (int k = 0; k < n; ++k) {
      twist_[k] = std::polar(1.0, std::numbers::pi * k / n);
    }
  }
  std::vector<std::complex<double>> a(n), b(n);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->evaluate = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()),
                                      FFTW_BACKWARD, flags);
  plans_->interpolate = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()),
                                         FFTW_FORWARD, flags);
  if (!plans_->evaluate || !plans_->interpolate) {
    throw std::runtime_error("EmbeddingTransform: FFTW planning failed");
  }
}

EmbeddingTransform::~EmbeddingTransform() {
  if (!plans_) return;
  std::lock_guard lock(planner_mutex());
  if (plans_->evaluate) fftw_destroy_plan(plans_->evaluate);
  if (plans_->interpolate) fftw_destroy_plan(plans_->interpolate);
}

void EmbeddingTransform::forward(std::span<const double> coeffs,
                                 std::span<std::complex<double>> out) const {
  std::vector<std::complex<double>> tmp(coeffs.begin(), coeffs.end());
  forward(tmp, out);
}

void EmbeddingTransform::forward(std::span<const std::complex<double>> coeffs,
                                 std::span<std::complex<double>> out) const {
  if (static_cast<int>(coeffs.size()) != n_ || static_cast<int>(out.size()) != n_) {
    throw std::invalid_argument("EmbeddingTransform::forward: size mismatch");
  }
  std::vector<std::complex<double>> in(coeffs.begin(), coeffs.end());
  if (kind_ == RingKind::kCyclotomic) {
    for (int k = 0; k < n_; ++k) in[k] *= twist_[k];
  }
  fftw_execute_dft(plans_->evaluate, as_fftw(in.data()), as_fftw(out.data()));
}

void EmbeddingTransform::inverse(std::span<const std::complex<double>> values,
                                 std::span<std::complex<double>> out) const {
  if (static_cast<int>(values.size()) != n_ || static_cast<int>(out.size()) != n_) {
    throw std::invalid_argument("EmbeddingTransform::inverse: size mismatch");
  }
  std::vector<std::complex<double>> in(values.begin(), values.end());
  fftw_execute_dft(plans_->interpolate, as_fftw(in.data()), as_fftw(out.data()));
  const double scale = 1.0 / n_;
  for (int k = 0; k < n_; ++k) {
    out[k] *= scale;
    if (kind_ == RingKind::kCyclotomic) out[k] *= std::conj(twist_[k]);
  }
}

}  // namespace gadgetforge
