#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace gadgetforge {

enum class RingKind {
  kConvolution,  // Z[x]/(x^n - 1), n prime
  kCyclotomic,   // Z[x]/(x^n + 1), n a power of two
};

// Evaluation of ring elements at the ring's n evaluation points, in the fixed
// order
//   kConvolution: w_j = exp(2 pi i j / n)
//   kCyclotomic:  w_j = exp(i pi (2j + 1) / n)
// for j = 0..n-1. forward() maps coefficients a to (a(w_0), ..., a(w_{n-1}));
// inverse() is its exact inverse. With these conventions the multiplication
// matrix satisfies M(a) = V^{-1} diag(forward(a)) V, V = forward as a matrix.
//
// Backed by FFTW; plans are created once and executed with the thread-safe
// new-array interface.
class EmbeddingTransform {
 public:
  EmbeddingTransform(int n, RingKind kind);
  ~EmbeddingTransform();
  EmbeddingTransform(const EmbeddingTransform&) = delete;
  EmbeddingTransform& operator=(const EmbeddingTransform&) = delete;

  int size() const { return n_; }
  RingKind kind() const { return kind_; }

  void forward(std::span<const double> coeffs,
               std::span<std::complex<double>> out) const;
  void forward(std::span<const std::complex<double>> coeffs,
               std::span<std::complex<double>> out) const;
  void inverse(std::span<const std::complex<double>> values,
               std::span<std::complex<double>> out) const;

 private:
  int n_;
  RingKind kind_;
  std::vector<std::complex<double>> twist_;  // zeta^k for the cyclotomic case
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

}  // namespace gadgetforge
