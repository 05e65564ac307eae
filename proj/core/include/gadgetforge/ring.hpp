#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "gadgetforge/embedding.hpp"

namespace gadgetforge {

// Centered representative of v modulo m, in {-floor(m/2), ..., m - floor(m/2) - 1}.
constexpr std::int64_t center_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  if (r < 0) r += m;
  if (r >= m - m / 2) r -= m;
  return r;
}

// Coefficient vector of a ring element.
struct Poly {
  std::vector<std::int64_t> coeffs;

  Poly() = default;
  explicit Poly(std::size_t n) : coeffs(n, 0) {}
  explicit Poly(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

  std::size_t size() const { return coeffs.size(); }
  std::int64_t& operator[](std::size_t i) { return coeffs[i]; }
  std::int64_t operator[](std::size_t i) const { return coeffs[i]; }
  std::span<const std::int64_t> view() const { return coeffs; }

  friend bool operator==(const Poly&, const Poly&) = default;
};

// Squared magnitudes |a(w_j)|^2 at the ring's evaluation points, in the order
// documented on EmbeddingTransform.
struct Spectrum {
  std::vector<double> mags2;
};

// Quotient ring Z_Q[x]/(x^n -+ 1). Values are immutable; copies share the
// embedding transform.
class Ring {
 public:
  Ring(int n, RingKind kind, std::int64_t modulus);

  int degree() const { return n_; }
  RingKind kind() const { return kind_; }
  std::int64_t modulus() const { return modulus_; }
  const EmbeddingTransform& transform() const { return *transform_; }

  Poly zero() const { return Poly(n_); }
  Poly one() const;

  // Centered reduction modulo Q of every coefficient.
  Poly reduce(const Poly& a) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;

  // Product reduced by x^n -+ 1 and centered modulo Q.
  Poly mul(const Poly& a, const Poly& b) const;
  // Product reduced by x^n -+ 1 only (exact over the integers).
  Poly mul_integer(const Poly& a, const Poly& b) const;

  // a(x^{-1}); its multiplication matrix is the transpose of M(a).
  Poly adjoint(const Poly& a) const;

  bool is_galois_unit(std::int64_t k) const;
  // Galois units in increasing order: 1..n-1 (convolution), odd 1..2n-1 (cyclotomic).
  std::vector<std::int64_t> galois_units() const;
  // a(x^k); throws std::invalid_argument when k is not a unit.
  Poly galois(const Poly& a, std::int64_t k) const;
  // perm[j] such that spectrum(galois(a,k)).mags2[j] == spectrum(a).mags2[perm[j]].
  std::vector<int> galois_permutation(std::int64_t k) const;

  std::vector<std::complex<double>> embed(const Poly& a) const;
  Spectrum spectrum(const Poly& a) const;

  // sqrt(s_1(M(f f* + s_k(g) s_k(g)*))) computed from permuted spectra.
  double quality(const Poly& f, const Poly& g, std::int64_t k) const;

  // Inverse modulo Q = 2^e: GF(2) extended Euclid followed by Newton lifting.
  // Throws NotInvertible when f is not a unit modulo 2.
  Poly invert_mod_2k(const Poly& f) const;

  // Dense n x n multiplication matrix M(a) (column j = v(a x^j)); small n only.
  std::vector<std::vector<std::int64_t>> matrix(const Poly& a) const;

 private:
  void check(const Poly& a) const;
  std::vector<std::int64_t> convolve(const Poly& a, const Poly& b) const;

  int n_;
  RingKind kind_;
  std::int64_t modulus_;
  std::shared_ptr<const EmbeddingTransform> transform_;
};

// Quality from precomputed spectra: sqrt(max_j F[j] + G[perm[j]]).
double quality_from_spectra(const Spectrum& f, const Spectrum& g,
                            std::span<const int> perm);

}  // namespace gadgetforge
