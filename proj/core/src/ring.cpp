#include "gadgetforge/ring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gadgetforge/errors.hpp"

namespace gadgetforge {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

// GF(2)[x] polynomial as one byte per coefficient.
using Gf2Poly = std::vector<std::uint8_t>;

int gf2_degree(const Gf2Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i]) return i;
  }
  return -1;
}

// Inverse of a modulo x^n + 1 over GF(2), or empty if gcd != 1.
Gf2Poly gf2_inverse(const Gf2Poly& a, int n) {
  const std::size_t width = 2 * static_cast<std::size_t>(n) + 2;
  Gf2Poly r0(width, 0), r1(width, 0), t0(width, 0), t1(width, 0);
  r0[0] = 1;
  r0[n] = 1;
  std::copy(a.begin(), a.end(), r1.begin());
  t1[0] = 1;
  int d0 = n;
  int d1 = gf2_degree(r1);
  while (d1 >= 0) {
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(t0, t1);
      std::swap(d0, d1);
      continue;
    }
    const int shift = d0 - d1;
    for (int i = 0; i <= d1; ++i) r0[i + shift] ^= r1[i];
    for (std::size_t i = 0; i + shift < width; ++i) t0[i + shift] ^= t1[i];
    d0 = gf2_degree(r0);
    if (d0 < 0) break;
  }
  // The gcd is whichever of r0/r1 remained nonzero last.
  const Gf2Poly& g = d0 >= 0 ? r0 : r1;
  const Gf2Poly& t = d0 >= 0 ? t0 : t1;
  if (gf2_degree(g) != 0) return {};
  Gf2Poly inv(n, 0);
  // Reduce t modulo x^n + 1 (x^{i+n} == x^i).
  for (std::size_t i = 0; i < width; ++i) {
    if (t[i]) inv[i % n] ^= 1;
  }
  return inv;
}

}  // namespace

Ring::Ring(int n, RingKind kind, std::int64_t modulus)
    : n_(n), kind_(kind), modulus_(modulus) {
  if (kind == RingKind::kConvolution && !is_prime(n)) {
    throw std::invalid_argument("convolution ring requires prime n, got " +
                                std::to_string(n));
  }
  if (kind == RingKind::kCyclotomic && !is_power_of_two(n)) {
    throw std::invalid_argument("cyclotomic ring requires n a power of two, got " +
                                std::to_string(n));
  }
  if (modulus < 2) throw std::invalid_argument("ring modulus must be >= 2");
  transform_ = std::make_shared<const EmbeddingTransform>(n, kind);
}

void Ring::check(const Poly& a) const {
  if (static_cast<int>(a.size()) != n_) {
    throw std::invalid_argument("polynomial length " + std::to_string(a.size()) +
                                " does not match ring degree " + std::to_string(n_));
  }
}

Poly Ring::one() const {
  Poly p(n_);
  p[0] = 1;
  return p;
}

Poly Ring::reduce(const Poly& a) const {
  check(a);
  Poly out(n_);
  for (int i = 0; i < n_; ++i) out[i] = center_mod(a[i], modulus_);
  return out;
}

Poly Ring::add(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  Poly out(n_);
  for (int i = 0; i < n_; ++i) out[i] = center_mod(a[i] + b[i], modulus_);
  return out;
}

Poly Ring::sub(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  Poly out(n_);
  for (int i = 0; i < n_; ++i) out[i] = center_mod(a[i] - b[i], modulus_);
  return out;
}

std::vector<std::int64_t> Ring::convolve(const Poly& a, const Poly& b) const {
  check(a);
  check(b);
  std::int64_t max_a = 0, max_b = 0;
  for (auto v : a.coeffs) max_a = std::max(max_a, v < 0 ? -v : v);
  for (auto v : b.coeffs) max_b = std::max(max_b, v < 0 ? -v : v);
  std::vector<std::int64_t> out(n_);
  const std::int64_t sign = kind_ == RingKind::kConvolution ? 1 : -1;
  // Doubles hold every partial sum exactly below 2^53 and vectorize far better
  // than 64-bit integer multiplies.
  if (static_cast<double>(max_a) * static_cast<double>(max_b) * n_ < 0x1p53) {
    std::vector<double> acc(2 * n_, 0.0);
    std::vector<double> bd(b.coeffs.begin(), b.coeffs.end());
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      const double ai = static_cast<double>(a[i]);
      double* dst = acc.data() + i;
      for (int j = 0; j < n_; ++j) dst[j] += ai * bd[j];
    }
    for (int k = 0; k < n_; ++k) {
      out[k] = static_cast<std::int64_t>(acc[k]) + sign * static_cast<std::int64_t>(acc[k + n_]);
    }
    return out;
  }
  std::vector<std::int64_t> acc(2 * n_, 0);
  const std::int64_t* bp = b.coeffs.data();
  for (int i = 0; i < n_; ++i) {
    const std::int64_t ai = a[i];
    if (ai == 0) continue;
    std::int64_t* dst = acc.data() + i;
    for (int j = 0; j < n_; ++j) dst[j] += ai * bp[j];
  }
  for (int k = 0; k < n_; ++k) out[k] = acc[k] + sign * acc[k + n_];
  return out;
}

Poly Ring::mul(const Poly& a, const Poly& b) const {
  Poly ar = reduce(a);
  Poly br = reduce(b);
  Poly out(convolve(ar, br));
  for (auto& c : out.coeffs) c = center_mod(c, modulus_);
  return out;
}

Poly Ring::mul_integer(const Poly& a, const Poly& b) const {
  return Poly(convolve(a, b));
}

Poly Ring::adjoint(const Poly& a) const {
  check(a);
  Poly out(n_);
  out[0] = a[0];
  const std::int64_t sign = kind_ == RingKind::kConvolution ? 1 : -1;
  for (int i = 1; i < n_; ++i) out[i] = sign * a[n_ - i];
  return out;
}

bool Ring::is_galois_unit(std::int64_t k) const {
  const std::int64_t order = kind_ == RingKind::kConvolution ? n_ : 2 * n_;
  const std::int64_t km = ((k % order) + order) % order;
  return std::gcd(km, order) == 1;
}

std::vector<std::int64_t> Ring::galois_units() const {
  std::vector<std::int64_t> units;
  const std::int64_t order = kind_ == RingKind::kConvolution ? n_ : 2 * n_;
  for (std::int64_t k = 1; k < order; ++k) {
    if (std::gcd(k, order) == 1) units.push_back(k);
  }
  return units;
}

Poly Ring::galois(const Poly& a, std::int64_t k) const {
  check(a);
  if (!is_galois_unit(k)) {
    throw std::invalid_argument("galois index " + std::to_string(k) + " is not a unit");
  }
  Poly out(n_);
  if (kind_ == RingKind::kConvolution) {
    const std::int64_t km = ((k % n_) + n_) % n_;
    for (int i = 0; i < n_; ++i) out[(i * km) % n_] += a[i];
  } else {
    const std::int64_t two_n = 2 * static_cast<std::int64_t>(n_);
    const std::int64_t km = ((k % two_n) + two_n) % two_n;
    for (int i = 0; i < n_; ++i) {
      const std::int64_t e = (i * km) % two_n;
      if (e < n_) {
        out[e] += a[i];
      } else {
        out[e - n_] -= a[i];
      }
    }
  }
  return out;
}

std::vector<int> Ring::galois_permutation(std::int64_t k) const {
  if (!is_galois_unit(k)) {
    throw std::invalid_argument("galois index " + std::to_string(k) + " is not a unit");
  }
  std::vector<int> perm(n_);
  if (kind_ == RingKind::kConvolution) {
    const std::int64_t km = ((k % n_) + n_) % n_;
    for (int j = 0; j < n_; ++j) perm[j] = static_cast<int>((j * km) % n_);
  } else {
    const std::int64_t two_n = 2 * static_cast<std::int64_t>(n_);
    const std::int64_t km = ((k % two_n) + two_n) % two_n;
    for (int j = 0; j < n_; ++j) {
      perm[j] = static_cast<int>((((2 * j + 1) * km) % two_n - 1) / 2);
    }
  }
  return perm;
}

std::vector<std::complex<double>> Ring::embed(const Poly& a) const {
  check(a);
  std::vector<double> coeffs(a.coeffs.begin(), a.coeffs.end());
  std::vector<std::complex<double>> out(n_);
  transform_->forward(coeffs, out);
  return out;
}

Spectrum Ring::spectrum(const Poly& a) const {
  const auto values = embed(a);
  Spectrum s;
  s.mags2.resize(n_);
  for (int j = 0; j < n_; ++j) s.mags2[j] = std::norm(values[j]);
  return s;
}

double quality_from_spectra(const Spectrum& f, const Spectrum& g,
                            std::span<const int> perm) {
  double worst = 0.0;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    worst = std::max(worst, f.mags2[j] + g.mags2[perm[j]]);
  }
  return std::sqrt(worst);
}

double Ring::quality(const Poly& f, const Poly& g, std::int64_t k) const {
  const auto perm = galois_permutation(k);
  return quality_from_spectra(spectrum(f), spectrum(g), perm);
}

Poly Ring::invert_mod_2k(const Poly& f) const {
  check(f);
  if (!is_power_of_two(modulus_)) {
    throw std::invalid_argument("invert_mod_2k requires a power-of-two modulus");
  }
  Gf2Poly f2(n_);
  for (int i = 0; i < n_; ++i) f2[i] = static_cast<std::uint8_t>(f[i] & 1);
  const Gf2Poly inv2 = gf2_inverse(f2, n_);
  if (inv2.empty()) throw NotInvertible("polynomial is not invertible modulo 2");

  Poly g(n_);
  for (int i = 0; i < n_; ++i) g[i] = inv2[i];
  g = reduce(g);
  const Poly two = [&] {
    Poly t(n_);
    t[0] = 2;
    return t;
  }();
  // g is correct modulo `correct`; each Newton step squares it.
  for (std::int64_t correct = 2; correct < modulus_; correct *= correct) {
    g = mul(g, sub(two, mul(f, g)));
  }
  if (mul(f, g) != one()) {
    throw NotInvertible("Newton lifting did not converge");
  }
  return g;
}

std::vector<std::vector<std::int64_t>> Ring::matrix(const Poly& a) const {
  check(a);
  std::vector<std::vector<std::int64_t>> m(n_, std::vector<std::int64_t>(n_, 0));
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) {
      // coefficient of x^{i+j}
      const int e = i + j;
      if (e < n_) {
        m[e][j] += a[i];
      } else if (kind_ == RingKind::kConvolution) {
        m[e - n_][j] += a[i];
      } else {
        m[e - n_][j] -= a[i];
      }
    }
  }
  return m;
}

}  // namespace gadgetforge
