#include "gadgetforge/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gadgetforge/ring.hpp"

namespace gadgetforge {

void GadgetParams::validate() const {
  if (p < 2 || q < 1) throw std::invalid_argument("gadget requires p >= 2 and q >= 1");
  if (p * q != modulus) throw std::invalid_argument("gadget requires p * q == modulus");
  if (!(r > 0.0)) throw std::invalid_argument("gadget width r must be positive");
}

Decoded decode_mod_p(std::span<const std::int64_t> u, std::int64_t p) {
  if (p < 2) throw std::invalid_argument("decode_mod_p requires p >= 2");
  Decoded d;
  d.c.resize(u.size());
  d.e.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    d.e[i] = center_mod(u[i], p);
    d.c[i] = (u[i] - d.e[i]) / p;
  }
  return d;
}

CompactGadget::CompactGadget(const GadgetParams& params) : params_(params) {
  params_.validate();
  const double width = params_.r / static_cast<double>(params_.q);
  base_ = std::make_shared<IntegerGaussian>(width);
  auto tables = std::make_shared<std::vector<CosetTable>>(static_cast<std::size_t>(params_.q));
  for (std::int64_t res = 0; res < params_.q; ++res) {
    // y ~ D_{Z, r/q, -res/q} over the same tailcut window as the base sampler
    const double center = -static_cast<double>(res) / static_cast<double>(params_.q);
    const double radius = base_->tailcut() * width_to_stddev(width);
    auto& t = (*tables)[static_cast<std::size_t>(res)];
    t.lo = static_cast<std::int64_t>(std::ceil(center - radius));
    const auto hi = static_cast<std::int64_t>(std::floor(center + radius));
    const auto pmf = discrete_gaussian_pmf(width, center, t.lo, hi);
    double acc = 0.0;
    for (double w : pmf) t.cdf.push_back(acc += w);
    t.cdf.back() = 1.0;
  }
  tables_ = std::move(tables);
}

std::int64_t CompactGadget::sample_coset(std::int64_t c, Rng& rng) const {
  const std::int64_t q = params_.q;
  const std::int64_t res = ((c % q) + q) % q;
  const auto& t = (*tables_)[static_cast<std::size_t>(res)];
  const double u = rng.uniform();
  const auto i = static_cast<std::int64_t>(std::upper_bound(t.cdf.begin(), t.cdf.end(), u) -
                                           t.cdf.begin());
  return q * (t.lo + std::min<std::int64_t>(i, static_cast<std::int64_t>(t.cdf.size()) - 1)) +
         res;
}

IntVec gadget_sample(std::span<const std::int64_t> u, const CompactGadget& gadget,
                     Rng& rng) {
  const auto& g = gadget.params();
  IntVec centered(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) centered[i] = center_mod(u[i], g.modulus);
  const Decoded d = decode_mod_p(centered, g.p);
  IntVec x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    x[i] = gadget.sample_coset(d.c[i], rng);
  }
  return x;
}

Preimage presamp(const TrapdoorMap& td, const CompactGadget& gadget,
                 std::span<const std::int64_t> u, const PerturbContext& perturb,
                 Rng& rng) {
  if (static_cast<int>(u.size()) != td.n || perturb.dimension() != td.m) {
    throw std::invalid_argument("presamp: dimension mismatch");
  }
  const auto& g = gadget.params();
  const IntVec p = perturb.sample(rng);
  const IntVec ap = td.apply_A(p);
  IntVec shifted(td.n);
  for (int i = 0; i < td.n; ++i) shifted[i] = center_mod(u[i] - ap[i], g.modulus);

  const Decoded d = decode_mod_p(shifted, g.p);
  IntVec xg(td.n);
  for (int i = 0; i < td.n; ++i) xg[i] = gadget.sample_coset(d.c[i], rng);

  const IntVec tx = td.apply_T(xg);
  Preimage out;
  out.x.resize(td.m);
  for (int i = 0; i < td.m; ++i) out.x[i] = p[i] + tx[i];
  out.e = d.e;
  return out;
}

}  // namespace gadgetforge
