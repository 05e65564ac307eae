#include "gadgetforge/hash_sign.hpp"

#include <cmath>
#include <stdexcept>

#include "gadgetforge/hash.hpp"

namespace gadgetforge {

namespace {

constexpr int kMaxSignAttempts = 10000;

bool is_one(const Poly& t) {
  if (t.size() == 0 || t[0] != 1) return false;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] != 0) return false;
  }
  return true;
}

}  // namespace

HashSigner::HashSigner(const ParamSet& params, std::vector<Poly> public_polys,
                       std::vector<Poly> trapdoor_polys, FactorMode mode)
    : params_(params),
      ring_(params.ring()),
      public_polys_(std::move(public_polys)),
      trapdoor_polys_(std::move(trapdoor_polys)),
      gadget_(GadgetParams{params.p, params.q, params.Q, params.gadget_width()}),
      perturb_(PerturbContext::from_ring(ring_, trapdoor_polys_, params.preimage_width(),
                                         params.gadget_width(), params.rounding_width(),
                                         mode)) {
  const int k = params.blocks();
  if (static_cast<int>(public_polys_.size()) != k - 1 ||
      static_cast<int>(trapdoor_polys_.size()) != k) {
    throw std::invalid_argument("HashSigner: block counts do not match the scheme");
  }
  const int n = params.n;
  map_.m = k * n;
  map_.n = n;
  map_.apply_A = [ring = ring_, pub = public_polys_, n, k](std::span<const std::int64_t> x) {
    Poly acc(std::vector<std::int64_t>(x.begin(), x.begin() + n));
    acc = ring.reduce(acc);
    for (int b = 1; b < k; ++b) {
      Poly xb(std::vector<std::int64_t>(x.begin() + b * n, x.begin() + (b + 1) * n));
      acc = ring.add(acc, ring.mul(pub[b - 1], xb));
    }
    return acc.coeffs;
  };
  map_.apply_T = [ring = ring_, td = trapdoor_polys_, n, k](std::span<const std::int64_t> v) {
    const Poly vp(std::vector<std::int64_t>(v.begin(), v.end()));
    std::vector<std::int64_t> out(static_cast<std::size_t>(k) * n);
    for (int b = 0; b < k; ++b) {
      const Poly tb = is_one(td[b]) ? vp : ring.mul_integer(td[b], vp);
      std::copy(tb.coeffs.begin(), tb.coeffs.end(), out.begin() + b * n);
    }
    return out;
  };
}

HashSigner::Output HashSigner::sign(std::span<const std::uint8_t> msg, Rng& rng,
                                    const AttemptObserver& observer) const {
  const int n = params_.n;
  const int k = params_.blocks();
  const double gamma = params_.gamma();
  const std::int64_t bound = params_.coeff_bound();
  Output out;
  out.salt.resize(params_.salt_bytes);
  for (int attempt = 1; attempt <= kMaxSignAttempts; ++attempt) {
    rng.fill(out.salt);
    const auto u = hash_to_point(msg, out.salt, n, params_.Q);
    const Preimage pre = presamp(map_, gadget_, u, perturb_, rng);

    out.z.clear();
    bool in_range = true;
    for (int b = 1; b < k; ++b) {
      Poly zb(std::vector<std::int64_t>(pre.x.begin() + b * n, pre.x.begin() + (b + 1) * n));
      for (auto c : zb.coeffs) in_range = in_range && std::abs(c) <= bound;
      out.z.push_back(std::move(zb));
    }
    const Poly recovered = recover_first_block(ring_, public_polys_, u, out.z);
    const double norm = twisted_norm(recovered, out.z, gamma);
    const bool accepted = in_range && norm <= params_.beta;
    if (observer) observer(SignAttempt{u, pre, norm, accepted});
    if (accepted) {
      out.attempts = attempt;
      return out;
    }
  }
  throw std::runtime_error("signing did not terminate; parameters are inconsistent");
}

Poly recover_first_block(const Ring& ring, std::span<const Poly> public_polys,
                         std::span<const std::int64_t> u, std::span<const Poly> z) {
  Poly acc = ring.reduce(Poly(std::vector<std::int64_t>(u.begin(), u.end())));
  for (std::size_t i = 0; i < public_polys.size(); ++i) {
    acc = ring.sub(acc, ring.mul(public_polys[i], z[i]));
  }
  return acc;
}

double twisted_norm(const Poly& recovered, std::span<const Poly> z, double gamma) {
  double head = 0.0;
  for (auto c : recovered.coeffs) head += static_cast<double>(c) * static_cast<double>(c);
  double tail = 0.0;
  for (const auto& zi : z) {
    for (auto c : zi.coeffs) tail += static_cast<double>(c) * static_cast<double>(c);
  }
  return std::sqrt(head + gamma * gamma * tail);
}

bool verify_hash_sign(const ParamSet& params, const Ring& ring,
                      std::span<const Poly> public_polys,
                      std::span<const std::uint8_t> msg,
                      std::span<const std::uint8_t> salt, std::span<const Poly> z) {
  if (static_cast<int>(salt.size()) != params.salt_bytes) return false;
  if (static_cast<int>(z.size()) != params.signature_polys()) return false;
  if (public_polys.size() != z.size()) return false;
  const std::int64_t bound = params.coeff_bound();
  for (const auto& zi : z) {
    if (static_cast<int>(zi.size()) != params.n) return false;
    for (auto c : zi.coeffs) {
      if (std::abs(c) > bound) return false;
    }
  }
  for (const auto& a : public_polys) {
    if (static_cast<int>(a.size()) != params.n) return false;
  }
  const auto u = hash_to_point(msg, salt, params.n, params.Q);
  const Poly recovered = recover_first_block(ring, public_polys, u, z);
  return twisted_norm(recovered, z, params.gamma()) <= params.beta;
}

}  // namespace gadgetforge
