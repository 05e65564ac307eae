#include "gadgetforge/eagle.hpp"

#include <optional>

#include "gadgetforge/errors.hpp"
#include "gadgetforge/hash.hpp"
#include "gadgetforge/trapdoor_search.hpp"

namespace gadgetforge {

namespace {

void check_eagle(const ParamSet& params) {
  if (params.scheme != Scheme::kEagle) {
    throw ConfigError("parameter set '" + params.name + "' is not an Eagle set");
  }
}

}  // namespace

EagleSecretKey::EagleSecretKey(const ParamSet& params, Bytes seed_a, Poly f, Poly g,
                               FactorMode mode)
    : f_(std::move(f)), g_(std::move(g)) {
  check_eagle(params);
  if (static_cast<int>(seed_a.size()) != params.seed_bytes) {
    throw std::invalid_argument("EagleSecretKey: seed length mismatch");
  }
  const Ring ring = params.ring();
  a_ = expand_seed(seed_a, params.n, params.Q);
  Poly b = ring.zero();
  b[0] = params.p;
  b = ring.sub(b, ring.add(ring.mul(a_, f_), g_));
  pk_ = EaglePublicKey{std::move(seed_a), std::move(b)};
  signer_ = std::make_shared<const HashSigner>(params, std::vector<Poly>{a_, pk_.b},
                                               std::vector<Poly>{g_, f_, ring.one()}, mode);
}

EagleKeyPair eagle_keygen(const ParamSet& params, Rng& rng, FactorMode mode) {
  check_eagle(params);
  const Ring ring = params.ring();
  Bytes seed_a(params.seed_bytes);
  rng.fill(seed_a);
  std::optional<EagleSecretKey> sk;
  auto accept = [&](const Poly& f, const Poly& g) {
    try {
      sk.emplace(params, seed_a, f, g, mode);
      return true;
    } catch (const NotPositiveDefinite&) {
      return false;
    }
  };
  const TrapdoorSearchResult res =
      search_trapdoor(ring, params.ternary(), params.quality_bound(), params.K, rng, accept,
                      params.max_restarts);
  KeygenStats stats{res.galois_k, res.quality, res.restarts, res.pairs_tried};
  return EagleKeyPair{sk->public_key(), std::move(*sk), stats};
}

EagleSignature eagle_sign(std::span<const std::uint8_t> msg, const EagleSecretKey& sk,
                          Rng& rng, const AttemptObserver& observer) {
  auto out = sk.signer().sign(msg, rng, observer);
  return EagleSignature{std::move(out.salt), std::move(out.z[0]), std::move(out.z[1])};
}

bool eagle_verify(std::span<const std::uint8_t> msg, const EagleSignature& sig,
                  const EaglePublicKey& pk, const ParamSet& params) {
  if (params.scheme != Scheme::kEagle) return false;
  if (static_cast<int>(pk.seed_a.size()) != params.seed_bytes) return false;
  if (static_cast<int>(pk.b.size()) != params.n) return false;
  const Ring ring = params.ring();
  const Poly a = expand_seed(pk.seed_a, params.n, params.Q);
  const Poly pub[2] = {a, pk.b};
  const Poly z[2] = {sig.z1, sig.z2};
  return verify_hash_sign(params, ring, pub, msg, sig.salt, z);
}

}  // namespace gadgetforge
