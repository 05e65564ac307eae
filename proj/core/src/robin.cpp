#include "gadgetforge/robin.hpp"

#include <optional>

#include "gadgetforge/errors.hpp"
#include "gadgetforge/trapdoor_search.hpp"

namespace gadgetforge {

namespace {

void check_robin(const ParamSet& params) {
  if (params.scheme != Scheme::kRobin) {
    throw ConfigError("parameter set '" + params.name + "' is not a Robin set");
  }
}

}  // namespace

RobinSecretKey::RobinSecretKey(const ParamSet& params, Poly f, Poly g, FactorMode mode)
    : f_(std::move(f)), g_(std::move(g)) {
  check_robin(params);
  const Ring ring = params.ring();
  const Poly finv = ring.invert_mod_2k(f_);
  Poly p_minus_g = ring.zero();
  p_minus_g[0] = params.p;
  p_minus_g = ring.sub(p_minus_g, g_);
  pk_.h = ring.mul(p_minus_g, finv);
  signer_ = std::make_shared<const HashSigner>(params, std::vector<Poly>{pk_.h},
                                               std::vector<Poly>{g_, f_}, mode);
}

RobinKeyPair robin_keygen(const ParamSet& params, Rng& rng, FactorMode mode) {
  check_robin(params);
  const Ring ring = params.ring();
  std::optional<RobinSecretKey> sk;
  auto accept = [&](const Poly& f, const Poly& g) {
    try {
      sk.emplace(params, f, g, mode);
      return true;
    } catch (const NotInvertible&) {
      return false;
    } catch (const NotPositiveDefinite&) {
      return false;
    }
  };
  const TrapdoorSearchResult res =
      search_trapdoor(ring, params.ternary(), params.quality_bound(), params.K, rng, accept,
                      params.max_restarts);
  KeygenStats stats{res.galois_k, res.quality, res.restarts, res.pairs_tried};
  return RobinKeyPair{sk->public_key(), std::move(*sk), stats};
}

RobinSignature robin_sign(std::span<const std::uint8_t> msg, const RobinSecretKey& sk,
                          Rng& rng, const AttemptObserver& observer) {
  auto out = sk.signer().sign(msg, rng, observer);
  return RobinSignature{std::move(out.salt), std::move(out.z[0])};
}

bool robin_verify(std::span<const std::uint8_t> msg, const RobinSignature& sig,
                  const RobinPublicKey& pk, const ParamSet& params) {
  if (params.scheme != Scheme::kRobin) return false;
  const Ring ring = params.ring();
  const Poly* pub = &pk.h;
  const Poly* z = &sig.z1;
  return verify_hash_sign(params, ring, std::span<const Poly>(pub, 1), msg, sig.salt,
                          std::span<const Poly>(z, 1));
}

}  // namespace gadgetforge
