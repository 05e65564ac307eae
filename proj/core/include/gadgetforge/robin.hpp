#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "gadgetforge/hash_sign.hpp"
#include "gadgetforge/params.hpp"
#include "gadgetforge/ring.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

struct RobinPublicKey {
  Poly h;  // (p - g) / f mod Q, centered

  friend bool operator==(const RobinPublicKey&, const RobinPublicKey&) = default;
};

// Ternary trapdoor (f, g) with the signer state rebuilt from it.
class RobinSecretKey {
 public:
  // Throws NotInvertible if f is not a unit mod Q and NotPositiveDefinite if
  // the perturbation covariance cannot be factored.
  RobinSecretKey(const ParamSet& params, Poly f, Poly g,
                 FactorMode mode = FactorMode::kSpectral);

  const ParamSet& params() const { return signer_->params(); }
  const Poly& f() const { return f_; }
  const Poly& g() const { return g_; }
  const RobinPublicKey& public_key() const { return pk_; }
  const HashSigner& signer() const { return *signer_; }

 private:
  Poly f_, g_;
  RobinPublicKey pk_;
  std::shared_ptr<const HashSigner> signer_;
};

struct RobinSignature {
  Bytes salt;
  Poly z1;

  friend bool operator==(const RobinSignature&, const RobinSignature&) = default;
};

struct KeygenStats {
  std::int64_t galois_k = 1;
  double quality = 0.0;
  int restarts = 0;
  int pairs_tried = 0;
};

struct RobinKeyPair {
  RobinPublicKey pk;
  RobinSecretKey sk;
  KeygenStats stats;
};

RobinKeyPair robin_keygen(const ParamSet& params, Rng& rng,
                          FactorMode mode = FactorMode::kSpectral);

RobinSignature robin_sign(std::span<const std::uint8_t> msg, const RobinSecretKey& sk,
                          Rng& rng, const AttemptObserver& observer = {});

bool robin_verify(std::span<const std::uint8_t> msg, const RobinSignature& sig,
                  const RobinPublicKey& pk, const ParamSet& params);

}  // namespace gadgetforge
