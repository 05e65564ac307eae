#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "gadgetforge/hash_sign.hpp"
#include "gadgetforge/params.hpp"
#include "gadgetforge/ring.hpp"
#include "gadgetforge/robin.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

struct EaglePublicKey {
  Bytes seed_a;  // a = expand_seed(seed_a)
  Poly b;        // p - (a f + g) mod Q, centered

  friend bool operator==(const EaglePublicKey&, const EaglePublicKey&) = default;
};

class EagleSecretKey {
 public:
  // Throws NotPositiveDefinite if the perturbation covariance cannot be factored.
  EagleSecretKey(const ParamSet& params, Bytes seed_a, Poly f, Poly g,
                 FactorMode mode = FactorMode::kSpectral);

  const ParamSet& params() const { return signer_->params(); }
  const Poly& f() const { return f_; }
  const Poly& g() const { return g_; }
  const Poly& a() const { return a_; }
  const EaglePublicKey& public_key() const { return pk_; }
  const HashSigner& signer() const { return *signer_; }

 private:
  Poly f_, g_, a_;
  EaglePublicKey pk_;
  std::shared_ptr<const HashSigner> signer_;
};

struct EagleSignature {
  Bytes salt;
  Poly z1, z2;

  friend bool operator==(const EagleSignature&, const EagleSignature&) = default;
};

struct EagleKeyPair {
  EaglePublicKey pk;
  EagleSecretKey sk;
  KeygenStats stats;
};

EagleKeyPair eagle_keygen(const ParamSet& params, Rng& rng,
                          FactorMode mode = FactorMode::kSpectral);

EagleSignature eagle_sign(std::span<const std::uint8_t> msg, const EagleSecretKey& sk,
                          Rng& rng, const AttemptObserver& observer = {});

bool eagle_verify(std::span<const std::uint8_t> msg, const EagleSignature& sig,
                  const EaglePublicKey& pk, const ParamSet& params);

}  // namespace gadgetforge
