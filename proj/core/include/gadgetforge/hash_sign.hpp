#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gadgetforge/gadget.hpp"
#include "gadgetforge/params.hpp"
#include "gadgetforge/perturbation.hpp"
#include "gadgetforge/ring.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

// One run of presamp inside signing, reported before the norm check decides.
struct SignAttempt {
  std::span<const std::int64_t> u;
  const Preimage& preimage;
  double twisted_norm;
  bool accepted;
};
using AttemptObserver = std::function<void(const SignAttempt&)>;

// Hash-and-sign over A = [I | M(a_1) | ... | M(a_{k-1})] with trapdoor
// T = [M(t_0); ...; M(t_{k-1})] and A T = p (mod Q). A signature is
// (salt, z_1, ..., z_{k-1}); z_0 + e is recovered by the verifier.
class HashSigner {
 public:
  HashSigner(const ParamSet& params, std::vector<Poly> public_polys,
             std::vector<Poly> trapdoor_polys, FactorMode mode = FactorMode::kSpectral);

  struct Output {
    Bytes salt;
    std::vector<Poly> z;
    int attempts = 0;
  };

  Output sign(std::span<const std::uint8_t> msg, Rng& rng,
              const AttemptObserver& observer = {}) const;

  const ParamSet& params() const { return params_; }
  const Ring& ring() const { return ring_; }
  const TrapdoorMap& trapdoor_map() const { return map_; }
  const CompactGadget& gadget() const { return gadget_; }
  const PerturbContext& perturbation() const { return perturb_; }

 private:
  ParamSet params_;
  Ring ring_;
  std::vector<Poly> public_polys_;
  std::vector<Poly> trapdoor_polys_;
  CompactGadget gadget_;
  PerturbContext perturb_;
  TrapdoorMap map_;
};

// z' = u - sum a_i z_i mod Q (centered), the recovered z_0 + e.
Poly recover_first_block(const Ring& ring, std::span<const Poly> public_polys,
                         std::span<const std::int64_t> u, std::span<const Poly> z);

// sqrt(|z'|^2 + gamma^2 sum |z_i|^2).
double twisted_norm(const Poly& recovered, std::span<const Poly> z, double gamma);

// Full verification: shape and coefficient range checks, hash, norm bound.
bool verify_hash_sign(const ParamSet& params, const Ring& ring,
                      std::span<const Poly> public_polys,
                      std::span<const std::uint8_t> msg,
                      std::span<const std::uint8_t> salt, std::span<const Poly> z);

}  // namespace gadgetforge
