#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gadgetforge/gaussian.hpp"
#include "gadgetforge/perturbation.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

using IntVec = std::vector<std::int64_t>;

// The scalar gadget P = p I_n with Q-matrix q I_n and p q = modulus; r is the
// gadget sampling width (rho_s convention).
struct GadgetParams {
  std::int64_t p;
  std::int64_t q;
  std::int64_t modulus;
  double r;

  void validate() const;
};

// Public map x -> A x mod modulus and trapdoor map v -> T v, with A T = p I.
struct TrapdoorMap {
  int m = 0;
  int n = 0;
  std::function<IntVec(std::span<const std::int64_t>)> apply_A;
  std::function<IntVec(std::span<const std::int64_t>)> apply_T;
};

struct Decoded {
  IntVec c;
  IntVec e;
};

// u_i = p c_i + e_i with e_i the centered residue of u_i modulo p.
Decoded decode_mod_p(std::span<const std::int64_t> u, std::int64_t p);

// Gadget parameters bundled with the base sampler for D_{Z, r/q, .}.
class CompactGadget {
 public:
  explicit CompactGadget(const GadgetParams& params);

  const GadgetParams& params() const { return params_; }
  const IntegerGaussian& base() const { return *base_; }

  // x ~ D_{qZ + c, r}. Same law as sample_coset(q, c, r), drawn by inversion
  // from one exact table per residue class c mod q.
  std::int64_t sample_coset(std::int64_t c, Rng& rng) const;

 private:
  struct CosetTable {
    std::int64_t lo = 0;      // smallest y, x = q y + residue
    std::vector<double> cdf;  // cdf[i] = P(y <= lo + i)
  };

  GadgetParams params_;
  std::shared_ptr<const IntegerGaussian> base_;
  std::shared_ptr<const std::vector<CosetTable>> tables_;
};

// Semi-random gadget sampler: x_i <- D_{qZ + c_i, r} where (c, e) = decode(u).
// p x = u - e (mod modulus) holds for the returned x.
IntVec gadget_sample(std::span<const std::int64_t> u, const CompactGadget& gadget,
                     Rng& rng);

struct Preimage {
  IntVec x;  // length m
  IntVec e;  // length n, A x = u - e (mod modulus)
};

// Approximate preimage: perturbation p, gadget sample for u - A p, x = p + T x'.
// `perturb` must be built for the same (T, s, r) and the target is assumed
// uniformly random (no guarantee is claimed for adversarial targets).
Preimage presamp(const TrapdoorMap& td, const CompactGadget& gadget,
                 std::span<const std::int64_t> u, const PerturbContext& perturb,
                 Rng& rng);

}  // namespace gadgetforge
