#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gadgetforge/gaussian.hpp"
#include "gadgetforge/ring.hpp"

namespace gadgetforge {

enum class Scheme : std::uint8_t { kRobin, kEagle };

std::string_view scheme_name(Scheme s);
Scheme parse_scheme(std::string_view name);

// One row of the published parameter tables. r and s are the printed values,
// which are standard deviations; the rho_s widths used by the samplers are
// sqrt(2 pi) times larger (see gadget_width() / preimage_width()).
struct ParamSet {
  std::string name;
  Scheme scheme = Scheme::kRobin;
  std::uint8_t id = 0;
  int n = 0;
  std::int64_t Q = 0, p = 0, q = 0;
  int a = 0, b = 0;  // ternary weights of f and g
  double alpha = 0, r = 0, s = 0;
  double table_gamma = 0;  // as printed; not used by the schemes
  double beta = 0;         // acceptance bound on the twisted norm
  int K = 5;
  int salt_bytes = 40;
  int seed_bytes = 32;
  // Rounds of K x K fresh candidates before keygen gives up.
  int max_restarts = 4096;

  void validate() const;

  RingKind ring_kind() const;
  Ring ring() const;
  TernaryShape ternary() const { return {n, a, b}; }
  // Ring blocks of the preimage: m = blocks() * n.
  int blocks() const { return scheme == Scheme::kRobin ? 2 : 3; }
  int m() const { return blocks() * n; }
  // Polynomials carried by a signature.
  int signature_polys() const { return blocks() - 1; }

  double gamma() const;           // sqrt(s^2 + (p^2 - 1)/12) / s
  double beta_formula() const;    // 1.04 sqrt(blocks n (s^2 + (p^2-1)/12))
  double s_lower_bound() const;   // sqrt(1+q^2)/q * r * alpha * sqrt(2(a+b))
  double quality_bound() const;   // alpha * sqrt(2(a+b))
  double rbar() const { return r / static_cast<double>(q); }

  double gadget_width() const { return stddev_to_width(r); }
  double preimage_width() const { return stddev_to_width(s); }
  double rounding_width() const { return stddev_to_width(rbar()); }

  // Verification rejects signature coefficients above this magnitude.
  std::int64_t coeff_bound() const;
  // ceil(log2 Q)
  int modulus_bits() const;
};

// Built-in parameter sets plus optional overrides.
//
// Override format (plain text, one assignment per line):
//
//   # comment
//   [robin-701]
//   s = 449.8
//   beta = 28928.7
//
//   [robin-toy]
//   scheme = robin
//   id = 200
//   n = 101
//   ...
//
// A section naming an existing set overrides individual fields; a new name
// must provide `scheme` and is otherwise seeded from zeros, then validated.
// Keys: scheme id n Q p q a b alpha r s gamma beta K salt_bytes seed_bytes
// max_restarts.
class ParamRegistry {
 public:
  static ParamRegistry builtin();
  // builtin() with GADGETFORGE_PARAMDIR applied when set. The variable may
  // point at an override file or at a directory containing `params.conf`.
  static ParamRegistry from_environment();

  void apply_overrides(std::istream& in);
  void apply_overrides_file(const std::filesystem::path& path);

  const ParamSet& find(std::string_view name) const;  // throws ConfigError
  const ParamSet& find(std::uint8_t id) const;        // throws ConfigError
  const std::vector<ParamSet>& all() const { return sets_; }

 private:
  std::vector<ParamSet> sets_;
};

}  // namespace gadgetforge
