#include "gadgetforge/hash.hpp"

#include <stdexcept>

namespace gadgetforge {

std::uint32_t hash_acceptance_threshold(std::int64_t Q) {
  if (Q < 2 || Q > 65536) throw std::invalid_argument("hash modulus must be in [2, 2^16]");
  return static_cast<std::uint32_t>((65536 / Q) * Q);
}

std::vector<std::int64_t> uniform_from_xof(XofReader& xof, int n, std::int64_t Q) {
  const std::uint32_t threshold = hash_acceptance_threshold(Q);
  std::vector<std::int64_t> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    const std::uint32_t t = xof.next_u16();
    if (t >= threshold) continue;
    out.push_back(center_mod(static_cast<std::int64_t>(t % Q), Q));
  }
  return out;
}

std::vector<std::int64_t> hash_to_point(std::span<const std::uint8_t> msg,
                                        std::span<const std::uint8_t> salt, int n,
                                        std::int64_t Q) {
  XofReader xof({salt, msg}, 2 * static_cast<std::size_t>(n) + 64);
  return uniform_from_xof(xof, n, Q);
}

Poly expand_seed(std::span<const std::uint8_t> seed, int n, std::int64_t Q) {
  XofReader xof({seed}, 2 * static_cast<std::size_t>(n) + 64);
  return Poly(uniform_from_xof(xof, n, Q));
}

}  // namespace gadgetforge
