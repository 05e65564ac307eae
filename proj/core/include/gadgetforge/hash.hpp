#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gadgetforge/ring.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

// Largest multiple of Q not exceeding 2^16: 16-bit chunks at or above it are
// discarded.
std::uint32_t hash_acceptance_threshold(std::int64_t Q);

// Reads big-endian 16-bit chunks t from the XOF, keeps t < threshold(Q) and
// returns centered(t mod Q) until n coefficients are collected.
std::vector<std::int64_t> uniform_from_xof(XofReader& xof, int n, std::int64_t Q);

// u = H(msg, salt): SHAKE256(salt || msg) through uniform_from_xof.
std::vector<std::int64_t> hash_to_point(std::span<const std::uint8_t> msg,
                                        std::span<const std::uint8_t> salt, int n,
                                        std::int64_t Q);

// Public ring element a = expand(seed): SHAKE256(seed) through uniform_from_xof.
Poly expand_seed(std::span<const std::uint8_t> seed, int n, std::int64_t Q);

}  // namespace gadgetforge
