#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gadgetforge {

using Bytes = std::vector<std::uint8_t>;
using Seed = std::array<std::uint8_t, 32>;

// One-shot SHAKE256 of the concatenation of `parts`.
Bytes shake256(std::initializer_list<std::span<const std::uint8_t>> parts,
               std::size_t out_len);

// Sequential reader over SHAKE256(input). Output is the standard XOF stream;
// when the buffered prefix runs out the digest is recomputed with a doubled
// output length, which leaves the already consumed prefix unchanged.
class XofReader {
 public:
  XofReader(std::initializer_list<std::span<const std::uint8_t>> parts,
            std::size_t initial_len = 1024);

  std::uint8_t next_byte();
  // Big-endian 16-bit chunk.
  std::uint16_t next_u16();

 private:
  void grow();

  Bytes input_;
  Bytes buffer_;
  std::size_t pos_ = 0;
};

// Deterministic random stream.
//
// Block i of the stream is SHAKE256(seed || LE64(i)) truncated to 4096 bytes;
// the stream is the concatenation of blocks 0, 1, 2, ... Integers are read
// little-endian 8 bytes at a time. Derived quantities:
//   uniform()  = (u64 >> 11) * 2^-53
//   normal()   = Box-Muller on (1 - uniform(), uniform()), both outputs used
//   below(b)   = rejection on the top bits, unbiased
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(const Seed& seed);

  // Seeds from arbitrary bytes: used verbatim when 32 bytes long, otherwise
  // compressed with SHAKE256.
  static Rng from_bytes(std::span<const std::uint8_t> bytes);
  static Rng from_os();

  // Independent child stream for index `i` (used for per-trial streams).
  Rng derive(std::uint64_t index) const;

  const Seed& seed() const { return seed_; }

  std::uint64_t next_u64();
  std::uint64_t operator()() { return next_u64(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  void fill(std::span<std::uint8_t> out);
  bool bit();
  double uniform();
  std::uint64_t below(std::uint64_t bound);
  double normal();

 private:
  void refill();

  Seed seed_;
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 4096> buf_{};
  std::size_t pos_ = 4096;
  std::uint64_t bits_ = 0;
  int nbits_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gadgetforge
