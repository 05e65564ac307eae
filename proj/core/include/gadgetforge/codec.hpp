#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gadgetforge/eagle.hpp"
#include "gadgetforge/params.hpp"
#include "gadgetforge/robin.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

// MSB-first bit packing.
class BitWriter {
 public:
  void put(std::uint64_t value, int bits);
  void put_bit(bool bit);
  std::size_t bit_count() const { return bits_; }
  // Pads the last byte with zero bits.
  Bytes finish() &&;

 private:
  Bytes out_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data) : data_(data) {}
  // Throws MalformedEncoding when the input is exhausted.
  std::uint64_t get(int bits);
  bool get_bit();
  std::size_t remaining_bits() const { return data_.size() * 8 - pos_; }
  // True if all remaining bits are zero and fewer than 8 are left.
  bool at_padded_end() const;

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// Public keys: ceil(log2 Q) bits per coefficient (non-negative representative),
// Eagle prepends seed_a.
Bytes encode_public_key(const RobinPublicKey& pk, const ParamSet& params);
Bytes encode_public_key(const EaglePublicKey& pk, const ParamSet& params);
RobinPublicKey decode_robin_public_key(std::span<const std::uint8_t> data, const ParamSet& params);
EaglePublicKey decode_eagle_public_key(std::span<const std::uint8_t> data, const ParamSet& params);
std::size_t public_key_bytes(const ParamSet& params);

// Secret keys: 2-bit trits (00 = 0, 01 = +1, 10 = -1) for f then g; Eagle
// prepends seed_a. The signer state is rebuilt on decode.
Bytes encode_secret_key(const RobinSecretKey& sk);
Bytes encode_secret_key(const EagleSecretKey& sk);
RobinSecretKey decode_robin_secret_key(std::span<const std::uint8_t> data, const ParamSet& params,
                                       FactorMode mode = FactorMode::kSpectral);
EagleSecretKey decode_eagle_secret_key(std::span<const std::uint8_t> data, const ParamSet& params,
                                       FactorMode mode = FactorMode::kSpectral);

// Golomb-Rice coding of signed coefficients: sign bit, k low bits of |c|,
// then |c| >> k in unary (zeros closed by a one). Zero has sign bit 0.
void golomb_rice_put(BitWriter& w, std::int64_t c, int k);
std::int64_t golomb_rice_get(BitReader& r, int k, std::int64_t bound);

// Expected bits per coefficient for a centered discrete Gaussian of the given
// standard deviation.
double golomb_rice_expected_bits(double stddev, int k);
// Per-set k: start at round(log2 s) - 1 and take the best of +-2 by expected length.
int golomb_rice_k(const ParamSet& params);

// salt || Golomb-Rice stream of z_1 (then z_2), zero-padded to a byte.
Bytes encode_signature(const RobinSignature& sig, const ParamSet& params);
Bytes encode_signature(const EagleSignature& sig, const ParamSet& params);
RobinSignature decode_robin_signature(std::span<const std::uint8_t> data, const ParamSet& params);
EagleSignature decode_eagle_signature(std::span<const std::uint8_t> data, const ParamSet& params);

// ceil(k_sig n log2(s sqrt(2 pi e)) / 8) + salt bytes, s the table's standard deviation.
std::size_t entropy_estimate(const ParamSet& params);

// File envelope: 4-byte magic, version byte, parameter-set id, payload.
enum class FileKind : std::uint8_t { kPublicKey, kSecretKey, kSignature };

inline constexpr std::uint8_t kFileVersion = 1;
inline constexpr std::size_t kFileHeaderBytes = 6;

std::array<std::uint8_t, 4> file_magic(Scheme scheme, FileKind kind);

struct FileEnvelope {
  Scheme scheme = Scheme::kRobin;
  FileKind kind = FileKind::kPublicKey;
  std::uint8_t paramset_id = 0;
  Bytes payload;
};

Bytes wrap_file(const FileEnvelope& env);
// Throws MalformedEncoding on bad magic, version or short input.
FileEnvelope unwrap_file(std::span<const std::uint8_t> data);

}  // namespace gadgetforge
