#include "gadgetforge/xof.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gadgetforge {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void shake256_into(std::initializer_list<std::span<const std::uint8_t>> parts,
                   std::span<std::uint8_t> out) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1) {
    throw std::runtime_error("SHAKE256 initialisation failed");
  }
  for (auto part : parts) {
    if (!part.empty() &&
        EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1) {
      throw std::runtime_error("SHAKE256 absorb failed");
    }
  }
  if (EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw std::runtime_error("SHAKE256 squeeze failed");
  }
}

}  // namespace

Bytes shake256(std::initializer_list<std::span<const std::uint8_t>> parts,
               std::size_t out_len) {
  Bytes out(out_len);
  shake256_into(parts, out);
  return out;
}

XofReader::XofReader(std::initializer_list<std::span<const std::uint8_t>> parts,
                     std::size_t initial_len) {
  for (auto part : parts) input_.insert(input_.end(), part.begin(), part.end());
  buffer_.resize(initial_len == 0 ? 64 : initial_len);
  shake256_into({input_}, buffer_);
}

void XofReader::grow() {
  buffer_.resize(buffer_.size() * 2);
  shake256_into({input_}, buffer_);
}

std::uint8_t XofReader::next_byte() {
  if (pos_ == buffer_.size()) grow();
  return buffer_[pos_++];
}

std::uint16_t XofReader::next_u16() {
  const std::uint16_t hi = next_byte();
  const std::uint16_t lo = next_byte();
  return static_cast<std::uint16_t>((hi << 8) | lo);
}

Rng::Rng(const Seed& seed) : seed_(seed) {}

Rng Rng::from_bytes(std::span<const std::uint8_t> bytes) {
  Seed seed{};
  if (bytes.size() == seed.size()) {
    std::memcpy(seed.data(), bytes.data(), seed.size());
  } else {
    shake256_into({bytes}, seed);
  }
  return Rng(seed);
}

Rng Rng::from_os() {
  Seed seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    std::random_device rd;
    for (auto& b : seed) b = static_cast<std::uint8_t>(rd());
  }
  return Rng(seed);
}

Rng Rng::derive(std::uint64_t index) const {
  static constexpr std::uint8_t kLabel[] = {'d', 'e', 'r', 'i', 'v', 'e'};
  std::array<std::uint8_t, 8> le{};
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(index >> (8 * i));
  Seed child{};
  shake256_into({seed_, kLabel, le}, child);
  return Rng(child);
}

void Rng::refill() {
  std::array<std::uint8_t, 8> le{};
  for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>(block_ >> (8 * i));
  shake256_into({seed_, le}, buf_);
  ++block_;
  pos_ = 0;
}

std::uint64_t Rng::next_u64() {
  if (pos_ + 8 > buf_.size()) refill();
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf_[pos_ + i];
  pos_ += 8;
  return v;
}

void Rng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ == buf_.size()) refill();
    b = buf_[pos_++];
  }
}

bool Rng::bit() {
  if (nbits_ == 0) {
    bits_ = next_u64();
    nbits_ = 64;
  }
  const bool b = bits_ & 1;
  bits_ >>= 1;
  --nbits_;
  return b;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  if (bound == 1) return 0;
  const int shift = std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t v = next_u64() >> shift;
    if (v < bound) return v;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace gadgetforge
