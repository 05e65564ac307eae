#include "gadgetforge/codec.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <numbers>

#include "gadgetforge/errors.hpp"
#include "gadgetforge/gaussian.hpp"

namespace gadgetforge {

void BitWriter::put(std::uint64_t value, int bits) {
  for (int i = bits - 1; i >= 0; --i) put_bit((value >> i) & 1U);
}

void BitWriter::put_bit(bool bit) {
  if (bits_ % 8 == 0) out_.push_back(0);
  if (bit) out_.back() |= static_cast<std::uint8_t>(0x80U >> (bits_ % 8));
  ++bits_;
}

Bytes BitWriter::finish() && { return std::move(out_); }

bool BitReader::get_bit() {
  if (pos_ >= data_.size() * 8) throw MalformedEncoding("bit stream truncated");
  const bool bit = (data_[pos_ / 8] >> (7 - pos_ % 8)) & 1U;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get(int bits) {
  std::uint64_t v = 0;
  for (int i = 0; i < bits; ++i) v = (v << 1) | static_cast<std::uint64_t>(get_bit());
  return v;
}

bool BitReader::at_padded_end() const {
  const std::size_t left = remaining_bits();
  if (left >= 8) return false;
  if (left == 0) return true;
  const std::uint8_t mask = static_cast<std::uint8_t>((1U << left) - 1);
  return (data_.back() & mask) == 0;
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw MalformedEncoding(what);
}

void put_modular(BitWriter& w, const Poly& a, const ParamSet& params) {
  const int bits = params.modulus_bits();
  for (auto c : a.coeffs) {
    std::int64_t v = c % params.Q;
    if (v < 0) v += params.Q;
    w.put(static_cast<std::uint64_t>(v), bits);
  }
}

Poly get_modular(BitReader& r, const ParamSet& params) {
  const int bits = params.modulus_bits();
  Poly a(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    const auto v = static_cast<std::int64_t>(r.get(bits));
    require(v < params.Q, "public key coefficient out of range");
    a[i] = center_mod(v, params.Q);
  }
  return a;
}

void put_trits(BitWriter& w, const Poly& a) {
  for (auto c : a.coeffs) {
    if (c == 0) {
      w.put(0, 2);
    } else if (c == 1) {
      w.put(1, 2);
    } else if (c == -1) {
      w.put(2, 2);
    } else {
      throw std::invalid_argument("secret polynomial is not ternary");
    }
  }
}

Poly get_trits(BitReader& r, int n) {
  Poly a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    switch (r.get(2)) {
      case 0: a[i] = 0; break;
      case 1: a[i] = 1; break;
      case 2: a[i] = -1; break;
      default: throw MalformedEncoding("invalid trit");
    }
  }
  return a;
}

Bytes take_seed(std::span<const std::uint8_t> data, const ParamSet& params) {
  require(data.size() >= static_cast<std::size_t>(params.seed_bytes), "missing seed");
  return Bytes(data.begin(), data.begin() + params.seed_bytes);
}

Bytes encode_sig(std::span<const std::uint8_t> salt, std::initializer_list<const Poly*> z,
                 const ParamSet& params) {
  if (static_cast<int>(salt.size()) != params.salt_bytes) {
    throw std::invalid_argument("signature salt length mismatch");
  }
  const int k = golomb_rice_k(params);
  BitWriter w;
  for (const Poly* p : z) {
    if (static_cast<int>(p->size()) != params.n) {
      throw std::invalid_argument("signature polynomial length mismatch");
    }
    for (auto c : p->coeffs) golomb_rice_put(w, c, k);
  }
  Bytes out(salt.begin(), salt.end());
  const Bytes body = std::move(w).finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::vector<Poly> decode_sig(std::span<const std::uint8_t> data, int polys,
                             const ParamSet& params, Bytes& salt) {
  require(data.size() >= static_cast<std::size_t>(params.salt_bytes), "signature too short");
  salt.assign(data.begin(), data.begin() + params.salt_bytes);
  BitReader r(data.subspan(params.salt_bytes));
  const int k = golomb_rice_k(params);
  const std::int64_t bound = params.coeff_bound();
  std::vector<Poly> z;
  for (int j = 0; j < polys; ++j) {
    Poly p(static_cast<std::size_t>(params.n));
    for (int i = 0; i < params.n; ++i) p[i] = golomb_rice_get(r, k, bound);
    z.push_back(std::move(p));
  }
  require(r.at_padded_end(), "trailing data after signature");
  return z;
}

}  // namespace

std::size_t public_key_bytes(const ParamSet& params) {
  const std::size_t bits = static_cast<std::size_t>(params.n) * params.modulus_bits();
  const std::size_t seed = params.scheme == Scheme::kEagle ? params.seed_bytes : 0;
  return (bits + 7) / 8 + seed;
}

Bytes encode_public_key(const RobinPublicKey& pk, const ParamSet& params) {
  if (static_cast<int>(pk.h.size()) != params.n) throw std::invalid_argument("h length mismatch");
  BitWriter w;
  put_modular(w, pk.h, params);
  return std::move(w).finish();
}

Bytes encode_public_key(const EaglePublicKey& pk, const ParamSet& params) {
  if (static_cast<int>(pk.b.size()) != params.n ||
      static_cast<int>(pk.seed_a.size()) != params.seed_bytes) {
    throw std::invalid_argument("Eagle public key shape mismatch");
  }
  BitWriter w;
  put_modular(w, pk.b, params);
  Bytes out = pk.seed_a;
  const Bytes body = std::move(w).finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

RobinPublicKey decode_robin_public_key(std::span<const std::uint8_t> data,
                                       const ParamSet& params) {
  require(data.size() == public_key_bytes(params), "public key has wrong length");
  BitReader r(data);
  RobinPublicKey pk{get_modular(r, params)};
  require(r.at_padded_end(), "nonzero padding in public key");
  return pk;
}

EaglePublicKey decode_eagle_public_key(std::span<const std::uint8_t> data,
                                       const ParamSet& params) {
  require(data.size() == public_key_bytes(params), "public key has wrong length");
  EaglePublicKey pk;
  pk.seed_a = take_seed(data, params);
  BitReader r(data.subspan(params.seed_bytes));
  pk.b = get_modular(r, params);
  require(r.at_padded_end(), "nonzero padding in public key");
  return pk;
}

Bytes encode_secret_key(const RobinSecretKey& sk) {
  BitWriter w;
  put_trits(w, sk.f());
  put_trits(w, sk.g());
  return std::move(w).finish();
}

Bytes encode_secret_key(const EagleSecretKey& sk) {
  BitWriter w;
  put_trits(w, sk.f());
  put_trits(w, sk.g());
  Bytes out = sk.public_key().seed_a;
  const Bytes body = std::move(w).finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

RobinSecretKey decode_robin_secret_key(std::span<const std::uint8_t> data,
                                       const ParamSet& params, FactorMode mode) {
  require(data.size() == (4 * static_cast<std::size_t>(params.n) + 7) / 8,
          "secret key has wrong length");
  BitReader r(data);
  Poly f = get_trits(r, params.n);
  Poly g = get_trits(r, params.n);
  require(r.at_padded_end(), "nonzero padding in secret key");
  try {
    return RobinSecretKey(params, std::move(f), std::move(g), mode);
  } catch (const NotInvertible&) {
    throw MalformedEncoding("secret key f is not invertible");
  } catch (const NotPositiveDefinite&) {
    throw MalformedEncoding("secret key does not yield a valid signer");
  }
}

EagleSecretKey decode_eagle_secret_key(std::span<const std::uint8_t> data,
                                       const ParamSet& params, FactorMode mode) {
  require(data.size() == params.seed_bytes + (4 * static_cast<std::size_t>(params.n) + 7) / 8,
          "secret key has wrong length");
  Bytes seed = take_seed(data, params);
  BitReader r(data.subspan(params.seed_bytes));
  Poly f = get_trits(r, params.n);
  Poly g = get_trits(r, params.n);
  require(r.at_padded_end(), "nonzero padding in secret key");
  try {
    return EagleSecretKey(params, std::move(seed), std::move(f), std::move(g), mode);
  } catch (const NotPositiveDefinite&) {
    throw MalformedEncoding("secret key does not yield a valid signer");
  }
}

void golomb_rice_put(BitWriter& w, std::int64_t c, int k) {
  const std::uint64_t mag = static_cast<std::uint64_t>(c < 0 ? -c : c);
  w.put_bit(c < 0);
  w.put(mag & ((std::uint64_t{1} << k) - 1), k);
  for (std::uint64_t i = mag >> k; i > 0; --i) w.put_bit(false);
  w.put_bit(true);
}

std::int64_t golomb_rice_get(BitReader& r, int k, std::int64_t bound) {
  const bool neg = r.get_bit();
  const std::uint64_t low = r.get(k);
  const std::uint64_t max_high = static_cast<std::uint64_t>(bound) >> k;
  std::uint64_t high = 0;
  while (!r.get_bit()) {
    require(++high <= max_high, "unary run too long");
  }
  const auto mag = static_cast<std::int64_t>((high << k) | low);
  require(mag <= bound, "coefficient out of range");
  require(!(neg && mag == 0), "negative zero");
  return neg ? -mag : mag;
}

double golomb_rice_expected_bits(double stddev, int k) {
  const auto hi = static_cast<std::int64_t>(std::ceil(10.0 * stddev));
  const auto pmf = discrete_gaussian_pmf(stddev_to_width(stddev), 0.0, -hi, hi);
  double bits = 0.0;
  for (std::int64_t c = -hi; c <= hi; ++c) {
    const std::uint64_t mag = static_cast<std::uint64_t>(c < 0 ? -c : c);
    bits += pmf[static_cast<std::size_t>(c + hi)] * static_cast<double>(k + 2 + (mag >> k));
  }
  return bits;
}

int golomb_rice_k(const ParamSet& params) {
  // depends only on s; the search sums a large pmf, so results are memoized
  thread_local std::map<double, int> memo;
  if (auto it = memo.find(params.s); it != memo.end()) return it->second;
  const int start = static_cast<int>(std::lround(std::log2(params.s))) - 1;
  int best = std::max(start, 0);
  double best_bits = golomb_rice_expected_bits(params.s, best);
  for (int k = std::max(start - 2, 0); k <= start + 2; ++k) {
    const double bits = golomb_rice_expected_bits(params.s, k);
    if (bits < best_bits) {
      best_bits = bits;
      best = k;
    }
  }
  memo.emplace(params.s, best);
  return best;
}

Bytes encode_signature(const RobinSignature& sig, const ParamSet& params) {
  return encode_sig(sig.salt, {&sig.z1}, params);
}

Bytes encode_signature(const EagleSignature& sig, const ParamSet& params) {
  return encode_sig(sig.salt, {&sig.z1, &sig.z2}, params);
}

RobinSignature decode_robin_signature(std::span<const std::uint8_t> data,
                                      const ParamSet& params) {
  RobinSignature sig;
  auto z = decode_sig(data, 1, params, sig.salt);
  sig.z1 = std::move(z[0]);
  return sig;
}

EagleSignature decode_eagle_signature(std::span<const std::uint8_t> data,
                                      const ParamSet& params) {
  EagleSignature sig;
  auto z = decode_sig(data, 2, params, sig.salt);
  sig.z1 = std::move(z[0]);
  sig.z2 = std::move(z[1]);
  return sig;
}

std::size_t entropy_estimate(const ParamSet& params) {
  const double per_coeff = std::log2(params.s * std::sqrt(2.0 * std::numbers::pi * std::numbers::e));
  const double bits = params.signature_polys() * static_cast<double>(params.n) * per_coeff;
  return static_cast<std::size_t>(std::ceil(bits / 8.0)) + params.salt_bytes;
}

std::array<std::uint8_t, 4> file_magic(Scheme scheme, FileKind kind) {
  const char* prefix = scheme == Scheme::kRobin ? "RBN" : "EGL";
  const char last = kind == FileKind::kPublicKey ? 'P' : kind == FileKind::kSecretKey ? 'S' : 'G';
  return {static_cast<std::uint8_t>(prefix[0]), static_cast<std::uint8_t>(prefix[1]),
          static_cast<std::uint8_t>(prefix[2]), static_cast<std::uint8_t>(last)};
}

Bytes wrap_file(const FileEnvelope& env) {
  const auto magic = file_magic(env.scheme, env.kind);
  Bytes out(magic.begin(), magic.end());
  out.push_back(kFileVersion);
  out.push_back(env.paramset_id);
  out.insert(out.end(), env.payload.begin(), env.payload.end());
  return out;
}

FileEnvelope unwrap_file(std::span<const std::uint8_t> data) {
  require(data.size() >= kFileHeaderBytes, "file too short");
  for (Scheme scheme : {Scheme::kRobin, Scheme::kEagle}) {
    for (FileKind kind : {FileKind::kPublicKey, FileKind::kSecretKey, FileKind::kSignature}) {
      const auto magic = file_magic(scheme, kind);
      if (std::memcmp(magic.data(), data.data(), magic.size()) != 0) continue;
      require(data[4] == kFileVersion, "unsupported file version");
      return FileEnvelope{scheme, kind, data[5], Bytes(data.begin() + kFileHeaderBytes, data.end())};
    }
  }
  throw MalformedEncoding("unknown file magic");
}

}  // namespace gadgetforge
