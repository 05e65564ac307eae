#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <string>

#include "gadgetforge/codec.hpp"
#include "gadgetforge/eagle.hpp"
#include "gadgetforge/gadget.hpp"
#include "gadgetforge/robin.hpp"

namespace gf = gadgetforge;

namespace {

const char* kSets[] = {"robin-701", "robin-1061", "robin-1279", "eagle-512", "eagle-1024"};

gf::Rng bench_rng(std::uint8_t tag) {
  gf::Seed s{};
  s[0] = 0xBE;
  s[1] = tag;
  return gf::Rng(s);
}

const gf::ParamSet& params(int index) {
  static const gf::ParamRegistry reg = gf::ParamRegistry::builtin();
  return reg.find(kSets[index]);
}

// Keys are generated once per set and shared by the signing benchmarks.
struct Keys {
  std::unique_ptr<gf::RobinKeyPair> robin;
  std::unique_ptr<gf::EagleKeyPair> eagle;
};

const Keys& keys(int index) {
  static std::map<int, Keys> cache;
  auto it = cache.find(index);
  if (it != cache.end()) return it->second;
  const auto& ps = params(index);
  auto rng = bench_rng(static_cast<std::uint8_t>(index));
  Keys k;
  if (ps.scheme == gf::Scheme::kRobin) {
    k.robin = std::make_unique<gf::RobinKeyPair>(gf::robin_keygen(ps, rng));
  } else {
    k.eagle = std::make_unique<gf::EagleKeyPair>(gf::eagle_keygen(ps, rng));
  }
  return cache.emplace(index, std::move(k)).first->second;
}

gf::Bytes message(std::uint64_t i) {
  gf::Bytes m(8);
  for (int b = 0; b < 8; ++b) m[b] = static_cast<std::uint8_t>(i >> (8 * b));
  return m;
}

gf::Poly random_poly(const gf::ParamSet& ps, std::int64_t bound, gf::Rng& rng) {
  gf::Poly a(static_cast<std::size_t>(ps.n));
  for (auto& c : a.coeffs) c = static_cast<std::int64_t>(rng.below(2 * bound + 1)) - bound;
  return a;
}

void BM_RingMul(benchmark::State& state) {
  const auto& ps = params(static_cast<int>(state.range(0)));
  const gf::Ring ring = ps.ring();
  auto rng = bench_rng(20);
  const auto a = random_poly(ps, ps.Q / 2, rng), b = random_poly(ps, 4 * static_cast<std::int64_t>(ps.s), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ring.mul(a, b));
  state.SetLabel(ps.name);
}

void BM_Spectrum(benchmark::State& state) {
  const auto& ps = params(static_cast<int>(state.range(0)));
  const gf::Ring ring = ps.ring();
  auto rng = bench_rng(21);
  const auto a = random_poly(ps, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ring.spectrum(a));
  state.SetLabel(ps.name);
}

void BM_GadgetSample(benchmark::State& state) {
  const auto& ps = params(static_cast<int>(state.range(0)));
  const gf::CompactGadget gadget({ps.p, ps.q, ps.Q, ps.gadget_width()});
  auto rng = bench_rng(22);
  const auto u = random_poly(ps, ps.Q / 2 - 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(gf::gadget_sample(u.coeffs, gadget, rng));
  state.SetLabel(ps.name);
}

void BM_Perturbation(benchmark::State& state) {
  const int index = static_cast<int>(state.range(0));
  const auto& k = keys(index);
  const auto& signer = k.robin ? k.robin->sk.signer() : k.eagle->sk.signer();
  auto rng = bench_rng(23);
  for (auto _ : state) benchmark::DoNotOptimize(signer.perturbation().sample(rng));
  state.SetLabel(params(index).name);
}

void BM_Keygen(benchmark::State& state) {
  const auto& ps = params(static_cast<int>(state.range(0)));
  auto rng = bench_rng(24);
  for (auto _ : state) {
    if (ps.scheme == gf::Scheme::kRobin) {
      benchmark::DoNotOptimize(gf::robin_keygen(ps, rng));
    } else {
      benchmark::DoNotOptimize(gf::eagle_keygen(ps, rng));
    }
  }
  state.SetLabel(ps.name);
}

void BM_Sign(benchmark::State& state) {
  const int index = static_cast<int>(state.range(0));
  const auto& k = keys(index);
  auto rng = bench_rng(25);
  std::uint64_t i = 0;
  for (auto _ : state) {
    const auto msg = message(i++);
    if (k.robin) {
      benchmark::DoNotOptimize(gf::robin_sign(msg, k.robin->sk, rng));
    } else {
      benchmark::DoNotOptimize(gf::eagle_sign(msg, k.eagle->sk, rng));
    }
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(params(index).name);
}

void BM_Verify(benchmark::State& state) {
  const int index = static_cast<int>(state.range(0));
  const auto& ps = params(index);
  const auto& k = keys(index);
  auto rng = bench_rng(26);
  const auto msg = message(0);
  if (k.robin) {
    const auto sig = gf::robin_sign(msg, k.robin->sk, rng);
    for (auto _ : state) benchmark::DoNotOptimize(gf::robin_verify(msg, sig, k.robin->pk, ps));
  } else {
    const auto sig = gf::eagle_sign(msg, k.eagle->sk, rng);
    for (auto _ : state) benchmark::DoNotOptimize(gf::eagle_verify(msg, sig, k.eagle->pk, ps));
  }
  state.SetItemsProcessed(state.iterations());
  state.SetLabel(ps.name);
}

void BM_SignatureCodec(benchmark::State& state) {
  const int index = static_cast<int>(state.range(0));
  const auto& ps = params(index);
  const auto& k = keys(index);
  auto rng = bench_rng(27);
  if (k.robin) {
    const auto sig = gf::robin_sign(message(0), k.robin->sk, rng);
    for (auto _ : state) {
      benchmark::DoNotOptimize(gf::decode_robin_signature(gf::encode_signature(sig, ps), ps));
    }
  } else {
    const auto sig = gf::eagle_sign(message(0), k.eagle->sk, rng);
    for (auto _ : state) {
      benchmark::DoNotOptimize(gf::decode_eagle_signature(gf::encode_signature(sig, ps), ps));
    }
  }
  state.SetLabel(ps.name);
}

}  // namespace

BENCHMARK(BM_RingMul)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Spectrum)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GadgetSample)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Perturbation)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Keygen)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->Iterations(5);
BENCHMARK(BM_Sign)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Verify)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SignatureCodec)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
