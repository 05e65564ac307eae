// gadgetforge: key generation, signing, verification, statistical self-test
// and benchmarks for the Robin and Eagle signature schemes.
//
// Exit codes: 0 accept/success, 1 reject/check failed, 2 malformed input,
// 3 usage, configuration or I/O error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gadgetforge/codec.hpp"
#include "gadgetforge/eagle.hpp"
#include "gadgetforge/errors.hpp"
#include "gadgetforge/params.hpp"
#include "gadgetforge/robin.hpp"
#include "gadgetforge/stattest.hpp"
#include "json.hpp"

namespace gf = gadgetforge;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitConfig = 3;
constexpr int kReportSchema = 1;

struct Options {
  std::string scheme;
  std::string paramset;
  std::string in;
  std::string out;
  std::string key;
  std::string sig;
  std::string seed;
  int trials = 0;
  bool json = false;
  double debug_s_scale = 1.0;
};

gf::Bytes read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw gf::ConfigError("cannot open '" + path + "'");
  return gf::Bytes(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const gf::Bytes& data) {
  std::ofstream f(path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!f) throw gf::ConfigError("cannot write '" + path + "'");
}

gf::Bytes parse_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw gf::ConfigError("--seed must have an even number of hex digits");
  gf::Bytes out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(hex.substr(i, 2), &used, 16);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != 2) throw gf::ConfigError("--seed is not valid hex");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

gf::Rng make_rng(const Options& o) {
  return o.seed.empty() ? gf::Rng::from_os() : gf::Rng::from_bytes(parse_hex(o.seed));
}

// Resolves --paramset and checks it against --scheme when both are given.
const gf::ParamSet& select_params(const gf::ParamRegistry& reg, const Options& o) {
  if (o.paramset.empty()) throw gf::ConfigError("--paramset is required");
  const gf::ParamSet& ps = reg.find(o.paramset);
  if (!o.scheme.empty() && gf::parse_scheme(o.scheme) != ps.scheme) {
    throw gf::ConfigError("parameter set '" + ps.name + "' does not belong to scheme '" +
                          o.scheme + "'");
  }
  return ps;
}

// Loads a key or signature file and resolves its parameter set from the header.
struct Loaded {
  gf::FileEnvelope env;
  const gf::ParamSet* params;
};

Loaded load(const gf::ParamRegistry& reg, const Options& o, const std::string& path,
            gf::FileKind kind) {
  Loaded l{gf::unwrap_file(read_file(path)), nullptr};
  if (l.env.kind != kind) throw gf::MalformedEncoding("'" + path + "' has the wrong file type");
  l.params = &reg.find(l.env.paramset_id);
  if (l.params->scheme != l.env.scheme) {
    throw gf::MalformedEncoding("'" + path + "' names a parameter set of another scheme");
  }
  if (!o.paramset.empty() && o.paramset != l.params->name) {
    throw gf::ConfigError("'" + path + "' was made for " + l.params->name);
  }
  if (!o.scheme.empty() && gf::parse_scheme(o.scheme) != l.env.scheme) {
    throw gf::ConfigError("'" + path + "' belongs to the other scheme");
  }
  return l;
}

std::string extension(gf::Scheme s, gf::FileKind k) {
  const char* prefix = s == gf::Scheme::kRobin ? ".r" : ".e";
  const char* suffix = k == gf::FileKind::kPublicKey ? "pk" : k == gf::FileKind::kSecretKey ? "sk" : "sig";
  return std::string(prefix) + suffix;
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int cmd_keygen(const gf::ParamRegistry& reg, const Options& o) {
  const gf::ParamSet& ps = select_params(reg, o);
  if (o.out.empty()) throw gf::ConfigError("--out (output path prefix) is required");
  gf::Rng rng = make_rng(o);
  gf::Bytes pk, sk;
  gf::KeygenStats stats;
  if (ps.scheme == gf::Scheme::kRobin) {
    const auto kp = gf::robin_keygen(ps, rng);
    pk = gf::encode_public_key(kp.pk, ps);
    sk = gf::encode_secret_key(kp.sk);
    stats = kp.stats;
  } else {
    const auto kp = gf::eagle_keygen(ps, rng);
    pk = gf::encode_public_key(kp.pk, ps);
    sk = gf::encode_secret_key(kp.sk);
    stats = kp.stats;
  }
  const std::string pk_path = o.out + extension(ps.scheme, gf::FileKind::kPublicKey);
  const std::string sk_path = o.out + extension(ps.scheme, gf::FileKind::kSecretKey);
  const gf::Bytes pk_file = gf::wrap_file({ps.scheme, gf::FileKind::kPublicKey, ps.id, pk});
  write_file(pk_path, pk_file);
  write_file(sk_path, gf::wrap_file({ps.scheme, gf::FileKind::kSecretKey, ps.id, sk}));

  json j = {{"paramset", ps.name},         {"scheme", gf::scheme_name(ps.scheme)},
            {"public_key", pk_path},       {"secret_key", sk_path},
            {"public_key_bytes", pk.size()}, {"public_key_file_bytes", pk_file.size()},
            {"quality", stats.quality},    {"quality_bound", ps.quality_bound()},
            {"galois_k", stats.galois_k},  {"restarts", stats.restarts},
            {"pairs_tried", stats.pairs_tried}};
  char text[512];
  std::snprintf(text, sizeof text,
                "%s: quality %.3f (bound %.3f), galois k %lld, %d restarts\n"
                "public key  %s (%zu bytes + %zu header)\nsecret key  %s\n",
                ps.name.c_str(), stats.quality, ps.quality_bound(),
                static_cast<long long>(stats.galois_k), stats.restarts, pk_path.c_str(),
                pk.size(), gf::kFileHeaderBytes, sk_path.c_str());
  emit(o, j, text);
  return kExitOk;
}

int cmd_sign(const gf::ParamRegistry& reg, const Options& o) {
  if (o.key.empty() || o.in.empty() || o.out.empty()) {
    throw gf::ConfigError("sign requires --key, --in and --out");
  }
  const Loaded sk = load(reg, o, o.key, gf::FileKind::kSecretKey);
  const gf::ParamSet& ps = *sk.params;
  const gf::Bytes msg = read_file(o.in);
  gf::Rng rng = make_rng(o);
  int attempts = 0;
  const gf::AttemptObserver count = [&](const gf::SignAttempt&) { ++attempts; };
  gf::Bytes sig;
  if (ps.scheme == gf::Scheme::kRobin) {
    const auto key = gf::decode_robin_secret_key(sk.env.payload, ps);
    sig = gf::encode_signature(gf::robin_sign(msg, key, rng, count), ps);
  } else {
    const auto key = gf::decode_eagle_secret_key(sk.env.payload, ps);
    sig = gf::encode_signature(gf::eagle_sign(msg, key, rng, count), ps);
  }
  write_file(o.out, gf::wrap_file({ps.scheme, gf::FileKind::kSignature, ps.id, sig}));
  json j = {{"paramset", ps.name}, {"signature", o.out}, {"signature_bytes", sig.size()},
            {"attempts", attempts}};
  emit(o, j,
       ps.name + ": wrote " + o.out + " (" + std::to_string(sig.size()) + " bytes, " +
           std::to_string(attempts) + " attempt(s))\n");
  return kExitOk;
}

int cmd_verify(const gf::ParamRegistry& reg, const Options& o) {
  if (o.key.empty() || o.in.empty() || o.sig.empty()) {
    throw gf::ConfigError("verify requires --key, --in and --sig");
  }
  const gf::Bytes msg = read_file(o.in);
  const Loaded pk = load(reg, o, o.key, gf::FileKind::kPublicKey);
  const Loaded sg = load(reg, o, o.sig, gf::FileKind::kSignature);
  if (pk.params != sg.params) {
    throw gf::MalformedEncoding("signature and public key use different parameter sets");
  }
  const gf::ParamSet& ps = *pk.params;
  bool ok = false;
  if (ps.scheme == gf::Scheme::kRobin) {
    ok = gf::robin_verify(msg, gf::decode_robin_signature(sg.env.payload, ps),
                          gf::decode_robin_public_key(pk.env.payload, ps), ps);
  } else {
    ok = gf::eagle_verify(msg, gf::decode_eagle_signature(sg.env.payload, ps),
                          gf::decode_eagle_public_key(pk.env.payload, ps), ps);
  }
  emit(o, json{{"paramset", ps.name}, {"result", ok ? "accept" : "reject"}},
       ok ? "accept\n" : "reject\n");
  return ok ? kExitOk : kExitReject;
}

int cmd_stattest(const gf::ParamRegistry& reg, const Options& o) {
  const gf::ParamSet& ps = select_params(reg, o);
  const int trials = o.trials == 0 ? 100000 : o.trials;
  if (trials < 10000) throw gf::ConfigError("stattest needs --trials >= 10000");
  if (!(o.debug_s_scale > 0.0)) throw gf::ConfigError("--debug-s-scale must be positive");
  gf::Rng rng = make_rng(o);
  const auto t0 = std::chrono::steady_clock::now();
  const gf::SimulatabilityReport rep = gf::run_simulatability(ps, trials, rng, o.debug_s_scale);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json checks = json::array();
  std::string text = ps.name + ": " + std::to_string(rep.signatures) + " signatures, " +
                     std::to_string(rep.attempts) + " presamp runs\n";
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
    char line[256];
    std::snprintf(line, sizeof line, "  %-17s %s  value %.6g  threshold %.6g  (%s)\n",
                  c.name.c_str(), c.pass ? "PASS" : "FAIL", c.value, c.threshold,
                  c.detail.c_str());
    text += line;
  }
  json j = {{"schema_version", kReportSchema},
            {"paramset", ps.name},
            {"scheme", rep.scheme},
            {"trials", trials},
            {"signatures", rep.signatures},
            {"attempts", rep.attempts},
            {"reference_variance", rep.reference_variance},
            {"reference_scale", o.debug_s_scale},
            {"seconds", secs},
            {"checks", checks},
            {"pass", rep.all_pass()}};
  emit(o, j, text + (rep.all_pass() ? "all checks passed\n" : "some checks FAILED\n"));
  return rep.all_pass() ? kExitOk : kExitReject;
}

int cmd_bench(const gf::ParamRegistry& reg, const Options& o) {
  const gf::ParamSet& ps = select_params(reg, o);
  const int trials = o.trials == 0 ? 1000 : o.trials;
  if (trials < 1) throw gf::ConfigError("--trials must be positive");
  gf::Rng rng = make_rng(o);
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point a) {
    return std::chrono::duration<double>(clock::now() - a).count();
  };
  double keygen_s = 0, sign_s = 0, verify_s = 0;
  int accepted = 0;
  auto run = [&](auto keygen, auto sign, auto verify) {
    auto t = clock::now();
    const auto kp = keygen();
    keygen_s = seconds(t);
    std::vector<decltype(sign(kp, gf::Bytes{}))> sigs;
    sigs.reserve(trials);
    t = clock::now();
    for (int i = 0; i < trials; ++i) sigs.push_back(sign(kp, gf::Bytes{static_cast<std::uint8_t>(i)}));
    sign_s = seconds(t);
    t = clock::now();
    for (int i = 0; i < trials; ++i) {
      accepted += verify(kp, gf::Bytes{static_cast<std::uint8_t>(i)}, sigs[i]) ? 1 : 0;
    }
    verify_s = seconds(t);
  };
  if (ps.scheme == gf::Scheme::kRobin) {
    run([&] { return gf::robin_keygen(ps, rng); },
        [&](const gf::RobinKeyPair& kp, const gf::Bytes& m) { return gf::robin_sign(m, kp.sk, rng); },
        [&](const gf::RobinKeyPair& kp, const gf::Bytes& m, const gf::RobinSignature& s) {
          return gf::robin_verify(m, s, kp.pk, ps);
        });
  } else {
    run([&] { return gf::eagle_keygen(ps, rng); },
        [&](const gf::EagleKeyPair& kp, const gf::Bytes& m) { return gf::eagle_sign(m, kp.sk, rng); },
        [&](const gf::EagleKeyPair& kp, const gf::Bytes& m, const gf::EagleSignature& s) {
          return gf::eagle_verify(m, s, kp.pk, ps);
        });
  }
  json j = {{"paramset", ps.name},
            {"trials", trials},
            {"keygen_seconds", keygen_s},
            {"sign_per_second", trials / sign_s},
            {"verify_per_second", trials / verify_s},
            {"accepted", accepted}};
  char text[256];
  std::snprintf(text, sizeof text, "%s: keygen %.3f s, sign %.1f/s, verify %.1f/s (%d/%d accepted)\n",
                ps.name.c_str(), keygen_s, trials / sign_s, trials / verify_s, accepted, trials);
  emit(o, j, text);
  return accepted == trials ? kExitOk : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact-gadget hash-and-sign signatures (Robin, Eagle)"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "robin or eagle")->check(CLI::IsMember({"robin", "eagle"}));
    sub->add_option("--paramset", o.paramset, "parameter set name, e.g. robin-701");
    sub->add_option("--seed", o.seed, "hex seed for deterministic runs");
    sub->add_flag("--json", o.json, "print a JSON report");
  };
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  common(keygen);
  keygen->add_option("--out", o.out, "output prefix; writes <out>.rpk/.rsk or <out>.epk/.esk");
  auto* sign = app.add_subcommand("sign", "sign a message file");
  common(sign);
  sign->add_option("--key", o.key, "secret key file");
  sign->add_option("--in", o.in, "message file");
  sign->add_option("--out", o.out, "signature file to write");
  auto* verify = app.add_subcommand("verify", "verify a signature (exit 0 accept, 1 reject)");
  common(verify);
  verify->add_option("--key", o.key, "public key file");
  verify->add_option("--in", o.in, "message file");
  verify->add_option("--sig", o.sig, "signature file");
  auto* stattest = app.add_subcommand("stattest", "compare signing statistics with the simulator");
  common(stattest);
  stattest->add_option("--trials", o.trials, "signatures to produce (>= 10000, default 100000)");
  stattest->add_option("--debug-s-scale", o.debug_s_scale,
                       "scale the reference deviation (negative control)");
  auto* bench = app.add_subcommand("bench", "time keygen, sign and verify");
  common(bench);
  bench->add_option("--trials", o.trials, "signatures to time (default 1000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const gf::ParamRegistry reg = gf::ParamRegistry::from_environment();
    if (*keygen) return cmd_keygen(reg, o);
    if (*sign) return cmd_sign(reg, o);
    if (*verify) return cmd_verify(reg, o);
    if (*stattest) return cmd_stattest(reg, o);
    if (*bench) return cmd_bench(reg, o);
  } catch (const gf::MalformedEncoding& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const gf::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
