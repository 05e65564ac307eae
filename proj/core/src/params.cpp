#include "gadgetforge/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gadgetforge/errors.hpp"

namespace gadgetforge {

std::string_view scheme_name(Scheme s) {
  return s == Scheme::kRobin ? "robin" : "eagle";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "robin") return Scheme::kRobin;
  if (name == "eagle") return Scheme::kEagle;
  throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

void ParamSet::validate() const {
  auto fail = [&](const std::string& why) {
    throw ConfigError("parameter set '" + name + "': " + why);
  };
  if (name.empty()) fail("empty name");
  if (n < 2) fail("n must be >= 2");
  if (p < 2 || q < 1 || p * q != Q) fail("requires Q = p * q");
  if (a < 0 || b < 0 || a + b > n) fail("invalid ternary weights");
  if (!(alpha > 0) || !(r > 0) || !(s > 0) || !(beta > 0)) fail("alpha, r, s, beta must be positive");
  if (K < 1) fail("K must be positive");
  if (salt_bytes < 1 || seed_bytes < 1) fail("salt and seed lengths must be positive");
  if (max_restarts < 0) fail("max_restarts must be non-negative");
  try {
    (void)ring();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

RingKind ParamSet::ring_kind() const {
  return scheme == Scheme::kRobin ? RingKind::kConvolution : RingKind::kCyclotomic;
}

Ring ParamSet::ring() const { return Ring(n, ring_kind(), Q); }

double ParamSet::gamma() const {
  const double pd = static_cast<double>(p);
  return std::sqrt(s * s + (pd * pd - 1.0) / 12.0) / s;
}

double ParamSet::beta_formula() const {
  const double pd = static_cast<double>(p);
  return 1.04 * std::sqrt(blocks() * static_cast<double>(n) * (s * s + (pd * pd - 1.0) / 12.0));
}

double ParamSet::s_lower_bound() const {
  const double qd = static_cast<double>(q);
  return std::sqrt(1.0 + qd * qd) / qd * r * quality_bound();
}

double ParamSet::quality_bound() const { return alpha * std::sqrt(2.0 * (a + b)); }

std::int64_t ParamSet::coeff_bound() const {
  return static_cast<std::int64_t>(std::ceil(10.0 * s));
}

int ParamSet::modulus_bits() const {
  int bits = 0;
  while ((std::int64_t{1} << bits) < Q) ++bits;
  return bits;
}

namespace {

std::vector<ParamSet> builtin_sets() {
  std::vector<ParamSet> v;
  auto add = [&](std::string name, std::uint8_t id, int n, std::int64_t Q, std::int64_t p,
                   std::int64_t q, int a, int b, double alpha, double r, double s,
                   double gamma, double beta) {
    ParamSet ps;
    ps.name = std::move(name);
    ps.scheme = Scheme::kRobin;
    ps.id = id;
    ps.n = n;
    ps.Q = Q;
    ps.p = p;
    ps.q = q;
    ps.a = a;
    ps.b = b;
    ps.alpha = alpha;
    ps.r = r;
    ps.s = s;
    ps.table_gamma = gamma;
    ps.beta = beta;
    v.push_back(ps);
  };
  add("robin-701", 1, 701, 16384, 2048, 8, 176, 175, 1.65, 10.22, 449.8, 1.65, 28928.7);
  add("robin-1061", 2, 1061, 32768, 4096, 8, 266, 265, 1.7, 10.28, 573.8, 2.29, 62965.5);
  add("robin-1279", 3, 1279, 32768, 4096, 8, 320, 319, 1.75, 10.31, 650.4, 2.07, 70983.7);
  add("eagle-512", 4, 512, 16000, 2000, 8, 128, 128, 1.7, 10.17, 394.2, 1.36, 28493.5);
  add("eagle-1024", 5, 1024, 32400, 2700, 12, 256, 256, 1.7, 15.42, 841.5, 1.19, 66118.5);
  v[3].scheme = Scheme::kEagle;
  v[4].scheme = Scheme::kEagle;
  return v;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) throw ConfigError("bad numeric value for '" + key + "': " + value);
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) throw ConfigError("bad integer value for '" + key + "': " + value);
  return v;
}

void assign(ParamSet& ps, const std::string& key, const std::string& value) {
  if (key == "scheme") ps.scheme = parse_scheme(value);
  else if (key == "id") ps.id = static_cast<std::uint8_t>(parse_int(key, value));
  else if (key == "n") ps.n = static_cast<int>(parse_int(key, value));
  else if (key == "Q") ps.Q = parse_int(key, value);
  else if (key == "p") ps.p = parse_int(key, value);
  else if (key == "q") ps.q = parse_int(key, value);
  else if (key == "a") ps.a = static_cast<int>(parse_int(key, value));
  else if (key == "b") ps.b = static_cast<int>(parse_int(key, value));
  else if (key == "alpha") ps.alpha = parse_double(key, value);
  else if (key == "r") ps.r = parse_double(key, value);
  else if (key == "s") ps.s = parse_double(key, value);
  else if (key == "gamma") ps.table_gamma = parse_double(key, value);
  else if (key == "beta") ps.beta = parse_double(key, value);
  else if (key == "K") ps.K = static_cast<int>(parse_int(key, value));
  else if (key == "salt_bytes") ps.salt_bytes = static_cast<int>(parse_int(key, value));
  else if (key == "seed_bytes") ps.seed_bytes = static_cast<int>(parse_int(key, value));
  else if (key == "max_restarts") ps.max_restarts = static_cast<int>(parse_int(key, value));
  else throw ConfigError("unknown parameter key '" + key + "'");
}

}  // namespace

ParamRegistry ParamRegistry::builtin() {
  ParamRegistry reg;
  reg.sets_ = builtin_sets();
  return reg;
}

ParamRegistry ParamRegistry::from_environment() {
  ParamRegistry reg = builtin();
  if (const char* env = std::getenv("GADGETFORGE_PARAMDIR"); env && *env) {
    std::filesystem::path path(env);
    if (std::filesystem::is_directory(path)) path /= "params.conf";
    reg.apply_overrides_file(path);
  }
  return reg;
}

void ParamRegistry::apply_overrides_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameter override file " + path.string());
  apply_overrides(in);
}

void ParamRegistry::apply_overrides(std::istream& in) {
  std::string line;
  ParamSet* current = nullptr;
  std::vector<std::string> touched;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      const std::string name = trim(std::string_view(t).substr(1, t.size() - 2));
      auto it = std::find_if(sets_.begin(), sets_.end(),
                             [&](const ParamSet& ps) { return ps.name == name; });
      if (it == sets_.end()) {
        ParamSet fresh;
        fresh.name = name;
        fresh.id = 0;
        sets_.push_back(fresh);
        current = &sets_.back();
      } else {
        current = &*it;
      }
      touched.push_back(name);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || current == nullptr) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value' inside a section");
    }
    assign(*current, trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
  for (const auto& name : touched) find(name).validate();
}

const ParamSet& ParamRegistry::find(std::string_view name) const {
  for (const auto& ps : sets_) {
    if (ps.name == name) return ps;
  }
  throw ConfigError("unknown parameter set '" + std::string(name) + "'");
}

const ParamSet& ParamRegistry::find(std::uint8_t id) const {
  for (const auto& ps : sets_) {
    if (ps.id == id) return ps;
  }
  throw ConfigError("unknown parameter set id " + std::to_string(id));
}

}  // namespace gadgetforge
