#include "gadgetforge/stattest.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

#include "gadgetforge/eagle.hpp"
#include "gadgetforge/robin.hpp"

namespace gadgetforge {

double chi_square_pvalue(double stat, double df) {
  if (stat <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, stat / 2.0);
}

double chi_square_statistic(std::span<const std::uint64_t> counts,
                            std::span<const double> probs) {
  if (counts.size() != probs.size()) throw std::invalid_argument("chi-square: size mismatch");
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = total * probs[i];
    const double d = static_cast<double>(counts[i]) - expected;
    stat += d * d / expected;
  }
  return stat;
}

MomentAccumulator::MomentAccumulator(int dim, std::vector<std::pair<int, int>> pairs)
    : sum_(dim, 0.0), sumsq_(dim, 0.0), pairs_(std::move(pairs)), cross_(pairs_.size(), 0.0) {
  for (const auto& [i, j] : pairs_) {
    if (i < 0 || j < 0 || i >= dim || j >= dim) {
      throw std::invalid_argument("MomentAccumulator: pair out of range");
    }
  }
}

void MomentAccumulator::add(std::span<const std::int64_t> x) {
  if (x.size() != sum_.size()) throw std::invalid_argument("MomentAccumulator: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto v = static_cast<double>(x[i]);
    sum_[i] += v;
    sumsq_[i] += v * v;
  }
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    cross_[k] += static_cast<double>(x[pairs_[k].first]) * static_cast<double>(x[pairs_[k].second]);
  }
  ++count_;
}

double MomentAccumulator::mean(int i) const { return sum_[i] / static_cast<double>(count_); }

double MomentAccumulator::variance(int i) const {
  const double m = mean(i);
  return sumsq_[i] / static_cast<double>(count_) - m * m;
}

double MomentAccumulator::correlation(std::size_t k) const {
  const auto [i, j] = pairs_[k];
  const double cov = cross_[k] / static_cast<double>(count_) - mean(i) * mean(j);
  return cov / std::sqrt(variance(i) * variance(j));
}

bool SimulatabilityReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return !checks.empty();
}

const CheckResult& SimulatabilityReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no check named " + name);
}

std::vector<std::pair<int, int>> correlation_pairs(const ParamSet& params) {
  const int n = params.n;
  std::vector<std::pair<int, int>> pairs = {
      {0, 1}, {0, n - 1}, {n / 2, n / 2 + 1}, {0, n}, {1, n + 1}, {n / 3, n + n / 3 + 7}};
  if (params.blocks() == 3) {
    pairs.push_back({0, 2 * n});
    pairs.push_back({n, 2 * n});
    pairs.push_back({n + 5, 2 * n + 5});
  }
  return pairs;
}

SimulatabilityCollector::SimulatabilityCollector(const ParamSet& params, double reference_scale)
    : params_(params),
      reference_scale_(reference_scale),
      moments_(params.m(), correlation_pairs(params)),
      e_counts_(static_cast<std::size_t>(params.p), 0) {}

void SimulatabilityCollector::observe(const SignAttempt& attempt) {
  ++attempts_;
  moments_.add(attempt.preimage.x);
  const std::int64_t half = params_.p / 2;
  for (auto e : attempt.preimage.e) ++e_counts_[static_cast<std::size_t>(e + half)];
}

AttemptObserver SimulatabilityCollector::observer() {
  return [this](const SignAttempt& a) { observe(a); };
}

SimulatabilityReport SimulatabilityCollector::report() const {
  SimulatabilityReport rep;
  rep.paramset = params_.name;
  rep.scheme = std::string(scheme_name(params_.scheme));
  rep.signatures = signatures_;
  rep.attempts = attempts_;
  const double sd = params_.s * reference_scale_;
  rep.reference_variance = sd * sd;
  const auto N = static_cast<double>(moments_.count());
  const int m = moments_.dim();

  double worst_var = 0.0, worst_mean = 0.0;
  int worst_var_i = 0, worst_mean_i = 0;
  for (int i = 0; i < m; ++i) {
    const double rel = std::abs(moments_.variance(i) / rep.reference_variance - 1.0);
    if (rel > worst_var) {
      worst_var = rel;
      worst_var_i = i;
    }
    const double z = std::abs(moments_.mean(i)) / std::sqrt(moments_.variance(i) / N);
    if (z > worst_mean) {
      worst_mean = z;
      worst_mean_i = i;
    }
  }
  rep.checks.push_back({"variance", worst_var <= 0.03, worst_var, 0.03,
                        "max relative deviation at coordinate " + std::to_string(worst_var_i)});
  rep.checks.push_back({"mean", worst_mean <= 4.0, worst_mean, 4.0,
                        "max |mean| / standard error at coordinate " +
                            std::to_string(worst_mean_i)});

  const std::vector<double> uniform(e_counts_.size(), 1.0 / static_cast<double>(e_counts_.size()));
  const double chi2 = chi_square_statistic(e_counts_, uniform);
  const double pval = chi_square_pvalue(chi2, static_cast<double>(e_counts_.size() - 1));
  rep.checks.push_back({"error_uniformity", pval > 1e-3, pval, 1e-3,
                        "chi-square " + std::to_string(chi2) + " over Z_p, value is the p-value"});

  double worst_corr = 0.0;
  for (std::size_t k = 0; k < moments_.pairs().size(); ++k) {
    worst_corr = std::max(worst_corr, std::abs(moments_.correlation(k)));
  }
  const double corr_bound = 4.0 / std::sqrt(N);
  rep.checks.push_back({"correlation", worst_corr < corr_bound, worst_corr, corr_bound,
                        std::to_string(moments_.pairs().size()) + " fixed pairs"});

  const double restart = attempts_ == 0 ? 0.0
                                        : static_cast<double>(attempts_ - signatures_) /
                                              static_cast<double>(attempts_);
  rep.checks.push_back({"restart_rate", restart >= 0.002 && restart <= 0.03, restart, 0.03,
                        "accepted range [0.002, 0.03]"});
  return rep;
}

SimulatabilityReport run_simulatability(const ParamSet& params, int trials, Rng& rng,
                                        double reference_scale) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  SimulatabilityCollector collector(params, reference_scale);
  Rng keyrng = rng.derive(0);
  const auto observer = collector.observer();
  auto run = [&](const auto& sign_one) {
    for (int i = 0; i < trials; ++i) {
      Rng trial = rng.derive(static_cast<std::uint64_t>(i) + 1);
      Bytes msg(8);
      for (int b = 0; b < 8; ++b) msg[b] = static_cast<std::uint8_t>(static_cast<std::uint64_t>(i) >> (8 * b));
      sign_one(msg, trial);
      collector.add_signature();
    }
  };
  if (params.scheme == Scheme::kRobin) {
    const auto kp = robin_keygen(params, keyrng);
    run([&](const Bytes& msg, Rng& r) { (void)robin_sign(msg, kp.sk, r, observer); });
  } else {
    const auto kp = eagle_keygen(params, keyrng);
    run([&](const Bytes& msg, Rng& r) { (void)eagle_sign(msg, kp.sk, r, observer); });
  }
  return collector.report();
}

}  // namespace gadgetforge
