#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gadgetforge/hash_sign.hpp"
#include "gadgetforge/params.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

// Upper tail P(X >= stat) of a chi-square variable with `df` degrees of freedom.
double chi_square_pvalue(double stat, double df);

// Pearson statistic of observed counts against expected probabilities.
double chi_square_statistic(std::span<const std::uint64_t> counts,
                            std::span<const double> probs);

// Per-coordinate first and second moments plus selected cross moments.
class MomentAccumulator {
 public:
  MomentAccumulator(int dim, std::vector<std::pair<int, int>> pairs = {});

  void add(std::span<const std::int64_t> x);

  std::uint64_t count() const { return count_; }
  int dim() const { return static_cast<int>(sum_.size()); }
  double mean(int i) const;
  double variance(int i) const;
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  double correlation(std::size_t pair_index) const;

 private:
  std::uint64_t count_ = 0;
  std::vector<double> sum_, sumsq_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<double> cross_;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // worst observed statistic
  double threshold = 0.0;  // pass bound on `value`
  std::string detail;
};

struct SimulatabilityReport {
  std::string paramset;
  std::string scheme;
  std::uint64_t signatures = 0;
  std::uint64_t attempts = 0;
  double reference_variance = 0.0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  const CheckResult& check(const std::string& name) const;
};

// Compares statistics of real presamp outputs against the simulator that draws
// x from D_{Z^m, s} and e uniform over Z_p. Feed it every signing attempt.
class SimulatabilityCollector {
 public:
  // `reference_scale` multiplies the reference standard deviation; values other
  // than 1 are a debugging aid that must make the variance check fail.
  explicit SimulatabilityCollector(const ParamSet& params, double reference_scale = 1.0);

  void observe(const SignAttempt& attempt);
  AttemptObserver observer();
  void add_signature() { ++signatures_; }

  const MomentAccumulator& moments() const { return moments_; }
  const std::vector<std::uint64_t>& error_histogram() const { return e_counts_; }

  SimulatabilityReport report() const;

 private:
  ParamSet params_;
  double reference_scale_;
  MomentAccumulator moments_;
  std::vector<std::uint64_t> e_counts_;
  std::uint64_t signatures_ = 0;
  std::uint64_t attempts_ = 0;
};

// Fixed coordinate pairs used by the correlation check.
std::vector<std::pair<int, int>> correlation_pairs(const ParamSet& params);

// Signs `trials` messages with a freshly generated key. Trial i uses an rng
// derived from `rng` by index, so results do not depend on scheduling.
SimulatabilityReport run_simulatability(const ParamSet& params, int trials, Rng& rng,
                                        double reference_scale = 1.0);

}  // namespace gadgetforge
