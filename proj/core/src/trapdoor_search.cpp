#include "gadgetforge/trapdoor_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gadgetforge/errors.hpp"

namespace gadgetforge {

GaloisChoice best_galois_index(const Ring& ring, const Spectrum& f, const Spectrum& g) {
  const int n = ring.degree();
  const bool conv = ring.kind() == RingKind::kConvolution;
  const std::int64_t order = conv ? n : 2 * static_cast<std::int64_t>(n);
  double best = std::numeric_limits<double>::infinity();
  std::int64_t best_k = 1;
  // a candidate must beat the incumbent by more than rounding noise, so exact
  // ties (k and its conjugate) resolve to the smaller index
  double cutoff = best;
  for (const std::int64_t k : ring.galois_units()) {
    double worst = 0.0;
    // conv: index j*k mod n; cyclo: ((2j+1)k mod 2n - 1) / 2
    std::int64_t e = conv ? 0 : k % order;
    const std::int64_t step = conv ? k % order : (2 * k) % order;
    for (int j = 0; j < n; ++j) {
      const std::int64_t idx = conv ? e : (e - 1) / 2;
      worst = std::max(worst, f.mags2[j] + g.mags2[idx]);
      if (worst >= cutoff) break;
      e += step;
      if (e >= order) e -= order;
    }
    if (worst < cutoff) {
      best = worst;
      best_k = k;
      cutoff = best * (1.0 - 1e-12);
    }
  }
  return {best_k, std::sqrt(best)};
}

TrapdoorSearchResult search_trapdoor(
    const Ring& ring, const TernaryShape& shape, double quality_bound, int K, Rng& rng,
    const std::function<bool(const Poly& f, const Poly& g)>& accept, int max_restarts) {
  TrapdoorSearchResult result;
  for (int round = 0; round <= max_restarts; ++round) {
    std::vector<Poly> fs, gs;
    std::vector<Spectrum> fspec, gspec;
    for (int i = 0; i < K; ++i) fs.emplace_back(sample_ternary(shape, rng));
    for (int i = 0; i < K; ++i) gs.emplace_back(sample_ternary(shape, rng));
    for (const auto& f : fs) fspec.push_back(ring.spectrum(f));
    for (const auto& g : gs) gspec.push_back(ring.spectrum(g));

    for (int i = 0; i < K; ++i) {
      for (int j = 0; j < K; ++j) {
        ++result.pairs_tried;
        const GaloisChoice choice = best_galois_index(ring, fspec[i], gspec[j]);
        if (choice.quality > quality_bound) continue;
        Poly g = ring.galois(gs[j], choice.k);
        if (accept && !accept(fs[i], g)) continue;
        result.f = fs[i];
        result.g = std::move(g);
        result.galois_k = choice.k;
        result.quality = choice.quality;
        result.restarts = round;
        return result;
      }
    }
  }
  throw KeygenExhausted("no trapdoor met the quality bound after " +
                        std::to_string(max_restarts) + " restarts");
}

}  // namespace gadgetforge
