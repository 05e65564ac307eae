#pragma once

#include <cstdint>
#include <functional>

#include "gadgetforge/gaussian.hpp"
#include "gadgetforge/ring.hpp"
#include "gadgetforge/xof.hpp"

namespace gadgetforge {

struct GaloisChoice {
  std::int64_t k = 1;
  double quality = 0.0;
};

// Galois unit k minimizing max_j F[j] + G[pi_k(j)]; ties go to the smallest k.
GaloisChoice best_galois_index(const Ring& ring, const Spectrum& f, const Spectrum& g);

struct TrapdoorSearchResult {
  Poly f;
  Poly g;  // already replaced by sigma_k(g_j)
  std::int64_t galois_k = 1;
  double quality = 0.0;
  int restarts = 0;     // full rounds of fresh candidates that found nothing
  int pairs_tried = 0;  // (i, j) pairs examined in total
};

// K candidates each for f and g from T(n, a, b); pairs scanned lexicographically
// in (i, j), every g candidate reconsidered for every f. A pair meeting
// `quality_bound` is offered to `accept` (e.g. an invertibility test) and
// skipped when it declines. Throws KeygenExhausted after `max_restarts`
// rounds without success.
TrapdoorSearchResult search_trapdoor(
    const Ring& ring, const TernaryShape& shape, double quality_bound, int K, Rng& rng,
    const std::function<bool(const Poly& f, const Poly& g)>& accept = {},
    int max_restarts = 64);

}  // namespace gadgetforge
