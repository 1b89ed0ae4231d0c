#pragma once

#include "trafficflow/lattice.hpp"
#include "trafficflow/rational.hpp"

namespace trafficflow {

// Weighted occurrence count of A in B over all full windows, divided by |B|.
// Uses 0/0 = 1 and b/0 = 0 for b > 0, so on binary words this is the plain
// occurrence frequency.
Rational pattern_density(const Word& B, const Word& A);

// Circular version over all L start positions of a ring.
Rational ring_pattern_density(const Configuration& x, const Word& A);

Rational window_density(const Configuration& x, const WindowSpec& w, const Word& A);

// Sitewise complement c -> M - c. Fills are complemented too.
Configuration dual(const Configuration& x);

struct MetricValue {
  double value = 0.0;
  // The full distance lies in [value, value + truncation_bound].
  double truncation_bound = 0.0;
};

MetricValue metric_distance(const Configuration& x, const Configuration& y, Index origin, Index half_width);

}  // namespace trafficflow
