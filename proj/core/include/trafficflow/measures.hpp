#pragma once

#include <cstdint>
#include <map>

#include "trafficflow/lattice.hpp"
#include "trafficflow/rational.hpp"

namespace trafficflow {

struct SampleSpec {
  Rational p;
  int lanes = 1;
  Index length = 1;
  std::uint64_t seed = 0;
};

struct CylinderWeights {
  WindowSpec window;
  std::map<Word, Rational> weights;
};

// Ring sample. Each site takes M draws from std::mt19937_64; a lane is
// occupied when draw * q < a * 2^64 for p = a/q.
Configuration bernoulli_config(const SampleSpec& spec);

Rational product_weight(const Word& A, const Rational& p, int M);

// Largest number of sites enumerated by the pushforward routines.
inline constexpr int kEnumerationBudget = 24;

Rational pushforward(int v, const Word& W, const Rational& p);
Rational pushforward_iterated(int v, const Word& W, const Rational& p, int t);

CylinderWeights product_cylinders(Index k, const Rational& p, int M);
CylinderWeights pushforward_cylinders(int v, Index k, const Rational& p, int t);

// Pushes `weights` forward by one step of the single-lane map, yielding
// weights on the window shrunk by v on the left and 1 on the right.
CylinderWeights pushforward_weights(const CylinderWeights& weights, int v);

// Both the weights and their pushforward are consistent with a stationary
// family: the marginals on the first and last k-1 sites agree.
bool translation_invariance_check(const CylinderWeights& weights, int v);
bool is_shift_consistent(const CylinderWeights& weights);

}  // namespace trafficflow
