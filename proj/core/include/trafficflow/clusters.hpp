#pragma once

#include <optional>
#include <vector>

#include "trafficflow/lattice.hpp"
#include "trafficflow/rational.hpp"
#include "trafficflow/substitution.hpp"

namespace trafficflow {

struct ClusterSpan {
  Index start = 0;
  Index end = 0;  // inclusive; may exceed the ring length when wrapping
  Index size = 0;  // particles in the span
  bool operator==(const ClusterSpan&) const = default;
};

struct MinimalWordRecord {
  Index k = 0;
  Index n = 0;
  Index ones = 0;
  Index predicted_lifetime = 0;
  bool operator==(const MinimalWordRecord&) const = default;
};

// Spans x[n, m] with every per-particle velocity in [n, m) below v and the
// delimiters n - v and m moving at full speed (empty sites count as ratio 1).
std::vector<ClusterSpan> find_jammed_clusters(const Configuration& x, int v);

// Largest k < n with x[k, n] balanced. Rings search at most L - 1 sites
// back and may return a negative index.
std::optional<Index> minimal_index(const Configuration& x, Index n);

Index predict_lifetime(const Configuration& x, const ClusterSpan& cluster);

// Steps until the run of particles containing `rear` has at most one
// particle. The run is followed through its rear site. Throws if
// `max_steps` is exceeded.
Index simulate_lifetime(const Configuration& x, Index rear, int v, Index max_steps);

Word gamma_step(const Word& A);
FastWord gamma_step_fast(const FastWord& A);

// All words of length 2n whose only balanced suffix is the whole word and
// which end in 1.
std::vector<Word> minimal_word_set(int n);

// Minimal fast words with at most `max_ones` ONE symbols, including
// non-canonical spellings of the gaps.
std::vector<FastWord> minimal_fast_word_set(int v, int max_ones);

std::vector<MinimalWordRecord> minimal_words(const Configuration& x);

bool is_free(const Configuration& x, int v);
bool is_dual_free(const Configuration& x, int v);

// Radius of the largest window around `origin` that lies entirely in Free
// or entirely in dual-Free. nullopt when x itself is in one of them.
std::optional<Index> free_violation_radius(const Configuration& x, Index origin, int v);

struct DecaySpec {
  double c = 1.0;
  double alpha = 0.5;
  double operator()(double n) const;
};

struct RegularityResult {
  bool member = true;
  std::optional<WindowSpec> witness;
};

// Checks |rho(x[origin-n, origin+m], 1) - r| <= psi(n+m) over all resolvable
// windows with n + m >= 1.
RegularityResult regular_membership(const Configuration& x, const Rational& r, const DecaySpec& psi,
                                    Index origin = 0);

// Length of the transient of a single-lane ring with density at most 1/2
// under the slow map: |B|/2 - 1 for the longest minimal word B.
Index predicted_transient(const Configuration& x);

}  // namespace trafficflow
