#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "trafficflow/clusters.hpp"
#include "trafficflow/dynamics.hpp"
#include "trafficflow/error.hpp"
#include "trafficflow/measures.hpp"

using namespace trafficflow;

namespace {

Configuration ring(std::vector<int> c) { return Configuration::ring(std::move(c)); }
Configuration padded(std::vector<int> c) { return Configuration::padded(std::move(c), 1, 0, 0); }

FastWord fast(std::string_view s, int v) { return parse_fast_word(s, v); }

Index first_free_time(Configuration x, Index limit) {
  for (Index t = 0; t <= limit; ++t) {
    if (is_free(x, 1)) return t;
    x = step_slow(x);
  }
  return -1;
}

}  // namespace

TEST(JammedClusters, SlowSingleLaneRuns) {
  auto c = find_jammed_clusters(ring({0, 1, 1, 0, 1, 0}), 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], (ClusterSpan{1, 2, 2}));
}

TEST(JammedClusters, FreeRingHasNone) {
  EXPECT_TRUE(find_jammed_clusters(ring({1, 0, 1, 0, 0}), 1).empty());
  EXPECT_TRUE(find_jammed_clusters(ring({1, 0, 0, 1, 0, 0}), 2).empty());
}

TEST(JammedClusters, FastParticleWithShortHeadway) {
  auto c = find_jammed_clusters(ring({1, 0, 1, 0, 0, 0}), 2);
  ASSERT_EQ(c.size(), 1u);
  const Index L = 6;
  bool contains_front = false;
  for (Index i = c[0].start; i <= c[0].end; ++i) contains_front |= (i % L) == 0;
  EXPECT_TRUE(contains_front);
  EXPECT_EQ(c[0].end % L, 2);
}

TEST(JammedClusters, SlowCaseEqualsRunsOfAtLeastTwo) {
  for (int L = 1; L <= 12; ++L)
    for (std::uint32_t m = 0; m < (1u << L); ++m) {
      auto x = padded(oracle::bits(m, L));
      std::vector<ClusterSpan> expect;
      for (Index i = 0; i < L;) {
        if (!x[i]) {
          ++i;
          continue;
        }
        Index j = i;
        while (j + 1 < L && x[j + 1]) ++j;
        if (j > i) expect.push_back({i, j, j - i + 1});
        i = j + 1;
      }
      ASSERT_EQ(find_jammed_clusters(x, 1), expect) << x.to_string();
    }
}

TEST(MinimalIndex, Examples) {
  EXPECT_EQ(minimal_index(padded({0, 0, 1, 1}), 3), 0);
  EXPECT_EQ(minimal_index(padded({0, 0, 1, 0, 1, 1}), 5), 0);
  EXPECT_EQ(minimal_index(ring({1, 1, 1, 1}), 3), std::nullopt);
  EXPECT_EQ(minimal_index(Configuration::padded({1, 1}, 1, 1, 0), 1), std::nullopt);
}

TEST(MinimalIndex, ReachesIntoEmptyTail) { EXPECT_EQ(minimal_index(padded({1, 1, 1}), 2), -3); }

TEST(PredictLifetime, Examples) {
  EXPECT_EQ(predict_lifetime(padded({0, 0, 1, 0, 1, 1}), {4, 5, 2}), 2);
  EXPECT_EQ(predict_lifetime(padded({0, 0, 1, 1}), {2, 3, 2}), 1);
  EXPECT_EQ(predict_lifetime(padded({0, 0, 0, 1, 0, 1, 1, 0, 1, 1}), {8, 9, 2}), 4);
  EXPECT_THROW(predict_lifetime(ring({1, 1, 1, 0}), {0, 2, 3}), Error);
}

TEST(SimulateLifetime, Examples) {
  EXPECT_EQ(simulate_lifetime(padded({0, 0, 1, 1, 0, 0}), 2, 1, 100), 1);
  EXPECT_EQ(simulate_lifetime(padded({0, 0, 1, 0, 1, 1, 0, 0, 0}), 4, 1, 100), 2);
  EXPECT_EQ(simulate_lifetime(padded({0, 1, 0}), 1, 1, 100), 0);
  EXPECT_THROW(simulate_lifetime(ring({1, 1, 1}), 0, 1, 5), Error);
}

TEST(Lifetime, PredictedEqualsSimulatedForMinimalWords) {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& w : minimal_word_set(n)) {
      std::vector<int> cells(static_cast<std::size_t>(2), 0);
      cells.insert(cells.end(), w.begin(), w.end());
      cells.insert(cells.end(), static_cast<std::size_t>(2 * n + 4), 0);
      auto x = padded(cells);
      const Index end = 2 + 2 * n - 1;
      Index rear = end;
      while (x[rear - 1]) --rear;
      const Index predicted = predict_lifetime(x, {rear, end, end - rear + 1});
      ASSERT_EQ(predicted, n - 1);
      ASSERT_EQ(simulate_lifetime(x, rear, 1, 100), predicted) << word_to_string(w);
      ASSERT_EQ(oracle::terminal_cluster_lifetime(w, 1), predicted);
    }
  }
}

TEST(MinimalWordSet, CountsAreCatalan) {
  const std::size_t catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n <= 8; ++n) {
    auto words = minimal_word_set(n);
    EXPECT_EQ(words.size(), catalan[n - 1]);
    for (const auto& w : words) {
      auto k = minimal_index(padded(w), 2 * n - 1);
      ASSERT_TRUE(k.has_value());
      EXPECT_EQ(*k, 0);
    }
  }
}

TEST(Gamma, TableLeftColumn) {
  Word a = parse_word("0001011011");
  const char* rows[] = {"00011011", "001011", "0011", "01"};
  for (const char* r : rows) {
    a = gamma_step(a);
    EXPECT_EQ(word_to_string(a), r);
  }
}

TEST(Gamma, TableRightColumn) {
  Word a = parse_word("00100111");
  const char* rows[] = {"001011", "0011", "01"};
  for (const char* r : rows) {
    a = gamma_step(a);
    EXPECT_EQ(word_to_string(a), r);
  }
}

TEST(Gamma, RejectsShortWords) { EXPECT_THROW(gamma_step({0, 1}), Error); }

TEST(Gamma, ShiftedSlowStep) {
  for (int n = 3; n <= 16; ++n)
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      auto w = oracle::bits(m, n);
      auto g = gamma_step(w);
      for (int fill : {0, 1}) {
        auto s = step_slow(Configuration::padded(w, 1, fill, fill));
        for (int i = 0; i + 2 < n; ++i) ASSERT_EQ(g[static_cast<std::size_t>(i)], s[i + 1]);
      }
    }
}

TEST(Gamma, PreservesMinimality) {
  for (int n = 2; n <= 8; ++n) {
    auto smaller = minimal_word_set(n - 1);
    std::set<Word> target(smaller.begin(), smaller.end());
    for (const auto& w : minimal_word_set(n)) ASSERT_TRUE(target.count(gamma_step(w))) << word_to_string(w);
  }
}

TEST(GammaFast, TableRows) {
  FastWord a = fast("0_2 0_2 0_1 1 0_1 1 0_1 1 1", 2);
  const char* rows[] = {"0_2 0_2 1 0_1 1 1", "0_1 0_2 1 1", "0_2 1"};
  for (const char* r : rows) {
    a = gamma_step_fast(a);
    EXPECT_EQ(to_string(a), r);
  }
  EXPECT_THROW(gamma_step_fast(fast("1", 2)), Error);
}

TEST(GammaFast, LosesOneParticlePerStep) {
  for (int v = 1; v <= 3; ++v)
    for (const auto& w : minimal_fast_word_set(v, 4)) {
      if (w.ones() < 2) continue;
      auto g = gamma_step_fast(w);
      EXPECT_EQ(g.ones(), w.ones() - 1) << to_string(w);
      EXPECT_LE(g.symbols.size() + 2, w.symbols.size()) << to_string(w);
    }
}

TEST(MinimalWords, DisjointPair) {
  auto r = minimal_words(padded({0, 0, 1, 1, 0, 0, 1, 1}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0], (MinimalWordRecord{0, 3, 2, 1}));
  EXPECT_EQ(r[1], (MinimalWordRecord{4, 7, 2, 1}));
}

TEST(MinimalWords, NestedStructure) {
  auto r = minimal_words(padded({0, 0, 0, 0, 1, 0, 1, 1}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].n, 7);
  EXPECT_LE(r[0].k, 4);
  EXPECT_EQ(r[0].ones, 3);
}

TEST(MinimalWords, FreeConfigurationHasNone) { EXPECT_TRUE(minimal_words(padded({1, 0, 1, 0, 0, 1})).empty()); }

TEST(MinimalWords, NeverPartiallyOverlap) {
  for (int L = 1; L <= 14; ++L)
    for (std::uint32_t m = 0; m < (1u << L); ++m) {
      auto r = minimal_words(padded(oracle::bits(m, L)));
      for (const auto& a : r)
        for (const auto& b : r) {
          const bool disjoint = a.n < b.k || b.n < a.k;
          const bool nested = (a.k <= b.k && b.n <= a.n) || (b.k <= a.k && a.n <= b.n);
          ASSERT_TRUE(disjoint || nested);
        }
    }
}

TEST(FreeSets, Examples) {
  EXPECT_TRUE(is_free(ring({1, 0, 1, 0}), 1));
  EXPECT_FALSE(is_free(ring({1, 1, 0, 0}), 1));
  EXPECT_TRUE(is_free(ring({1, 0}), 1));
  EXPECT_TRUE(is_dual_free(ring({1, 0}), 1));
  EXPECT_TRUE(is_dual_free(ring({1, 1, 0, 1, 1, 0}), 1));
  EXPECT_FALSE(is_free(Configuration::padded({0, 1}, 1, 0, 1), 1));
}

TEST(FreeViolationRadius, CleanOnFreeRing) {
  EXPECT_EQ(free_violation_radius(ring({1, 0, 0, 1, 0, 0}), 0, 1), std::nullopt);
  EXPECT_EQ(free_violation_radius(ring({1, 1, 0, 1, 1, 0}), 0, 1), std::nullopt);
}

TEST(FreeViolationRadius, BlockedPairAndDoubleHole) {
  // Alternating ring with one 11 at sites 5,6 and one 00 at sites 13,14.
  auto x = ring({0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 1});
  // Free fails at site 5 (blocked), dual-Free fails at 13 (hole before hole).
  EXPECT_EQ(free_violation_radius(x, 0, 1), 7);
  EXPECT_EQ(free_violation_radius(x, 5, 1), 8);
  EXPECT_EQ(free_violation_radius(x, 9, 1), 4);
}

TEST(FreeViolationRadius, GrowsUnderEvolution) {
  Configuration x = bernoulli_config({make_rational(3, 10), 1, 2000, 17});
  Index last = 0;
  for (int t = 0; t <= 300; ++t) {
    auto r = free_violation_radius(x, 0, 1);
    Index value = r ? *r : x.size() / 2;
    if (t == 300) EXPECT_GE(value, 250);
    last = value;
    x = step_slow(x);
  }
  EXPECT_GT(last, 0);
}

TEST(RegularMembership, AlternatingRing) {
  std::vector<int> c;
  for (int i = 0; i < 40; ++i) c.push_back(i % 2);
  auto r = regular_membership(ring(c), make_rational(1, 2), {1.0, 0.5});
  EXPECT_TRUE(r.member);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(RegularMembership, AllOnesFails) {
  auto r = regular_membership(ring(std::vector<int>(20, 1)), make_rational(1, 2), {1.0, 0.5});
  EXPECT_FALSE(r.member);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_GE(r.witness->length(), 2);
}

TEST(RegularMembership, BernoulliSample) {
  int members = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto x = bernoulli_config({make_rational(3, 10), 1, 10000, seed});
    members += regular_membership(x, make_rational(3, 10), {5.0, 0.4}).member;
  }
  EXPECT_GE(members, 4);
}

TEST(Convergence, RingsReachFreeOrDualFree) {
  for (int L = 1; L <= 14; ++L)
    for (std::uint32_t m = 0; m < (1u << L); ++m) {
      Configuration x = ring(oracle::bits(m, L));
      const Index N = x.particles();
      bool reached_free = false, reached_dual = false;
      Configuration y = x;
      for (Index t = 0; t <= L / 2 + 1; ++t) {
        reached_free |= is_free(y, 1);
        reached_dual |= is_dual_free(y, 1);
        y = step_slow(y);
      }
      if (2 * N <= L) ASSERT_TRUE(reached_free) << x.to_string();
      if (2 * N >= L) ASSERT_TRUE(reached_dual) << x.to_string();
    }
}

TEST(Convergence, TransientEqualsLongestMinimalWord) {
  for (int L = 1; L <= 14; ++L)
    for (std::uint32_t m = 0; m < (1u << L); ++m) {
      Configuration x = ring(oracle::bits(m, L));
      if (2 * x.particles() > L) continue;
      ASSERT_EQ(first_free_time(x, L), predicted_transient(x)) << x.to_string();
    }
}
