#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trafficflow/dynamics.hpp"
#include "trafficflow/error.hpp"
#include "trafficflow/sawtooth.hpp"

using namespace trafficflow;

namespace {

Configuration three_lane_example() { return Configuration::padded({1, 1, 2, 1, 1, 2, 2, 1}, 3, 0, 0); }

Configuration random_ring(std::mt19937_64& g, int L, int M) {
  std::uniform_int_distribution<int> d(0, M);
  std::vector<int> c(static_cast<std::size_t>(L));
  for (auto& v : c) v = d(g);
  return Configuration::ring(c, M);
}

}  // namespace

TEST(Redirect, ThreeLaneExample) {
  // Anchor where x[l-1, l+1] = 211.
  auto b = redirect(three_lane_example(), 3);
  ASSERT_EQ(b.count(), 3);
  EXPECT_EQ(b.lanes[2].to_string(), "10100110");
  EXPECT_EQ(b.lanes[1].to_string(), "00101010");
  EXPECT_EQ(b.lanes[0].to_string(), "01010101");
  EXPECT_EQ(merge(b).to_string(), "11211221");
}

TEST(Redirect, ThreeLaneExampleAfterOneStep) {
  auto b = step_lanes(redirect(three_lane_example(), 3), 1);
  // Sites the example leaves unknown are skipped.
  EXPECT_EQ(b.lanes[2].to_string(), "01010101");
  EXPECT_EQ(b.lanes[1].to_string().substr(1), "0010101");
  EXPECT_EQ(b.lanes[0].to_string().substr(1, 6), "010101");
  EXPECT_EQ(merge(b).to_string().substr(1, 6), "112121");
}

TEST(Redirect, SingleLaneIsIdentity) {
  auto x = Configuration::ring({1, 0, 1, 1, 0});
  auto b = redirect(x, 2);
  ASSERT_EQ(b.count(), 1);
  EXPECT_EQ(b.lanes[0], x);
}

TEST(Redirect, StaircaseOfHeightTwo) {
  auto b = redirect(Configuration::ring({2, 0}, 2), 0);
  EXPECT_EQ(b.lanes[0].cells(), (std::vector<int>{1, 0}));
  EXPECT_EQ(b.lanes[1].cells(), (std::vector<int>{1, 0}));
}

TEST(Redirect, OddRingIsUnrolled) {
  auto x = Configuration::ring({1, 1, 1}, 2);
  auto b = redirect(x, 0);
  EXPECT_EQ(b.period, 3);
  EXPECT_EQ(b.length(), 6);
  EXPECT_EQ(b.lanes[0].to_string(), "101010");
  EXPECT_EQ(b.lanes[1].to_string(), "010101");
  EXPECT_EQ(merge(b), x);
  EXPECT_EQ(step_general(x, 1), step_multilane(x));
}

TEST(Merge, Examples) {
  LaneBundle b;
  b.lanes = {Configuration::ring({1, 1}), Configuration::ring({1, 1})};
  b.period = 2;
  EXPECT_EQ(merge(b), Configuration::ring({2, 2}, 2));
  LaneBundle bad;
  bad.lanes = {Configuration::ring({1, 1}), Configuration::ring({1})};
  bad.period = 2;
  EXPECT_THROW(merge(bad), Error);
  LaneBundle aperiodic;
  aperiodic.lanes = {Configuration::ring({1, 0, 0, 0}), Configuration::ring({0, 0, 0, 0})};
  aperiodic.period = 2;
  EXPECT_THROW(merge(aperiodic), Error);
}

TEST(Merge, InvertsRedirectOnRandomRings) {
  std::mt19937_64 g(1);
  for (int trial = 0; trial < 500; ++trial) {
    const int M = 1 + static_cast<int>(g() % 4);
    const int L = 1 + static_cast<int>(g() % 64);
    auto x = random_ring(g, L, M);
    ASSERT_EQ(merge(redirect(x, static_cast<Index>(g() % 200) - 100)), x);
  }
}

TEST(LaneBalance, Bounds) {
  std::mt19937_64 g(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int M = 1 + static_cast<int>(g() % 3);
    const int L = 1 + static_cast<int>(g() % 20);
    auto b = redirect(random_ring(g, L, M), static_cast<Index>(g() % L));
    ASSERT_TRUE(lanes_balanced(b));
    for (Index s = 0; s < b.length(); ++s)
      for (Index k = 1; k <= b.length(); ++k) ASSERT_LE(lane_balance(b, {s, s + k - 1}), make_rational(1, k));
  }
  auto single = redirect(Configuration::ring({1, 0, 1}), 0);
  EXPECT_EQ(lane_balance(single, {0, 2}), make_rational(0));
  auto two = redirect(Configuration::ring({1, 0}, 2), 0);
  EXPECT_EQ(lane_balance(two, {0, 0}), make_rational(1));
}

TEST(LaneBalance, UnbalancedBundleDetected) {
  LaneBundle b;
  b.lanes = {Configuration::ring({1, 1, 0, 0}), Configuration::ring({0, 0, 1, 1})};
  b.period = 4;
  EXPECT_FALSE(lanes_balanced(b));
}

TEST(AnchorShift, Rotations) {
  auto x = three_lane_example();
  EXPECT_TRUE(anchor_shift_check(x, 3, 0));
  EXPECT_EQ(lane_rotation(x, 3, 3), 0);
  EXPECT_EQ(lane_rotation(x, 3, 4), 1);
  EXPECT_EQ(lane_rotation(x, 5, 6), 2);
  EXPECT_TRUE(anchor_shift_check(x, 3, 1));
  EXPECT_TRUE(anchor_shift_check(x, 5, 1));
}

TEST(AnchorShift, RelabelingOnRandomRings) {
  std::mt19937_64 g(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int M = 1 + static_cast<int>(g() % 3);
    const int L = 1 + static_cast<int>(g() % 16);
    auto x = random_ring(g, L, M);
    const Index l = static_cast<Index>(g() % L);
    const Index k = static_cast<Index>(g() % (3 * L)) - L;
    ASSERT_TRUE(anchor_shift_check(x, l, k)) << x.to_string() << " l=" << l << " k=" << k;
  }
}

TEST(Commutation, Examples) {
  EXPECT_TRUE(commutation_check(Configuration::ring({2, 1, 0}, 2), 1));
  EXPECT_TRUE(commutation_check(Configuration::ring({1, 0, 1}), 2));
  std::mt19937_64 g(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = random_ring(g, 1 + static_cast<int>(g() % 48), 3);
    ASSERT_TRUE(commutation_check(x, 2)) << x.to_string();
  }
}

TEST(Commutation, ExhaustiveSmallRings) {
  for (int M = 2; M <= 3; ++M)
    for (int L = 1; L <= 5; ++L)
      for (const auto& w : oracle::all_words(L, M)) {
        auto x = Configuration::ring(w, M);
        for (int v = 1; v <= 2; ++v) ASSERT_TRUE(commutation_check(x, v)) << x.to_string() << " v=" << v;
      }
}

TEST(Monotone, PreservedByLaneSteps) {
  std::mt19937_64 g(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int M = 2 + static_cast<int>(g() % 2);
    const int L = 1 + static_cast<int>(g() % 14);
    auto x = random_ring(g, L, M);
    auto b = redirect(x, static_cast<Index>(g() % L));
    ASSERT_TRUE(is_monotone(b));
    for (int v = 1; v <= 3; ++v) ASSERT_TRUE(is_monotone(step_lanes(b, v))) << x.to_string() << " v=" << v;
  }
  LaneBundle broken;
  broken.lanes = {Configuration::ring({1, 1, 0, 0}), Configuration::ring({0, 0, 1, 1})};
  broken.period = 4;
  EXPECT_FALSE(is_monotone(broken));
}

TEST(Monotone, SlowLaneStepsNeverOverfill) {
  for (int M = 2; M <= 3; ++M)
    for (int L = 1; L <= 6; ++L)
      for (const auto& w : oracle::all_words(L, M)) {
        auto b = step_lanes(redirect(Configuration::ring(w, M), 0), 1);
        std::vector<int> sum(static_cast<std::size_t>(b.length()), 0);
        for (const auto& lane : b.lanes)
          for (Index i = 0; i < b.length(); ++i) sum[static_cast<std::size_t>(i)] += lane[i];
        for (int s : sum) ASSERT_LE(s, M);
      }
}

TEST(RedirectionReport, ThreeLaneExample) {
  auto rep = redirection_report(three_lane_example(), 1, 3);
  ASSERT_EQ(rep.assignments.size(), 11u);
  std::vector<std::string> rows(3, std::string(8, '0'));
  for (const auto& a : rep.assignments) rows[static_cast<std::size_t>(a.lane - 1)][static_cast<std::size_t>(a.site)] = '1';
  EXPECT_EQ(rows[2], "10100110");
  EXPECT_EQ(rows[1], "00101010");
  EXPECT_EQ(rows[0], "01010101");
  EXPECT_EQ(rep.assignments[2], (LaneAssignment{2, 1, 2}));
  EXPECT_EQ(rep.assignments[3], (LaneAssignment{2, 2, 3}));
}

TEST(RedirectionReport, EmptyConfiguration) {
  auto rep = redirection_report(Configuration::ring({0, 0, 0}, 2), 1);
  EXPECT_TRUE(rep.assignments.empty());
  EXPECT_EQ(rep.predicted_flux, make_rational(0));
}

TEST(RedirectionReport, HalfFullTwoLanes) {
  auto x = Configuration::ring(std::vector<int>(8, 1), 2);
  auto rep = redirection_report(x, 1);
  int lane1 = 0;
  for (const auto& a : rep.assignments) lane1 += a.lane == 1;
  EXPECT_EQ(lane1, 4);
  EXPECT_EQ(rep.density, make_rational(1));
  EXPECT_EQ(rep.predicted_flux, make_rational(1));
}
