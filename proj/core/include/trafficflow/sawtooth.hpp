#pragma once

#include <optional>
#include <vector>

#include "trafficflow/lattice.hpp"
#include "trafficflow/rational.hpp"

namespace trafficflow {

// Lanes are binary configurations. A ring whose particle count N is not a
// multiple of M is unrolled M / gcd(N, M) times so that the staircase
// closes; `period` is the length of the original ring.
struct LaneBundle {
  std::vector<Configuration> lanes;
  Index anchor = 0;
  Index period = 0;

  int count() const { return static_cast<int>(lanes.size()); }
  Index length() const { return lanes.empty() ? 0 : lanes.front().size(); }
};

LaneBundle redirect(const Configuration& x, Index anchor);
Configuration merge(const LaneBundle& b);

Rational lane_balance(const LaneBundle& b, const WindowSpec& w);

// True if every window of every lane pair differs by at most one particle.
bool lanes_balanced(const LaneBundle& b);

// Lane rotation k with redirect(x, l2) lane j == redirect(x, l1) lane j+k.
std::optional<int> lane_rotation(const Configuration& x, Index l1, Index l2);
bool anchor_shift_check(const Configuration& x, Index l, Index k);

bool commutation_check(const Configuration& x, int v);

// The lanes form a staircase: some anchor of their sum redirects to them.
bool is_monotone(const LaneBundle& b);

// Fast step applied lane by lane, keeping the bundle layout.
LaneBundle step_lanes(const LaneBundle& b, int v);

struct LaneAssignment {
  Index site = 0;
  int slot = 0;  // 1-based, bottom-up within the site
  int lane = 0;  // 1-based
  bool operator==(const LaneAssignment&) const = default;
};

struct RedirectionReport {
  std::vector<LaneAssignment> assignments;
  Rational density;
  Rational predicted_flux;
};

RedirectionReport redirection_report(const Configuration& x, int v, Index anchor = 0);

}  // namespace trafficflow
