#include "trafficflow/sawtooth.hpp"

#include <algorithm>
#include <numeric>

#include "trafficflow/dynamics.hpp"
#include "trafficflow/error.hpp"

namespace trafficflow {
namespace {

Index mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

// Staircase index of the lowest particle at every position of the lane
// domain (the unrolled ring, or the padded core).
struct Staircase {
  Index period = 0;
  Index length = 0;
  Index anchor = 0;
  std::vector<Index> first;
};

Staircase staircase(const Configuration& x, Index anchor) {
  const int M = x.lanes();
  const Index L = x.size();
  Staircase st;
  st.period = L;
  if (x.is_ring()) {
    const Index n = x.particles();
    const Index copies = M / std::gcd(n, static_cast<Index>(M));
    st.length = L * copies;
    st.anchor = mod(anchor, st.length);
    st.first.assign(static_cast<std::size_t>(st.length), 0);
    Index s = 0;
    for (Index p = 0; p < st.length; ++p) {
      Index q = (st.anchor + p) % st.length;
      st.first[static_cast<std::size_t>(q)] = s;
      s += x[q % L];
    }
  } else {
    // Full tails contribute multiples of M, so clamping the anchor to the
    // core leaves every lane index unchanged.
    st.length = L;
    st.anchor = std::clamp<Index>(anchor, 0, L);
    st.first.assign(static_cast<std::size_t>(L), 0);
    Index s = 0;
    for (Index q = st.anchor; q < L; ++q) {
      st.first[static_cast<std::size_t>(q)] = s;
      s += x[q];
    }
    s = 0;
    for (Index q = st.anchor - 1; q >= 0; --q) {
      s -= x[q];
      st.first[static_cast<std::size_t>(q)] = s;
    }
  }
  return st;
}

Configuration bundle_sum(const LaneBundle& b) {
  const int M = b.count();
  const Index n = b.length();
  std::vector<int> sum(static_cast<std::size_t>(n), 0);
  for (const auto& lane : b.lanes)
    for (Index i = 0; i < n; ++i) sum[static_cast<std::size_t>(i)] += lane[i];
  for (int s : sum)
    if (s > M) throw Error("invalid bundle");
  const Boundary& lb = b.lanes.front().boundary();
  Boundary out = lb;
  if (!lb.is_ring()) {
    out.left_fill = lb.left_fill * M;
    out.right_fill = lb.right_fill * M;
  }
  return Configuration(std::move(sum), M, out);
}

bool same_lanes(const LaneBundle& a, const LaneBundle& b, int rotation) {
  const int M = a.count();
  for (int j = 0; j < M; ++j)
    if (!(a.lanes[static_cast<std::size_t>(j)] == b.lanes[static_cast<std::size_t>((j + rotation) % M)]))
      return false;
  return true;
}

}  // namespace

LaneBundle redirect(const Configuration& x, Index anchor) {
  const int M = x.lanes();
  Staircase st = staircase(x, anchor);
  const Index L = x.size();
  Boundary lb = x.boundary();
  if (!lb.is_ring()) {
    lb.left_fill /= M;
    lb.right_fill /= M;
  }
  std::vector<std::vector<int>> cells(static_cast<std::size_t>(M), std::vector<int>(static_cast<std::size_t>(st.length), 0));
  for (Index q = 0; q < st.length; ++q) {
    const int h = x[q % L];
    const Index s0 = st.first[static_cast<std::size_t>(q)];
    for (int r = 0; r < h; ++r) cells[static_cast<std::size_t>(mod(s0 + r, M))][static_cast<std::size_t>(q)] = 1;
  }
  LaneBundle b;
  b.anchor = anchor;
  b.period = st.period;
  b.lanes.reserve(static_cast<std::size_t>(M));
  for (auto& c : cells) b.lanes.emplace_back(std::move(c), 1, lb);
  return b;
}

Configuration merge(const LaneBundle& b) {
  if (b.lanes.empty()) throw Error("empty bundle");
  const Index n = b.length();
  for (const auto& lane : b.lanes)
    if (lane.size() != n || lane.lanes() != 1 || !(lane.boundary() == b.lanes.front().boundary()))
      throw Error("invalid bundle");
  Configuration full = bundle_sum(b);
  const Index period = b.period > 0 ? b.period : n;
  if (period == n) return full;
  if (n % period != 0) throw Error("invalid bundle");
  std::vector<int> folded(full.cells().begin(), full.cells().begin() + period);
  for (Index i = period; i < n; ++i)
    if (full[i] != folded[static_cast<std::size_t>(i % period)]) throw Error("invalid bundle");
  return Configuration(std::move(folded), b.count(), full.boundary());
}

Rational lane_balance(const LaneBundle& b, const WindowSpec& w) {
  if (w.length() < 1) throw Error("empty window");
  Index lo = 0, hi = 0;
  bool first = true;
  for (const auto& lane : b.lanes) {
    Index c = 0;
    for (Index i = w.start; i <= w.end; ++i) c += lane.at(i);
    lo = first ? c : std::min(lo, c);
    hi = first ? c : std::max(hi, c);
    first = false;
  }
  return make_rational(hi - lo, w.length());
}

bool lanes_balanced(const LaneBundle& b) {
  const int M = b.count();
  const Index n = b.length();
  const bool ring = b.lanes.front().is_ring();
  for (int j = 0; j < M; ++j) {
    for (int k = j + 1; k < M; ++k) {
      const auto& a = b.lanes[static_cast<std::size_t>(j)];
      const auto& c = b.lanes[static_cast<std::size_t>(k)];
      Index d = 0, lo = 0, hi = 0;
      for (Index i = 0; i < n; ++i) {
        d += a[i] - c[i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
      if (hi - lo > 1) return false;
      if (ring && d != 0) {
        // Wrapping windows are not covered by the prefix range.
        for (Index s = 0; s < n; ++s) {
          Index e = 0;
          for (Index len = 1; len <= n; ++len) {
            Index i = (s + len - 1) % n;
            e += a[i] - c[i];
            if (e > 1 || e < -1) return false;
          }
        }
      }
    }
  }
  return true;
}

std::optional<int> lane_rotation(const Configuration& x, Index l1, Index l2) {
  LaneBundle a = redirect(x, l1);
  LaneBundle b = redirect(x, l2);
  for (int k = 0; k < a.count(); ++k)
    if (same_lanes(b, a, k)) return k;
  return std::nullopt;
}

bool anchor_shift_check(const Configuration& x, Index l, Index k) {
  const int M = x.lanes();
  // Expected rotation: particle mass between the two anchors.
  Index mass = 0;
  if (x.is_ring()) {
    Staircase st = staircase(x, l);
    const Index target = mod(l + k, st.length);
    mass = st.first[static_cast<std::size_t>(target)];
  } else {
    const Index L = x.size();
    Index a = std::clamp<Index>(l, 0, L), c = std::clamp<Index>(l + k, 0, L);
    for (Index i = std::min(a, c); i < std::max(a, c); ++i) mass += x[i];
    if (c < a) mass = -mass;
  }
  LaneBundle b1 = redirect(x, l);
  LaneBundle b2 = redirect(x, l + k);
  return same_lanes(b2, b1, static_cast<int>(mod(mass, M)));
}

bool commutation_check(const Configuration& x, int v) {
  if (x.lanes() == 1) return true;
  Configuration reference = step_general(x, v, 0);
  if (v == 1 && !(merge(step_lanes(redirect(x, 0), 1)) == step_multilane(x))) return false;
  const Index anchors = x.is_ring() ? redirect(x, 0).length() : x.size() + 1;
  for (Index l = 1; l < anchors; ++l)
    if (!(step_general(x, v, l) == reference)) return false;
  return true;
}

bool is_monotone(const LaneBundle& b) {
  Configuration sum = bundle_sum(b);
  const Index anchors = sum.is_ring() ? sum.size() : sum.size() + 1;
  for (Index l = 0; l < anchors; ++l) {
    LaneBundle c = redirect(sum, l);
    bool same = true;
    for (int j = 0; j < b.count() && same; ++j)
      same = c.lanes[static_cast<std::size_t>(j)] == b.lanes[static_cast<std::size_t>(j)];
    if (same) return true;
  }
  return false;
}

LaneBundle step_lanes(const LaneBundle& b, int v) {
  LaneBundle out = b;
  for (auto& lane : out.lanes) lane = step_fast(lane, v);
  return out;
}

RedirectionReport redirection_report(const Configuration& x, int v, Index anchor) {
  const int M = x.lanes();
  Staircase st = staircase(x, anchor);
  RedirectionReport rep;
  for (Index i = 0; i < x.size(); ++i) {
    const Index s0 = st.first[static_cast<std::size_t>(i)];
    for (int r = 0; r < x[i]; ++r)
      rep.assignments.push_back({i, r + 1, static_cast<int>(mod(s0 + r, M)) + 1});
  }
  rep.density = make_rational(x.particles(), x.size());
  rep.predicted_flux = fundamental_flux(rep.density, v, M);
  return rep;
}

}  // namespace trafficflow
