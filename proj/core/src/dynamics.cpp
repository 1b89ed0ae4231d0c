#include "trafficflow/dynamics.hpp"

#include <algorithm>

#include "trafficflow/density.hpp"
#include "trafficflow/error.hpp"
#include "trafficflow/sawtooth.hpp"

namespace trafficflow {

Velocity Velocity::finite(int v) {
  if (v < 1) throw Error("velocity must be at least 1");
  return Velocity(v, false);
}

int Velocity::value() const {
  if (infinite_) throw Error("velocity is infinite");
  return v_;
}

namespace {

void require_single_lane(const Configuration& x) {
  if (x.lanes() != 1) throw Error("single-lane configuration required");
}

Configuration reflect(const Configuration& x) {
  std::vector<int> cells(x.cells().rbegin(), x.cells().rend());
  Boundary b = x.boundary();
  std::swap(b.left_fill, b.right_fill);
  return Configuration(std::move(cells), x.lanes(), b);
}

std::vector<Index> particle_sites(const Configuration& x) {
  std::vector<Index> p;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i]) p.push_back(i);
  return p;
}

// Empty sites ahead of a particle at p, up to `cap`.
Index headway(const Configuration& x, Index p, Index cap) {
  Index h = 0;
  while (h < cap && x.at(p + h + 1) == 0) ++h;
  return h;
}

Configuration fast_forward(const Configuration& x, int v, Index* moved) {
  require_single_lane(x);
  const Index L = x.size();
  std::vector<int> out(static_cast<std::size_t>(L), 0);
  Index total = 0;
  if (x.is_ring()) {
    const auto sites = particle_sites(x);
    const std::size_t n = sites.size();
    for (std::size_t k = 0; k < n; ++k) {
      Index gap = n == 1 ? L - 1 : (sites[(k + 1) % n] - sites[k] - 1 + L) % L;
      Index m = std::min<Index>(v, gap);
      total += m;
      out[static_cast<std::size_t>((sites[k] + m) % L)] = 1;
    }
  } else {
    const Boundary& b = x.boundary();
    // Only the front particle of a full left tail can move.
    const Index first = b.left_fill ? -1 : 0;
    for (Index p = first; p < L; ++p) {
      if (x.at(p) == 0) continue;
      Index m = headway(x, p, v);
      total += m;
      Index d = p + m;
      if (d >= 0 && d < L) out[static_cast<std::size_t>(d)] = 1;
    }
  }
  if (moved) *moved = total;
  return Configuration(std::move(out), 1, x.boundary());
}

Configuration multilane_forward(const Configuration& x, Index* moved) {
  const int M = x.lanes();
  const Index L = x.size();
  std::vector<int> out(static_cast<std::size_t>(L));
  Index total = 0;
  for (Index i = 0; i < L; ++i) {
    int in = std::min(x.at(i - 1), M - x.at(i));
    int leave = std::min(x.at(i), M - x.at(i + 1));
    out[static_cast<std::size_t>(i)] = x.at(i) + in - leave;
    total += leave;
  }
  if (moved) *moved = total;
  return Configuration(std::move(out), M, x.boundary());
}

Configuration superfast_forward(const Configuration& x, Index* moved) {
  require_single_lane(x);
  const Index L = x.size();
  const Index n = x.particles();
  std::vector<int> out(static_cast<std::size_t>(L), 0);
  Index total = 0;
  if (x.is_ring()) {
    if (n == 0 || n == L) throw Error("superfast undefined");
    const auto sites = particle_sites(x);
    const std::size_t k = sites.size();
    for (std::size_t j = 0; j < k; ++j) {
      Index gap = k == 1 ? L - 1 : (sites[(j + 1) % k] - sites[j] - 1 + L) % L;
      total += gap;
      out[static_cast<std::size_t>((sites[j] + gap) % L)] = 1;
    }
  } else {
    const Boundary& b = x.boundary();
    if (b.left_fill != 0 || b.right_fill != 1) throw Error("superfast undefined");
    for (Index p = 0; p < L; ++p) {
      if (!x[p]) continue;
      Index gap = headway(x, p, L);
      total += gap;
      out[static_cast<std::size_t>(p + gap)] = 1;
    }
  }
  if (moved) *moved = total;
  return Configuration(std::move(out), 1, x.boundary());
}

Configuration general_forward(const Configuration& x, int v, Index anchor, Index* moved) {
  if (x.lanes() == 1) return fast_forward(x, v, moved);
  LaneBundle b = redirect(x, anchor);
  Index total = 0;
  for (auto& lane : b.lanes) {
    Index m = 0;
    lane = fast_forward(lane, v, &m);
    total += m;
  }
  // Unrolled rings count every copy of each particle.
  if (moved) *moved = total / (b.length() / b.period);
  return merge(b);
}

std::vector<int> single_lane_profile(const Configuration& x, int v) {
  const Index L = x.size();
  std::vector<int> prof(static_cast<std::size_t>(L), 0);
  if (x.is_ring()) {
    const auto sites = particle_sites(x);
    const std::size_t n = sites.size();
    for (std::size_t k = 0; k < n; ++k) {
      Index gap = n == 1 ? L - 1 : (sites[(k + 1) % n] - sites[k] - 1 + L) % L;
      prof[static_cast<std::size_t>(sites[k])] = static_cast<int>(std::min<Index>(v, gap));
    }
  } else {
    for (Index p = 0; p < L; ++p)
      if (x[p]) prof[static_cast<std::size_t>(p)] = static_cast<int>(headway(x, p, v));
  }
  return prof;
}

}  // namespace

Configuration step_slow(const Configuration& x) { return fast_forward(x, 1, nullptr); }

Configuration step_multilane(const Configuration& x) { return multilane_forward(x, nullptr); }

Configuration step_fast(const Configuration& x, int v, Direction dir) {
  if (v < 1) throw Error("velocity must be at least 1");
  if (dir == Direction::forward) return fast_forward(x, v, nullptr);
  return reflect(fast_forward(reflect(x), v, nullptr));
}

Configuration step_smart(const Configuration& x, int m) {
  return dual(step_fast(dual(x), m, Direction::backward));
}

Configuration step_superfast(const Configuration& x) { return superfast_forward(x, nullptr); }

Configuration step_general(const Configuration& x, int v, Index anchor) {
  if (v < 1) throw Error("velocity must be at least 1");
  return general_forward(x, v, anchor, nullptr);
}

std::pair<Configuration, Index> step_counted(const Configuration& x, const FlowParams& params) {
  if (params.lanes != x.lanes()) throw Error("lane count mismatch");
  if (params.direction == Direction::backward) {
    FlowParams fwd = params;
    fwd.direction = Direction::forward;
    auto [y, moved] = step_counted(reflect(x), fwd);
    return {reflect(y), moved};
  }
  Index moved = 0;
  if (params.v.is_infinite()) {
    Configuration y = superfast_forward(x, &moved);
    return {std::move(y), moved};
  }
  const int v = params.v.value();
  if (x.lanes() > 1 && v == 1) {
    Configuration y = multilane_forward(x, &moved);
    return {std::move(y), moved};
  }
  Configuration y = general_forward(x, v, 0, &moved);
  return {std::move(y), moved};
}

Configuration step(const Configuration& x, const FlowParams& params) { return step_counted(x, params).first; }

Configuration evolve(const Configuration& x, const FlowParams& params, Index t) {
  if (t < 0) throw Error("negative step count");
  Configuration y = x;
  for (Index s = 0; s < t; ++s) y = step(y, params);
  return y;
}

std::vector<int> velocity_profile(const Configuration& x, int v) {
  if (v < 1) throw Error("velocity must be at least 1");
  if (x.lanes() == 1) return single_lane_profile(x, v);
  const Index L = x.size();
  std::vector<int> prof(static_cast<std::size_t>(L), 0);
  if (v == 1) {
    const int M = x.lanes();
    for (Index i = 0; i < L; ++i) prof[static_cast<std::size_t>(i)] = std::min(x[i], M - x.at(i + 1));
    return prof;
  }
  // Sum of lane velocities in the first copy of the (possibly unrolled) ring.
  LaneBundle b = redirect(x, 0);
  for (const auto& lane : b.lanes) {
    auto lp = single_lane_profile(lane, v);
    for (Index i = 0; i < L; ++i) prof[static_cast<std::size_t>(i)] += lp[static_cast<std::size_t>(i)];
  }
  return prof;
}

int local_velocity(const Configuration& x, Index i, int v) {
  if (v < 1) throw Error("velocity must be at least 1");
  if (x.lanes() == 1) {
    if (x.at(i) == 0) return 0;
    if (x.is_ring() && x.particles() == 1) return static_cast<int>(std::min<Index>(v, x.size() - 1));
    return static_cast<int>(headway(x, i, v));
  }
  if (v == 1) return std::min(x.at(i), x.lanes() - x.at(i + 1));
  if (!x.is_ring() && (i < 0 || i >= x.size())) throw Error("site outside the core");
  return velocity_profile(x, v)[static_cast<std::size_t>(x.wrap(i))];
}

Rational flux_window(const Configuration& x, const WindowSpec& w, int v) {
  if (w.end < w.start) throw Error("window end before start");
  long long total = 0;
  if (x.is_ring() && w.length() == x.size()) {
    for (int s : velocity_profile(x, v)) total += s;
  } else {
    for (Index i = w.start; i <= w.end; ++i) total += local_velocity(x, i, v);
  }
  return make_rational(total, w.length());
}

Rational flux_pattern_sum(const Configuration& x, int v) {
  if (!x.is_ring()) throw Error("ring configuration required");
  if (x.lanes() != 1) throw Error("single-lane configuration required");
  Rational sum = 0;
  Word pattern{1};
  for (int i = 1; i <= v; ++i) {
    pattern.push_back(0);
    sum += ring_pattern_density(x, pattern);
  }
  return sum;
}

Rational fundamental_flux(const Rational& rho, int v, int M) {
  if (v < 1 || M < 1) throw Error("velocity and lanes must be positive");
  if (rho < 0 || rho > M) throw Error("density outside [0, M]");
  if (rho * (v + 1) <= M) return rho * v;
  return Rational(M) - rho;
}

FluxReport flux_report(const Configuration& x, int v, Index steps) {
  if (!x.is_ring()) throw Error("ring configuration required");
  const Index L = x.size();
  FluxReport r;
  r.rho = make_rational(x.particles(), L);
  r.flux_predicted = fundamental_flux(r.rho, v, x.lanes());
  const Rational target = r.flux_predicted * L;
  FlowParams params{Velocity::finite(v), x.lanes(), Direction::forward};
  Configuration y = x;
  Index moved = 0;
  for (Index t = 0; t <= steps; ++t) {
    auto next = step_counted(y, params);
    moved = next.second;
    Rational miss = Rational(moved) - target;
    if (miss < 0) miss = -miss;
    if (miss > v) r.transient_steps = t + 1;
    if (t < steps) y = std::move(next.first);
  }
  r.flux_measured = make_rational(moved, L);
  return r;
}

}  // namespace trafficflow
