#include "trafficflow/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "trafficflow/density.hpp"
#include "trafficflow/dynamics.hpp"
#include "trafficflow/error.hpp"

namespace trafficflow {
namespace {

void require_single_lane(const Configuration& x) {
  if (x.lanes() != 1) throw Error("single-lane configuration required");
}

Index ring_distance(Index a, Index b, Index L) {
  Index d = std::abs(a - b) % L;
  return std::min(d, L - d);
}

// Sites where V(x, i) != v * x_i.
std::vector<Index> free_violations(const Configuration& x, int v) {
  auto prof = velocity_profile(x, v);
  std::vector<Index> bad;
  for (Index i = 0; i < x.size(); ++i)
    if (prof[static_cast<std::size_t>(i)] != v * x[i]) bad.push_back(i);
  return bad;
}

}  // namespace

std::vector<ClusterSpan> find_jammed_clusters(const Configuration& x, int v) {
  if (v < 1) throw Error("velocity must be at least 1");
  const Index L = x.size();
  // Per-particle ratio equals v, with 0/0 read as 1.
  auto full_at = [&](Index i, int vel) { return x.at(i) == 0 ? v == 1 : vel == v * x.at(i); };

  std::vector<ClusterSpan> spans;
  if (x.is_ring()) {
    auto prof = velocity_profile(x, v);
    std::vector<char> full(static_cast<std::size_t>(L));
    for (Index i = 0; i < L; ++i) full[static_cast<std::size_t>(i)] = full_at(i, prof[static_cast<std::size_t>(i)]);
    for (Index f = 0; f < L; ++f) {
      if (!full[static_cast<std::size_t>(f)]) continue;
      const Index n = f + v;
      Index m = n;
      while (m < n + L && !full[static_cast<std::size_t>(m % L)]) ++m;
      if (m == n || m == n + L) continue;
      bool occupied = false;
      Index size = 0;
      for (Index i = n; i <= m; ++i) {
        occupied |= (i < m && x.at(i) > 0);
        size += x.at(i);
      }
      if (!occupied) continue;
      const Index start = n % L;
      spans.push_back({start, start + (m - n), size});
    }
  } else {
    const bool core_only = x.lanes() > 1 && v > 1;
    const Index lo = core_only ? 0 : -v - 1;
    const Index hi = core_only ? L - 1 : L + v;
    std::vector<char> full(static_cast<std::size_t>(hi - lo + 1));
    auto prof = core_only ? velocity_profile(x, v) : std::vector<int>{};
    for (Index i = lo; i <= hi; ++i) {
      int vel = core_only ? prof[static_cast<std::size_t>(i)] : local_velocity(x, i, v);
      full[static_cast<std::size_t>(i - lo)] = full_at(i, vel);
    }
    for (Index f = lo; f <= hi; ++f) {
      if (!full[static_cast<std::size_t>(f - lo)]) continue;
      const Index n = f + v;
      Index m = n;
      while (m <= hi && !full[static_cast<std::size_t>(m - lo)]) ++m;
      if (m == n || m > hi) continue;
      bool occupied = false;
      Index size = 0;
      for (Index i = n; i <= m; ++i) {
        occupied |= (i < m && x.at(i) > 0);
        size += x.at(i);
      }
      if (occupied) spans.push_back({n, m, size});
    }
  }
  // Several delimiters can close on the same front site; keep the widest.
  std::vector<ClusterSpan> out;
  for (const auto& s : spans) {
    bool covered = false;
    for (const auto& t : spans) {
      if (&s == &t) continue;
      const Index shift = x.is_ring() ? ((s.end - t.end) % L + L) % L : 0;
      if (x.is_ring() ? (shift == 0 && t.end - t.start > s.end - s.start)
                      : (t.end == s.end && t.start < s.start))
        covered = true;
    }
    if (!covered) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const ClusterSpan& a, const ClusterSpan& b) { return a.start < b.start; });
  return out;
}

std::optional<Index> minimal_index(const Configuration& x, Index n) {
  require_single_lane(x);
  const Index L = x.size();
  const Index lowest = x.is_ring() ? n - (L - 1) : n - 2 * (L + std::abs(n) + 2);
  Index balance = x.at(n) ? 1 : -1;
  for (Index k = n - 1; k >= lowest; --k) {
    balance += x.at(k) ? 1 : -1;
    if (balance == 0) return k;
  }
  return std::nullopt;
}

Index predict_lifetime(const Configuration& x, const ClusterSpan& cluster) {
  auto k = minimal_index(x, cluster.end);
  if (!k) throw Error("unbounded minimal word");
  return (cluster.end - *k - 1) / 2;
}

Index simulate_lifetime(const Configuration& x, Index rear, int v, Index max_steps) {
  require_single_lane(x);
  Configuration y = x;
  const Index L = y.size();
  for (Index t = 0;; ++t) {
    if (y.at(rear) == 0) return t;
    Index lo = rear, hi = rear;
    if (y.is_ring()) {
      while (y.at(lo - 1) && rear - lo + 1 < L) --lo;
      while (y.at(hi + 1) && hi - lo + 1 < L) ++hi;
    } else {
      while (lo >= 0 && y.at(lo - 1)) --lo;
      while (hi < L && y.at(hi + 1)) ++hi;
      if (lo < 0 || hi >= L) throw Error("cluster reaches a full tail");
    }
    rear = lo;
    if (hi - lo + 1 <= 1) return t;
    if (t >= max_steps) throw Error("cluster outlived the step budget");
    y = step_fast(y, v);
  }
}

Word gamma_step(const Word& A) {
  if (A.size() < 3) throw Error("word too short for the contraction");
  for (int a : A)
    if (a != 0 && a != 1) throw Error("binary word required");
  Word out;
  out.reserve(A.size() - 2);
  for (std::size_t i = 1; i + 1 < A.size(); ++i)
    out.push_back(A[i] + std::min(A[i - 1], 1 - A[i]) - std::min(A[i], 1 - A[i + 1]));
  return out;
}

FastWord gamma_step_fast(const FastWord& A) {
  if (A.symbols.size() < 2) throw Error("degenerate length");
  const int v = A.v;
  // Swaps inside the word only: nothing wraps and nothing enters.
  std::vector<FastSymbol> s = A.symbols;
  for (std::size_t i = 0; i + 1 < A.symbols.size(); ++i) {
    if (A.symbols[i].is_one() && !A.symbols[i + 1].is_one()) {
      s[i] = A.symbols[i + 1];
      s[i + 1] = FastSymbol::one();
    }
  }
  s.erase(s.begin());

  // Recode the gaps: leading block remainder-first, the rest floor-first.
  std::vector<FastSymbol> out;
  Index zeros = 0;
  bool seen_one = false;
  auto flush = [&](bool head) {
    if (head) {
      if (zeros % v) out.push_back(FastSymbol::zero(static_cast<int>(zeros % v)));
      for (Index k = 0; k < zeros / v; ++k) out.push_back(FastSymbol::zero(v));
    } else {
      for (Index k = 0; k < zeros / v; ++k) out.push_back(FastSymbol::zero(v));
      if (zeros % v) out.push_back(FastSymbol::zero(static_cast<int>(zeros % v)));
    }
    zeros = 0;
  };
  for (auto sym : s) {
    if (sym.is_one()) {
      flush(!seen_one);
      seen_one = true;
      out.push_back(sym);
    } else {
      zeros += sym.gap;
    }
  }
  flush(!seen_one);
  if (out.size() < 2) throw Error("degenerate length");
  out.pop_back();

  FastWord r;
  r.v = v;
  r.kind = FastWord::Kind::padded;
  r.symbols = std::move(out);
  return r;
}

std::vector<Word> minimal_word_set(int n) {
  if (n < 1) throw Error("minimal words need n >= 1");
  std::vector<Word> out;
  const std::size_t len = static_cast<std::size_t>(2 * n);
  Word w(len, 0);
  w[len - 1] = 1;
  // Fill from the right; every proper suffix keeps more ones than zeros.
  std::function<void(std::size_t, int)> fill = [&](std::size_t pos, int balance) {
    const int remaining = static_cast<int>(pos) + 1;
    if (balance > remaining) return;
    if (pos == 0) {
      if (balance == 1) {
        w[0] = 0;
        out.push_back(w);
      }
      return;
    }
    w[pos] = 1;
    fill(pos - 1, balance + 1);
    if (balance > 1) {
      w[pos] = 0;
      fill(pos - 1, balance - 1);
    }
  };
  if (n == 1) {
    out.push_back(Word{0, 1});
  } else {
    fill(len - 2, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FastWord> minimal_fast_word_set(int v, int max_ones) {
  if (v < 1) throw Error("velocity must be at least 1");
  std::vector<FastWord> out;
  std::vector<FastSymbol> rev{FastSymbol::one()};
  std::function<void(long long, int)> grow = [&](long long sum, int ones) {
    for (int g = 0; g <= v; ++g) {
      if (g == 0 && ones >= max_ones) continue;
      FastSymbol s = g == 0 ? FastSymbol::one() : FastSymbol::zero(g);
      const long long next = sum + ind(s, v);
      rev.push_back(s);
      if (next > -v) {
        FastWord w;
        w.v = v;
        w.symbols.assign(rev.rbegin(), rev.rend());
        out.push_back(std::move(w));
      } else {
        grow(next, ones + (g == 0));
      }
      rev.pop_back();
    }
  };
  if (max_ones >= 1) grow(-v, 1);
  return out;
}

std::vector<MinimalWordRecord> minimal_words(const Configuration& x) {
  require_single_lane(x);
  std::vector<MinimalWordRecord> out;
  for (const auto& c : find_jammed_clusters(x, 1)) {
    auto k = minimal_index(x, c.end);
    if (!k) continue;
    MinimalWordRecord r;
    r.n = c.end;
    r.k = *k;
    r.ones = (r.n - r.k + 1) / 2;
    r.predicted_lifetime = r.ones - 1;
    out.push_back(r);
  }
  return out;
}

bool is_free(const Configuration& x, int v) { return free_violations(x, v).empty(); }

bool is_dual_free(const Configuration& x, int v) { return is_free(dual(x), v); }

std::optional<Index> free_violation_radius(const Configuration& x, Index origin, int v) {
  const auto bad_free = free_violations(x, v);
  const auto bad_dual = free_violations(dual(x), v);
  if (bad_free.empty() || bad_dual.empty()) return std::nullopt;
  const Index L = x.size();
  auto nearest = [&](const std::vector<Index>& sites) {
    Index best = -1;
    for (Index i : sites) {
      Index d = x.is_ring() ? ring_distance(i, origin, L) : std::abs(i - origin);
      if (best < 0 || d < best) best = d;
    }
    return best;
  };
  return std::max(nearest(bad_free), nearest(bad_dual));
}

double DecaySpec::operator()(double n) const { return c * std::pow(n, -alpha); }

RegularityResult regular_membership(const Configuration& x, const Rational& r, const DecaySpec& psi, Index origin) {
  if (psi.c <= 0 || psi.alpha <= 0) throw Error("decay spec needs c > 0 and alpha > 0");
  const Index L = x.size();
  Index max_left, max_right;
  if (x.is_ring()) {
    max_left = L - 1;
    max_right = L - 1;
  } else {
    if (origin < 0 || origin >= L) throw Error("origin outside the core");
    max_left = origin;
    max_right = L - 1 - origin;
  }
  // prefix[j] = mass of x[origin - max_left, origin - max_left + j).
  std::vector<long long> prefix(static_cast<std::size_t>(max_left + max_right + 2), 0);
  for (Index j = 0; j < max_left + max_right + 1; ++j)
    prefix[static_cast<std::size_t>(j + 1)] = prefix[static_cast<std::size_t>(j)] + x.at(origin - max_left + j);
  const double target = to_double(r);
  const Index longest = x.is_ring() ? L - 1 : max_left + max_right;
  for (Index span = 1; span <= longest; ++span) {
    const double bound = psi(static_cast<double>(span));
    for (Index n = std::max<Index>(0, span - max_right); n <= std::min(span, max_left); ++n) {
      const Index m = span - n;
      const Index a = max_left - n;
      const long long mass = prefix[static_cast<std::size_t>(a + span + 1)] - prefix[static_cast<std::size_t>(a)];
      const double rho = static_cast<double>(mass) / static_cast<double>(span + 1);
      if (std::abs(rho - target) > bound) return {false, WindowSpec{origin - n, origin + m}};
    }
  }
  return {true, std::nullopt};
}

Index predicted_transient(const Configuration& x) {
  require_single_lane(x);
  if (!x.is_ring()) throw Error("ring configuration required");
  if (2 * x.particles() > x.size()) throw Error("density above 1/2");
  Index t = 0;
  for (const auto& c : find_jammed_clusters(x, 1)) t = std::max(t, predict_lifetime(x, c));
  return t;
}

}  // namespace trafficflow
