#include "trafficflow/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trafficflow/error.hpp"

namespace trafficflow {
namespace {

int quotient(int b, int a) {
  if (a == 0) return b == 0 ? 1 : 0;
  return b / a;
}

// min_j floor(B[j] / A[j]) over one aligned window.
template <class Get>
int window_weight(Get&& b_at, const Word& A) {
  int w = std::numeric_limits<int>::max();
  for (std::size_t j = 0; j < A.size() && w > 0; ++j) w = std::min(w, quotient(b_at(j), A[j]));
  return w;
}

}  // namespace

Rational pattern_density(const Word& B, const Word& A) {
  if (A.empty()) throw Error("empty pattern");
  if (A.size() > B.size()) throw Error("pattern longer than text");
  long long total = 0;
  for (std::size_t i = 0; i + A.size() <= B.size(); ++i)
    total += window_weight([&](std::size_t j) { return B[i + j]; }, A);
  return make_rational(total, static_cast<std::int64_t>(B.size()));
}

Rational ring_pattern_density(const Configuration& x, const Word& A) {
  if (!x.is_ring()) throw Error("ring configuration required");
  if (A.empty()) throw Error("empty pattern");
  long long total = 0;
  for (Index i = 0; i < x.size(); ++i)
    total += window_weight([&](std::size_t j) { return x.at(i + static_cast<Index>(j)); }, A);
  return make_rational(total, x.size());
}

Rational window_density(const Configuration& x, const WindowSpec& w, const Word& A) {
  Word sub = extract(x, w);
  if (sub.size() < A.size()) throw Error("window shorter than pattern");
  return pattern_density(sub, A);
}

Configuration dual(const Configuration& x) {
  const int M = x.lanes();
  std::vector<int> cells(x.cells());
  for (int& c : cells) c = M - c;
  Boundary b = x.boundary();
  if (!b.is_ring()) {
    b.left_fill = M - b.left_fill;
    b.right_fill = M - b.right_fill;
  }
  return Configuration(std::move(cells), M, b);
}

MetricValue metric_distance(const Configuration& x, const Configuration& y, Index origin, Index half_width) {
  if (x.lanes() != y.lanes()) throw Error("mismatched lanes");
  if (half_width < 0) throw Error("negative half width");
  const double base = x.lanes() + 1.0;
  MetricValue m;
  for (Index i = -half_width; i <= half_width; ++i) {
    int d = std::abs(x.at(origin + i) - y.at(origin + i));
    if (d != 0) m.value += d * std::pow(base, -static_cast<double>(std::abs(i)));
  }
  m.truncation_bound = 2.0 * x.lanes() * std::pow(base, -static_cast<double>(half_width)) / (1.0 - 1.0 / base);
  return m;
}

}  // namespace trafficflow
