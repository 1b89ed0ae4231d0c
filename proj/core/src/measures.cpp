#include "trafficflow/measures.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "trafficflow/error.hpp"

namespace trafficflow {
namespace {

__extension__ typedef unsigned __int128 u128;

void check_probability(const Rational& p) {
  if (p < 0 || p > 1) throw Error("probability outside [0, 1]");
}

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational power(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// One fast step on an n-site window with empty surroundings. Bit i is site i.
std::uint32_t window_step(std::uint32_t w, int n, int v) {
  std::uint32_t out = 0;
  for (int p = 0; p < n; ++p) {
    if (!(w >> p & 1u)) continue;
    int m = 0;
    while (m < v && p + m + 1 < n && !(w >> (p + m + 1) & 1u)) ++m;
    if (p + m + 1 >= n) m = v;  // free beyond the window
    if (p + m < n) out |= 1u << (p + m);
  }
  return out;
}

// counts[image][k]: inputs with k particles whose t-step image on the
// central sites equals `image`.
std::vector<std::vector<std::uint64_t>> enumerate_images(int v, int k, int t) {
  const int radius = t * v;
  const int n = k + 2 * radius;
  if (n > kEnumerationBudget) throw Error("enumeration budget");
  std::vector<std::vector<std::uint64_t>> counts(std::size_t{1} << k, std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  const std::uint32_t mask = (1u << k) - 1u;
  for (std::uint32_t w = 0; w < (1u << n); ++w) {
    std::uint32_t y = w;
    for (int s = 0; s < t; ++s) y = window_step(y, n, v);
    counts[(y >> radius) & mask][static_cast<std::size_t>(std::popcount(w))] += 1;
  }
  return counts;
}

Rational weigh(const std::vector<std::uint64_t>& counts, const Rational& p) {
  const int n = static_cast<int>(counts.size()) - 1;
  Rational total = 0;
  for (int j = 0; j <= n; ++j)
    if (counts[static_cast<std::size_t>(j)]) total += Rational(BigInt(counts[static_cast<std::size_t>(j)])) * power(p, j) * power(1 - p, n - j);
  return total;
}

std::uint32_t pack(const Word& W) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (W[i] != 0 && W[i] != 1) throw Error("binary word required");
    if (W[i]) bits |= 1u << i;
  }
  return bits;
}

Word unpack(std::uint32_t bits, Index k) {
  Word w(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = static_cast<int>(bits >> i & 1u);
  return w;
}

}  // namespace

Configuration bernoulli_config(const SampleSpec& spec) {
  check_probability(spec.p);
  if (spec.length < 1) throw Error("length must be positive");
  const BigInt num = boost::multiprecision::numerator(spec.p);
  const BigInt den = boost::multiprecision::denominator(spec.p);
  if (den > BigInt(std::numeric_limits<std::uint64_t>::max())) throw Error("probability denominator too large");
  const auto a = static_cast<u128>(num.convert_to<std::uint64_t>()) << 64;
  const auto q = static_cast<u128>(den.convert_to<std::uint64_t>());
  std::mt19937_64 gen(spec.seed);
  std::vector<int> cells(static_cast<std::size_t>(spec.length), 0);
  for (auto& c : cells)
    for (int j = 0; j < spec.lanes; ++j)
      if (static_cast<u128>(gen()) * q < a) ++c;
  return Configuration::ring(std::move(cells), spec.lanes);
}

Rational product_weight(const Word& A, const Rational& p, int M) {
  check_probability(p);
  Rational w = 1;
  for (int a : A) {
    if (a < 0 || a > M) throw Error("symbol outside [0, M]");
    w *= Rational(binomial(M, a)) * power(p, a) * power(1 - p, M - a);
  }
  return w;
}

Rational pushforward(int v, const Word& W, const Rational& p) { return pushforward_iterated(v, W, p, 1); }

Rational pushforward_iterated(int v, const Word& W, const Rational& p, int t) {
  if (v < 1) throw Error("velocity must be at least 1");
  if (t < 0) throw Error("negative step count");
  if (W.empty()) throw Error("empty word");
  check_probability(p);
  if (t == 0) return product_weight(W, p, 1);
  const int k = static_cast<int>(W.size());
  if (k + 2 * t * v > kEnumerationBudget) throw Error("enumeration budget");
  const std::uint32_t target = pack(W);
  auto counts = enumerate_images(v, k, t);
  return weigh(counts[target], p);
}

CylinderWeights product_cylinders(Index k, const Rational& p, int M) {
  if (k < 1) throw Error("window must be non-empty");
  double size = std::pow(M + 1.0, static_cast<double>(k));
  if (size > double(1u << kEnumerationBudget)) throw Error("enumeration budget");
  CylinderWeights cw;
  cw.window = {0, k - 1};
  Word w(static_cast<std::size_t>(k), 0);
  while (true) {
    cw.weights[w] = product_weight(w, p, M);
    Index i = 0;
    while (i < k && w[static_cast<std::size_t>(i)] == M) w[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return cw;
}

CylinderWeights pushforward_cylinders(int v, Index k, const Rational& p, int t) {
  if (k < 1) throw Error("window must be non-empty");
  if (t == 0) return product_cylinders(k, p, 1);
  check_probability(p);
  auto counts = enumerate_images(v, static_cast<int>(k), t);
  CylinderWeights cw;
  cw.window = {0, k - 1};
  for (std::uint32_t img = 0; img < counts.size(); ++img) cw.weights[unpack(img, k)] = weigh(counts[img], p);
  return cw;
}

CylinderWeights pushforward_weights(const CylinderWeights& weights, int v) {
  if (v < 1) throw Error("velocity must be at least 1");
  const Index K = weights.window.length();
  const Index k = K - v - 1;
  if (k < 1) throw Error("window too short to push forward");
  if (K > kEnumerationBudget) throw Error("enumeration budget");
  CylinderWeights out;
  out.window = {weights.window.start + v, weights.window.end - 1};
  for (std::uint32_t img = 0; img < (1u << k); ++img) out.weights[unpack(img, k)] = 0;
  for (const auto& [word, w] : weights.weights) {
    if (static_cast<Index>(word.size()) != K) throw Error("weight word does not match the window");
    std::uint32_t y = window_step(pack(word), static_cast<int>(K), v);
    out.weights[unpack((y >> v) & ((1u << k) - 1u), k)] += w;
  }
  return out;
}

bool is_shift_consistent(const CylinderWeights& weights) {
  Rational total = 0;
  std::map<Word, Rational> head, tail;
  for (const auto& [word, w] : weights.weights) {
    if (w < 0) return false;
    total += w;
    if (word.size() >= 2) {
      head[Word(word.begin(), word.end() - 1)] += w;
      tail[Word(word.begin() + 1, word.end())] += w;
    }
  }
  if (total != 1) return false;
  for (const auto& [word, w] : head) {
    auto it = tail.find(word);
    if ((it == tail.end() ? Rational(0) : it->second) != w) return false;
  }
  for (const auto& [word, w] : tail) {
    auto it = head.find(word);
    if ((it == head.end() ? Rational(0) : it->second) != w) return false;
  }
  return true;
}

bool translation_invariance_check(const CylinderWeights& weights, int v) {
  if (!is_shift_consistent(weights)) return false;
  if (weights.window.length() - v - 1 < 1) return true;
  return is_shift_consistent(pushforward_weights(weights, v));
}

}  // namespace trafficflow
