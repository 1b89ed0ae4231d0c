#include "trafficflow/substitution.hpp"

#include <cctype>
#include <sstream>

#include "trafficflow/error.hpp"

namespace trafficflow {
namespace {

void check_velocity(int v) {
  if (v < 1) throw Error("velocity must be at least 1");
}

// n zeros between particles: floor(n/v) copies of 0_v, then 0_{n mod v}.
void push_gap(std::vector<FastSymbol>& out, Index n, int v) {
  for (Index k = 0; k < n / v; ++k) out.push_back(FastSymbol::zero(v));
  if (n % v) out.push_back(FastSymbol::zero(static_cast<int>(n % v)));
}

// Leading zeros of a tail: the remainder comes first.
void push_head(std::vector<FastSymbol>& out, Index n, int v) {
  if (n % v) out.push_back(FastSymbol::zero(static_cast<int>(n % v)));
  for (Index k = 0; k < n / v; ++k) out.push_back(FastSymbol::zero(v));
}

}  // namespace

Index FastWord::ones() const {
  Index n = 0;
  for (auto s : symbols) n += s.is_one();
  return n;
}

Index FastWord::sites() const {
  Index n = 0;
  for (auto s : symbols) n += s.is_one() ? 1 : s.gap;
  return n;
}

FastWord parse_fast_word(std::string_view text, int v) {
  check_velocity(v);
  FastWord w;
  w.v = v;
  std::string buf(text);
  for (char& c : buf)
    if (c == ',') c = ' ';
  std::istringstream in(buf);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") {
      w.symbols.push_back(FastSymbol::one());
    } else if (tok == "0") {
      w.symbols.push_back(FastSymbol::zero(1));
    } else if (tok.size() > 2 && tok[0] == '0' && tok[1] == '_') {
      int i = 0;
      for (std::size_t k = 2; k < tok.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(tok[k]))) throw Error("bad fast symbol: " + tok);
        i = i * 10 + (tok[k] - '0');
      }
      if (i < 1 || i > v) throw Error("zero index outside [1, v]: " + tok);
      w.symbols.push_back(FastSymbol::zero(i));
    } else {
      throw Error("bad fast symbol: " + tok);
    }
  }
  if (w.symbols.empty()) throw Error("empty fast word");
  return w;
}

std::string to_string(const FastWord& w) {
  std::string s;
  for (std::size_t k = 0; k < w.symbols.size(); ++k) {
    if (k) s += ' ';
    s += w.symbols[k].is_one() ? std::string("1") : "0_" + std::to_string(w.symbols[k].gap);
  }
  return s;
}

FastWord encode(const Configuration& x, int v) {
  check_velocity(v);
  if (x.lanes() != 1) throw Error("single-lane configuration required");
  const Index L = x.size();
  std::vector<Index> sites;
  for (Index i = 0; i < L; ++i)
    if (x[i]) sites.push_back(i);
  FastWord w;
  w.v = v;
  if (x.is_ring()) {
    if (sites.empty()) throw Error("no gap anchor");
    w.kind = FastWord::Kind::ring;
    w.offset = sites.front();
    const std::size_t n = sites.size();
    for (std::size_t k = 0; k < n; ++k) {
      w.symbols.push_back(FastSymbol::one());
      Index gap = n == 1 ? L - 1 : (sites[(k + 1) % n] - sites[k] - 1 + L) % L;
      push_gap(w.symbols, gap, v);
    }
    return w;
  }
  const Boundary& b = x.boundary();
  if (b.left_fill != 0 || b.right_fill != 0) throw Error("fast coding needs empty tails");
  w.kind = FastWord::Kind::padded;
  w.offset = 0;
  if (sites.empty()) {
    push_head(w.symbols, L, v);
    return w;
  }
  push_head(w.symbols, sites.front(), v);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    w.symbols.push_back(FastSymbol::one());
    if (k + 1 < sites.size()) push_gap(w.symbols, sites[k + 1] - sites[k] - 1, v);
  }
  // The right tail is all 0_v, so the trailing zeros round up.
  const Index tail = L - 1 - sites.back();
  for (Index k = 0; k < (tail + v - 1) / v; ++k) w.symbols.push_back(FastSymbol::zero(v));
  return w;
}

Configuration decode(const FastWord& y) {
  const Index n = y.sites();
  if (n == 0) throw Error("empty fast word");
  if (y.is_ring()) {
    std::vector<int> cells(static_cast<std::size_t>(n), 0);
    Index pos = ((y.offset % n) + n) % n;
    for (auto s : y.symbols) {
      if (s.is_one()) {
        cells[static_cast<std::size_t>(pos)] = 1;
        pos = (pos + 1) % n;
      } else {
        pos = (pos + s.gap) % n;
      }
    }
    return Configuration::ring(std::move(cells));
  }
  if (y.offset < 0) throw Error("negative offset on a padded word");
  std::vector<int> cells(static_cast<std::size_t>(y.offset), 0);
  for (auto s : y.symbols) {
    if (s.is_one()) {
      cells.push_back(1);
    } else {
      cells.insert(cells.end(), static_cast<std::size_t>(s.gap), 0);
    }
  }
  return Configuration::padded(std::move(cells), 1, 0, 0);
}

FastWord normalize(const FastWord& y) { return encode(decode(y), y.v); }

FastWord step_substitution(const FastWord& y) {
  FastWord in = y;
  if (!in.is_ring() && !in.symbols.empty() && in.symbols.back().is_one())
    in.symbols.push_back(FastSymbol::zero(in.v));
  FastWord out = in;
  const std::size_t n = in.symbols.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (in.symbols[i].is_one() && !in.symbols[i + 1].is_one()) {
      out.symbols[i] = in.symbols[i + 1];
      out.symbols[i + 1] = FastSymbol::one();
    }
  }
  if (in.is_ring() && n >= 2 && in.symbols[n - 1].is_one() && !in.symbols[0].is_one()) {
    const int gap = in.symbols[0].gap;
    out.symbols[n - 1] = in.symbols[0];
    out.symbols[0] = FastSymbol::one();
    out.offset = in.offset + gap - 1;
  }
  return out;
}

FastWord step_tilde(const FastWord& y) { return normalize(step_substitution(y)); }

int ind(FastSymbol s, int v) { return s.is_one() ? -v : s.gap; }

std::optional<Index> fast_minimal_index(const FastWord& A, Index i) {
  if (i < 0 || i >= static_cast<Index>(A.symbols.size())) throw Error("index outside the word");
  long long sum = ind(A.symbols[static_cast<std::size_t>(i)], A.v);
  for (Index k = i - 1; k >= 0; --k) {
    sum += ind(A.symbols[static_cast<std::size_t>(k)], A.v);
    if (sum > -A.v) return k;
  }
  return std::nullopt;
}

Index fast_lifetime(const FastWord& A) {
  if (A.symbols.empty() || !A.symbols.back().is_one()) throw Error("not a minimal fast word");
  auto k = fast_minimal_index(A, static_cast<Index>(A.symbols.size()) - 1);
  if (!k || *k != 0) throw Error("not a minimal fast word");
  return A.ones() - 1;
}

}  // namespace trafficflow
