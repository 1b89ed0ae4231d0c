#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trafficflow/lattice.hpp"

namespace trafficflow {

// ONE when gap == 0, otherwise the block 0_gap of `gap` empty sites.
struct FastSymbol {
  int gap = 0;

  static FastSymbol one() { return {0}; }
  static FastSymbol zero(int i) { return {i}; }
  bool is_one() const { return gap == 0; }
  bool operator==(const FastSymbol&) const = default;
};

struct FastWord {
  enum class Kind { ring, padded };

  std::vector<FastSymbol> symbols;
  int v = 1;
  Kind kind = Kind::padded;
  // Site of the first symbol after decoding.
  Index offset = 0;

  bool is_ring() const { return kind == Kind::ring; }
  Index ones() const;
  Index sites() const;
  bool operator==(const FastWord&) const = default;
};

// "0_2 0_2 0_1 1" or "0_2,1". A bare "0" means 0_1.
FastWord parse_fast_word(std::string_view text, int v);
std::string to_string(const FastWord& w);

FastWord encode(const Configuration& x, int v);
Configuration decode(const FastWord& y);
FastWord normalize(const FastWord& y);

// Simultaneous swaps 1 0_i -> 0_i 1.
FastWord step_substitution(const FastWord& y);
FastWord step_tilde(const FastWord& y);

int ind(FastSymbol s, int v);

// Largest k < i (0-based) such that the Ind-sum over A[k..i] exceeds -v.
std::optional<Index> fast_minimal_index(const FastWord& A, Index i);

// Number of ONE symbols minus one, for a minimal word ending in ONE.
Index fast_lifetime(const FastWord& A);

}  // namespace trafficflow
