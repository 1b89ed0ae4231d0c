#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace trafficflow {

using Index = std::ptrdiff_t;

// Site values of a word. The alphabet bound M travels with the caller.
using Word = std::vector<int>;

struct Boundary {
  enum class Kind { ring, padded };

  Kind kind = Kind::ring;
  int left_fill = 0;
  int right_fill = 0;

  static Boundary ring() { return {}; }
  static Boundary padded(int left, int right) { return {Kind::padded, left, right}; }

  bool is_ring() const { return kind == Kind::ring; }
  bool operator==(const Boundary&) const = default;
};

// Inclusive index range. Padded configurations resolve indices outside the
// core to the fill values; rings reduce them modulo the length.
struct WindowSpec {
  Index start = 0;
  Index end = 0;

  Index length() const { return end - start + 1; }
  bool operator==(const WindowSpec&) const = default;
};

class Configuration {
 public:
  Configuration() = default;
  Configuration(std::vector<int> cells, int lanes, Boundary boundary = Boundary::ring());

  static Configuration ring(std::vector<int> cells, int lanes = 1);
  static Configuration padded(std::vector<int> cells, int lanes, int left_fill, int right_fill);

  // Digit string such as "0210". Whitespace and commas are ignored.
  static Configuration parse(std::string_view digits, int lanes, Boundary boundary = Boundary::ring());

  const std::vector<int>& cells() const { return cells_; }
  Index size() const { return static_cast<Index>(cells_.size()); }
  int lanes() const { return lanes_; }
  const Boundary& boundary() const { return boundary_; }
  bool is_ring() const { return boundary_.is_ring(); }

  int operator[](Index i) const { return cells_[static_cast<std::size_t>(i)]; }

  // Value at any index under the boundary convention.
  int at(Index i) const {
    const Index n = size();
    if (i >= 0 && i < n) return cells_[static_cast<std::size_t>(i)];
    if (boundary_.is_ring()) {
      Index r = i % n;
      if (r < 0) r += n;
      return cells_[static_cast<std::size_t>(r)];
    }
    return i < 0 ? boundary_.left_fill : boundary_.right_fill;
  }

  // Reduces a ring index into [0, size). Padded indices are returned as is.
  Index wrap(Index i) const {
    if (!boundary_.is_ring()) return i;
    Index r = i % size();
    return r < 0 ? r + size() : r;
  }

  Index particles() const;
  std::string to_string() const;

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<int> cells_;
  int lanes_ = 1;
  Boundary boundary_;
};

Word parse_word(std::string_view digits);
std::string word_to_string(const Word& w);

// Subword x[w.start, w.end] under x's boundary convention.
Word extract(const Configuration& x, const WindowSpec& w);

// "ring" or "padded:LF:RF".
Boundary parse_boundary(std::string_view text);
std::string boundary_to_string(const Boundary& b);

}  // namespace trafficflow
