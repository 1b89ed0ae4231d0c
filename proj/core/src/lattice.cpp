#include "trafficflow/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "trafficflow/error.hpp"

namespace trafficflow {

Configuration::Configuration(std::vector<int> cells, int lanes, Boundary boundary)
    : cells_(std::move(cells)), lanes_(lanes), boundary_(boundary) {
  if (lanes_ < 1) throw Error("lanes must be positive");
  if (cells_.empty()) throw Error("configuration must have at least one site");
  for (int c : cells_)
    if (c < 0 || c > lanes_) throw Error("cell value outside [0, lanes]");
  if (!boundary_.is_ring()) {
    auto ok = [&](int f) { return f == 0 || f == lanes_; };
    if (!ok(boundary_.left_fill) || !ok(boundary_.right_fill)) throw Error("fill must be 0 or lanes");
  } else {
    boundary_.left_fill = boundary_.right_fill = 0;
  }
}

Configuration Configuration::ring(std::vector<int> cells, int lanes) {
  return Configuration(std::move(cells), lanes, Boundary::ring());
}

Configuration Configuration::padded(std::vector<int> cells, int lanes, int left_fill, int right_fill) {
  return Configuration(std::move(cells), lanes, Boundary::padded(left_fill, right_fill));
}

Configuration Configuration::parse(std::string_view digits, int lanes, Boundary boundary) {
  return Configuration(parse_word(digits), lanes, boundary);
}

Index Configuration::particles() const {
  return std::accumulate(cells_.begin(), cells_.end(), Index{0});
}

std::string Configuration::to_string() const { return word_to_string(cells_); }

Word parse_word(std::string_view digits) {
  Word w;
  for (char c : digits) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad site value '" + std::string(1, c) + "'");
    w.push_back(c - '0');
  }
  if (w.empty()) throw Error("empty word");
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (int c : w) {
    if (c < 10) {
      s += static_cast<char>('0' + c);
    } else {
      s += '(' + std::to_string(c) + ')';
    }
  }
  return s;
}

Word extract(const Configuration& x, const WindowSpec& w) {
  if (w.end < w.start) throw Error("window end before start");
  Word out;
  out.reserve(static_cast<std::size_t>(w.length()));
  for (Index i = w.start; i <= w.end; ++i) out.push_back(x.at(i));
  return out;
}

Boundary parse_boundary(std::string_view text) {
  if (text == "ring") return Boundary::ring();
  if (text.rfind("padded", 0) == 0) {
    std::string_view rest = text.substr(6);
    if (rest.empty()) return Boundary::padded(0, 0);
    if (rest.front() != ':') throw Error("bad boundary: " + std::string(text));
    rest.remove_prefix(1);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw Error("bad boundary: " + std::string(text));
    auto num = [&](std::string_view s) {
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error("bad boundary: " + std::string(text));
      return std::stoi(std::string(s));
    };
    return Boundary::padded(num(rest.substr(0, colon)), num(rest.substr(colon + 1)));
  }
  throw Error("bad boundary: " + std::string(text));
}

std::string boundary_to_string(const Boundary& b) {
  if (b.is_ring()) return "ring";
  return "padded:" + std::to_string(b.left_fill) + ":" + std::to_string(b.right_fill);
}

}  // namespace trafficflow
