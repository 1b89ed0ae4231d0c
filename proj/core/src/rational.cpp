#include "trafficflow/rational.hpp"

#include <cctype>

#include "trafficflow/error.hpp"

namespace trafficflow {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

namespace {

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw Error("bad number");
  BigInt v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error("bad number: " + std::string(s));
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error("zero denominator");
    r = Rational(parse_integer(text.substr(0, slash)), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt w = whole.empty() ? BigInt(0) : parse_integer(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_integer(frac);
    r = Rational(w * scale + f, scale);
  } else {
    r = Rational(parse_integer(text));
  }
  return negative ? Rational(-r) : r;
}

std::string to_fraction(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += '.';
    out += std::string(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace trafficflow
