#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace fixtrace {

// Exact arithmetic everywhere: coefficients, matrix entries and coordinates
// never touch floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline int sign_of(const Rat& x) {
  if (x > 0) return 1;
  if (x < 0) return -1;
  return 0;
}

// Parses "3", "-3", "3/4", "-3/4". Whitespace around the number is ignored.
inline std::optional<Rat> parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_int(s)) return std::nullopt;
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  Int d(den);
  if (d == 0) return std::nullopt;
  return Rat(Int(num), d);
}

inline std::string rational_to_string(const Rat& x) {
  Int num = numerator(x);
  Int den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace fixtrace
