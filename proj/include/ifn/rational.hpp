#ifndef IFN_RATIONAL_HPP
#define IFN_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ifn/error.hpp"

namespace ifn {

using BigInt = boost::multiprecision::cpp_int;
/// Exact p/q, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

/// "p/q", or "n" when integral.
inline std::string to_string(const Rational& r) {
  if (is_integer(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::Overflow, "value " + v.str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

namespace detail {

inline bool parse_bigint(std::string_view s, BigInt& out) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i == s.size()) return false;
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = negative ? BigInt(-v) : v;
  return true;
}

}  // namespace detail

/// Accepts "n", "-n", "p/q". Throws InvalidDocument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::InvalidDocument, "not a rational number: \"" + std::string(text) + "\"");
  };
  const auto slash = text.find('/');
  BigInt num;
  if (slash == std::string_view::npos) {
    if (!detail::parse_bigint(text, num)) throw fail();
    return Rational(num);
  }
  BigInt den;
  const auto den_text = text.substr(slash + 1);
  if (!detail::parse_bigint(text.substr(0, slash), num) || den_text.empty() ||
      den_text[0] == '-' || den_text[0] == '+' || !detail::parse_bigint(den_text, den) ||
      den == 0) {
    throw fail();
  }
  return Rational(num, den);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / boost::multiprecision::gcd(a, b) * abs(b);
}

}  // namespace ifn

#endif  // IFN_RATIONAL_HPP
