#ifndef OMNISCIO_RATIONAL_HPP
#define OMNISCIO_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omniscio {

/// Exact rational number. GMP keeps it in lowest terms with a positive
/// denominator, so two equal values have identical representations.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RationalVector = std::vector<Rational>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline Integer denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

/// Renders as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const Integer den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "p/q", "p" or a plain decimal such as "-0.125".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational: \"" + s + "\"");
  };
  if (s.empty()) return fail();
  auto is_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto int_of = [](std::string_view t) {
    if (!t.empty() && t[0] == '+') t.remove_prefix(1);
    return Integer(std::string(t));
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string_view num(s.data(), slash);
    std::string_view den(s.data() + slash + 1, s.size() - slash - 1);
    if (!is_int(num) || !is_int(den)) return fail();
    Integer d = int_of(den);
    if (d == 0) return fail();
    return Rational(int_of(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || !is_int("0" + frac) || frac[0] == '-' || frac[0] == '+')
      return fail();
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_int(whole)) return fail();
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer magnitude = abs(int_of(whole)) * scale + Integer(frac);
    return Rational(negative ? Integer(-magnitude) : magnitude, scale);
  }
  if (!is_int(s)) return fail();
  return Rational(int_of(s));
}

/// Text rendering used by reports: "9/4 (≈2.25)".
inline std::string to_display(const Rational& r) {
  std::ostringstream out;
  out.precision(12);
  out << to_double(r);
  return to_string(r) + " (≈" + out.str() + ")";
}

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// |a - b| <= tol. With tol == 0 this is exact equality.
inline bool approx_equal(const Rational& a, const Rational& b, const Rational& tol) {
  return abs_of(a - b) <= tol;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace omniscio

#endif  // OMNISCIO_RATIONAL_HPP
