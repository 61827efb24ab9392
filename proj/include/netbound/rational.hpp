#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netbound {

using Rational = mpq_class;

/// Denominator bound used when a floating-point value enters exact code.
inline constexpr std::int64_t kDefaultDenominatorBound = 1'000'000'000;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num/den in canonical form (mpq_class(num, den) alone is not canonicalized).
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den", an integer, or a decimal with optional exponent
/// ("-0.41", "1e-4") into an exact rational.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" for integers.
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

/// Best rational approximation of `value` whose denominator does not exceed
/// `max_denominator` (continued-fraction convergents and semiconvergents).
Rational rational_from_double(double value,
                              std::int64_t max_denominator = kDefaultDenominatorBound);

/// Exact binary value of a finite double.
Rational exact_rational(double value);

inline Rational abs_value(const Rational& x) { return abs(x); }
inline double abs_value(double x) { return x < 0 ? -x : x; }
inline double to_double(double x) { return x; }

}  // namespace netbound
