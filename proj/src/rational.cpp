#include "netbound/rational.hpp"

#include <cctype>
#include <cmath>

namespace netbound {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Rational parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw ParseError("not a number: '" + std::string(whole) + "'");
  }
  mpz_class z(std::string(digits), 10);
  return Rational(negative ? mpz_class(-z) : z);
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = mantissa.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = mantissa.substr(e + 1);
    mantissa = mantissa.substr(0, e);
    Rational ex = parse_integer(exp_part, text);
    if (abs(ex) > 10000) throw ParseError("exponent out of range: '" + std::string(text) + "'");
    exponent = ex.get_num().get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = mantissa.substr(0, dot);
    std::string_view frac_part = mantissa.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw ParseError("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) throw ParseError("not a number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Rational result(mpz_class(digits, 10));
  long shift = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) {
    result *= ten_pow;
  } else {
    result /= ten_pow;
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(text.substr(0, slash), text);
    Rational den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return parse_integer(text, text);
}

std::string to_fraction_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value has no rational form");
  Rational q(value);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value has no rational form");
  if (max_denominator < 1) throw std::invalid_argument("denominator bound must be positive");
  const Rational target = exact_rational(value);
  const mpz_class bound(static_cast<long>(max_denominator));
  if (target.get_den() <= bound) return target;

  // Convergents p/q of the continued fraction of target.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class num = target.get_num();
  mpz_class den = target.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class q2 = q0 + a * q1;
    if (q2 > bound) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class rem = num - a * den;
    num = den;
    den = rem;
    if (den == 0) break;
  }
  // Best semiconvergent with denominator within the bound.
  mpz_class k = (bound - q0) / q1;
  Rational semi(p0 + k * p1, q0 + k * q1);
  Rational conv(p1, q1);
  semi.canonicalize();
  conv.canonicalize();
  return abs(semi - target) < abs(conv - target) ? semi : conv;
}

}  // namespace netbound
