#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "netbound/rational.hpp"

namespace netbound {

/// Exact element a + b*sqrt(Radicand) of the real quadratic field Q(sqrt(Radicand)).
/// Lets boundary points such as 1 - sqrt(2) be classified with zero tolerance.
template <int Radicand>
class QuadraticNumber {
  static_assert(Radicand > 1, "radicand must be a positive non-square");

 public:
  QuadraticNumber() = default;
  QuadraticNumber(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT
  QuadraticNumber(long v) : a_(v), b_(0) {}  // NOLINT

  static QuadraticNumber root() { return QuadraticNumber(0, 1); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }

  /// Sign of a + b*sqrt(R), decided by comparing a^2 and b^2 R when the parts disagree.
  int sign() const {
    const int sa = ::sgn(a_);
    const int sb = ::sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * Radicand;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(Radicand)); }

  std::string to_string() const {
    if (b_ == 0) return to_fraction_string(a_);
    std::string out = a_ == 0 ? std::string() : to_fraction_string(a_) + (b_ > 0 ? "+" : "");
    out += to_fraction_string(b_) + "*sqrt(" + std::to_string(Radicand) + ")";
    return out;
  }

  QuadraticNumber operator-() const { return QuadraticNumber(-a_, -b_); }
  QuadraticNumber& operator+=(const QuadraticNumber& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QuadraticNumber& operator-=(const QuadraticNumber& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QuadraticNumber& operator*=(const QuadraticNumber& o) {
    Rational a = a_ * o.a_ + b_ * o.b_ * Radicand;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QuadraticNumber& operator/=(const QuadraticNumber& o) {
    const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Radicand;
    if (norm == 0) throw std::domain_error("division by zero in quadratic field");
    *this *= QuadraticNumber(o.a_ / norm, -o.b_ / norm);
    return *this;
  }

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return y < x; }
  friend bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(y < x); }
  friend bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) { return os << x.to_string(); }

 private:
  Rational a_{0};
  Rational b_{0};
};

using Sqrt2Number = QuadraticNumber<2>;

template <int R>
QuadraticNumber<R> abs_value(const QuadraticNumber<R>& x) {
  return x.sign() < 0 ? -x : x;
}

template <int R>
double to_double(const QuadraticNumber<R>& x) {
  return x.to_double();
}

}  // namespace netbound
