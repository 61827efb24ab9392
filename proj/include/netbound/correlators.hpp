#pragma once

// Triangle and hexagon distributions in correlator form.
//
// Outcome ordering is fixed throughout the library: parties in the order
// (a, b, c) for the triangle and (a, b, c, a', b', c') for the hexagon, each
// output iterated +1 before -1, the first party most significant. Index 0 is
// therefore (+,+,+) and index 7 is (-,-,-).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "netbound/errors.hpp"
#include "netbound/rational.hpp"

namespace netbound {

struct TriangleOutcome {
  int a = 1;
  int b = 1;
  int c = 1;

  int parity() const { return a * b * c; }
  std::size_t index() const {
    return static_cast<std::size_t>((a < 0) * 4 + (b < 0) * 2 + (c < 0));
  }
  /// "++-" style label.
  std::string label() const;
  friend bool operator==(const TriangleOutcome&, const TriangleOutcome&) = default;
};

struct HexagonOutcome {
  // a, b, c, a', b', c'
  std::array<int, 6> signs{1, 1, 1, 1, 1, 1};

  int a() const { return signs[0]; }
  int b() const { return signs[1]; }
  int c() const { return signs[2]; }
  int ap() const { return signs[3]; }
  int bp() const { return signs[4]; }
  int cp() const { return signs[5]; }
  std::size_t index() const;
  HexagonOutcome flipped() const;
  friend bool operator==(const HexagonOutcome&, const HexagonOutcome&) = default;
};

const std::array<TriangleOutcome, 8>& triangle_outcomes();
const std::array<HexagonOutcome, 64>& hexagon_outcomes();

/// Makes a hexagon outcome, rejecting components other than +1/-1.
HexagonOutcome make_hexagon_outcome(int a, int b, int c, int ap, int bp, int cp);

enum class Correlator : std::uint8_t { A, B, C, AB, BC, AC, ABC };
inline constexpr std::array<Correlator, 7> kAllCorrelators = {
    Correlator::A, Correlator::B, Correlator::C, Correlator::AB, Correlator::BC, Correlator::AC, Correlator::ABC};
/// JSON key: "EA", ..., "EABC".
const char* correlator_key(Correlator c);
std::optional<Correlator> correlator_from_key(std::string_view key);

/// The seven correlators of a binary-output triangle distribution. Candidate
/// behaviors with negative reconstructed probabilities are representable;
/// validity is queried with triangle_positivity().
template <class T>
struct BasicTriangleBehavior {
  T ea{0}, eb{0}, ec{0};
  T eab{0}, ebc{0}, eac{0};
  T eabc{0};

  T& operator[](Correlator c) {
    switch (c) {
      case Correlator::A: return ea;
      case Correlator::B: return eb;
      case Correlator::C: return ec;
      case Correlator::AB: return eab;
      case Correlator::BC: return ebc;
      case Correlator::AC: return eac;
      case Correlator::ABC: break;
    }
    return eabc;
  }
  const T& operator[](Correlator c) const { return const_cast<BasicTriangleBehavior&>(*this)[c]; }

  bool in_range() const {
    for (Correlator c : kAllCorrelators) {
      if ((*this)[c] < T(-1) || (*this)[c] > T(1)) return false;
    }
    return true;
  }

  friend bool operator==(const BasicTriangleBehavior&, const BasicTriangleBehavior&) = default;
};

using TriangleBehavior = BasicTriangleBehavior<Rational>;

/// E_A = E_B = E_C = e1, all pairwise = e2, three-body = e3.
template <class T>
BasicTriangleBehavior<T> symmetric_behavior(const T& e1, const T& e2, const T& e3 = T(0)) {
  return {e1, e1, e1, e2, e2, e2, e3};
}

template <class T>
struct BasicTriangleDistribution {
  std::array<T, 8> p{};

  T& operator[](TriangleOutcome o) { return p[o.index()]; }
  const T& operator[](TriangleOutcome o) const { return p[o.index()]; }
  T total() const {
    T s(0);
    for (const auto& v : p) s += v;
    return s;
  }
};

using TriangleDistribution = BasicTriangleDistribution<Rational>;

/// 8 p(a,b,c) = 1 + a E_A + b E_B + c E_C + ab E_AB + ac E_AC + bc E_BC + abc E_ABC.
/// Negative for invalid behaviors.
template <class T>
T triangle_prob(const BasicTriangleBehavior<T>& e, TriangleOutcome o) {
  T s(1);
  s += T(o.a) * e.ea + T(o.b) * e.eb + T(o.c) * e.ec;
  s += T(o.a * o.b) * e.eab + T(o.a * o.c) * e.eac + T(o.b * o.c) * e.ebc;
  s += T(o.parity()) * e.eabc;
  return s / T(8);
}

template <class T>
BasicTriangleDistribution<T> distribution_from_behavior(const BasicTriangleBehavior<T>& e) {
  BasicTriangleDistribution<T> d;
  for (const auto& o : triangle_outcomes()) d[o] = triangle_prob(e, o);
  return d;
}

/// Inverse of distribution_from_behavior. Rational input must sum to 1
/// exactly; double input within `tolerance`. Throws NotNormalized.
template <class T>
BasicTriangleBehavior<T> behavior_from_distribution(const BasicTriangleDistribution<T>& d,
                                                    double tolerance = 1e-12) {
  const T total = d.total();
  if constexpr (std::is_same_v<T, double>) {
    if (abs_value(total - 1.0) > tolerance) throw NotNormalized("distribution sums to " + std::to_string(total));
  } else {
    if (total != T(1)) throw NotNormalized("distribution does not sum to 1");
  }
  BasicTriangleBehavior<T> e;
  for (const auto& o : triangle_outcomes()) {
    const T& p = d[o];
    e.ea += T(o.a) * p;
    e.eb += T(o.b) * p;
    e.ec += T(o.c) * p;
    e.eab += T(o.a * o.b) * p;
    e.ebc += T(o.b * o.c) * p;
    e.eac += T(o.a * o.c) * p;
    e.eabc += T(o.parity()) * p;
  }
  return e;
}

/// Outcomes whose reconstructed probability is strictly negative; empty iff
/// the behavior is a valid distribution.
template <class T>
std::vector<TriangleOutcome> triangle_positivity(const BasicTriangleBehavior<T>& e) {
  std::vector<TriangleOutcome> violated;
  for (const auto& o : triangle_outcomes()) {
    if (triangle_prob(e, o) < T(0)) violated.push_back(o);
  }
  return violated;
}

template <class T>
struct ClosedInterval {
  T lo;
  T hi;
  T midpoint() const { return (lo + hi) / T(2); }
};

/// Values of E_ABC in [-1, 1] for which every triangle probability is
/// nonnegative, holding the other six correlators fixed. Empty when none.
template <class T>
std::optional<ClosedInterval<T>> e_abc_positivity_interval(const BasicTriangleBehavior<T>& e) {
  T lo(-1), hi(1);
  for (const auto& o : triangle_outcomes()) {
    // 8p = rest + parity * E_ABC >= 0
    BasicTriangleBehavior<T> without = e;
    without.eabc = T(0);
    const T rest = triangle_prob(without, o) * T(8);
    if (o.parity() > 0) {
      if (-rest > lo) lo = -rest;
    } else {
      if (rest < hi) hi = rest;
    }
  }
  if (lo > hi) return std::nullopt;
  return ClosedInterval<T>{lo, hi};
}

/// Replaces E_ABC by the midpoint of its positivity interval, which maximizes
/// the smallest triangle probability over E_ABC.
template <class T>
std::optional<BasicTriangleBehavior<T>> with_slack_maximizing_e_abc(BasicTriangleBehavior<T> e) {
  auto interval = e_abc_positivity_interval(e);
  if (!interval) return std::nullopt;
  e.eabc = interval->midpoint();
  return e;
}

// ---------------------------------------------------------------------------
// Hexagon

enum class FreeVar : std::uint8_t { F3, F3p, F3pp, F4, F4p, F4pp, F5, F5p, F5pp, F6 };
inline constexpr std::size_t kNumFreeVars = 10;
const char* free_var_name(FreeVar v);

/// The ten hexagon correlators not fixed by the triangle.
template <class T>
struct BasicHexagonFreeVars {
  std::array<T, kNumFreeVars> values{};

  T& operator[](FreeVar v) { return values[static_cast<std::size_t>(v)]; }
  const T& operator[](FreeVar v) const { return values[static_cast<std::size_t>(v)]; }
};

using HexagonFreeVars = BasicHexagonFreeVars<Rational>;

namespace hexagon {

/// Party position bits in (a, b, c, a', b', c') order.
inline constexpr std::uint8_t kA = 1, kB = 2, kC = 4, kAp = 8, kBp = 16, kCp = 32;

/// Known-correlator factors a term may carry, by exponent.
enum KnownFactor : std::uint8_t { kEA, kEB, kEC, kEAB, kEBC, kEAC, kNumKnown };

/// One term of the hexagon expansion: (sum of outcome monomials) times a
/// product of known triangle correlators, times at most one free variable.
struct Term {
  std::array<std::uint8_t, 2> monomials;  // position bitmasks; only the first num_monomials are used
  std::uint8_t num_monomials;
  std::array<std::uint8_t, kNumKnown> power;
  int free_var;  // -1 when the term has no free variable
};

/// The 36 terms of 64 p(a,b,c,a',b',c').
const std::vector<Term>& expansion();

inline int monomial_sign(std::uint8_t mask, const HexagonOutcome& o) {
  int s = 1;
  for (std::size_t i = 0; i < 6; ++i) {
    if (mask & (1u << i)) s *= o.signs[i];
  }
  return s;
}

inline int term_sign_sum(const Term& t, const HexagonOutcome& o) {
  int s = 0;
  for (std::size_t k = 0; k < t.num_monomials; ++k) s += monomial_sign(t.monomials[k], o);
  return s;
}

}  // namespace hexagon

/// 64 p(o) as an affine form in the free variables: constant + coefficients . F.
template <class T>
struct BasicHexagonForm {
  T constant{0};
  std::array<T, kNumFreeVars> coefficients{};

  T evaluate(const BasicHexagonFreeVars<T>& f) const {
    T s = constant;
    for (std::size_t i = 0; i < kNumFreeVars; ++i) s += coefficients[i] * f.values[i];
    return s;
  }
};

template <class T>
BasicHexagonForm<T> hexagon_form(const BasicTriangleBehavior<T>& e, const HexagonOutcome& o) {
  const std::array<const T*, hexagon::kNumKnown> known = {&e.ea, &e.eb, &e.ec, &e.eab, &e.ebc, &e.eac};
  BasicHexagonForm<T> form;
  for (const auto& term : hexagon::expansion()) {
    const int sign = hexagon::term_sign_sum(term, o);
    if (sign == 0) continue;
    T value(sign);
    for (std::size_t k = 0; k < hexagon::kNumKnown; ++k) {
      for (std::uint8_t p = 0; p < term.power[k]; ++p) value *= *known[k];
    }
    if (term.free_var < 0) {
      form.constant += value;
    } else {
      form.coefficients[static_cast<std::size_t>(term.free_var)] += value;
    }
  }
  return form;
}

template <class T>
T hexagon_prob(const BasicTriangleBehavior<T>& e, const BasicHexagonFreeVars<T>& f, const HexagonOutcome& o) {
  return hexagon_form(e, o).evaluate(f) / T(64);
}

}  // namespace netbound
