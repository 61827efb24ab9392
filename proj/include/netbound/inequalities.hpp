#pragma once

// Closed-form NSI inequalities on triangle correlators and the Finner bound.
// Every check is a template over the number type so that exact rationals,
// exact elements of Q(sqrt 2) and doubles share one implementation.

#include <string>
#include <vector>

#include "netbound/correlators.hpp"
#include "netbound/quadratic.hpp"
#include "netbound/rational.hpp"

namespace netbound {

enum class IneqStatus { Established, Conjectured };

const char* status_name(IneqStatus s);

/// lhs <= rhs, margin = rhs - lhs.
template <class T>
struct BasicIneqReport {
  std::string name;
  T lhs{0};
  T rhs{0};
  T margin{0};
  bool satisfied = true;
  IneqStatus status = IneqStatus::Established;
};

using IneqReport = BasicIneqReport<Rational>;

template <class T>
BasicIneqReport<T> make_report(std::string name, T lhs, T rhs, IneqStatus status = IneqStatus::Established) {
  BasicIneqReport<T> r;
  r.name = std::move(name);
  r.margin = rhs - lhs;
  r.satisfied = !(r.margin < T(0));
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.status = status;
  return r;
}

/// (1 +/- E_XY)^2 - E_YZ^2 - E_XZ^2 >= 0 for XY in AB, BC, AC and both signs,
/// reported as E_YZ^2 + E_XZ^2 <= (1 +/- E_XY)^2. Names "single[AB+]" etc.
template <class T>
std::vector<BasicIneqReport<T>> check_single_family(const BasicTriangleBehavior<T>& e) {
  struct Pair {
    const char* name;
    const T* xy;
    const T* other1;
    const T* other2;
  };
  const Pair pairs[] = {{"AB", &e.eab, &e.ebc, &e.eac}, {"BC", &e.ebc, &e.eab, &e.eac}, {"AC", &e.eac, &e.eab, &e.ebc}};
  std::vector<BasicIneqReport<T>> out;
  for (const auto& p : pairs) {
    for (int s : {1, -1}) {
      const T base = T(1) + T(s) * *p.xy;
      out.push_back(make_report<T>(std::string("single[") + p.name + (s > 0 ? "+" : "-") + "]",
                                *p.other1 * *p.other1 + *p.other2 * *p.other2, base * base));
    }
  }
  return out;
}

template <class T>
bool single_family_satisfied(const BasicTriangleBehavior<T>& e) {
  for (const auto& r : check_single_family(e)) {
    if (!r.satisfied) return false;
  }
  return true;
}

/// (1 + E_AB)^2 + (1 + E_BC)^2 + (1 + E_AC)^2 <= 6
template <class T>
BasicIneqReport<T> check_nice(const BasicTriangleBehavior<T>& e) {
  const T ab = T(1) + e.eab, bc = T(1) + e.ebc, ac = T(1) + e.eac;
  return make_report<T>("nice", ab * ab + bc * bc + ac * ac, T(6));
}

/// (1 + 2|E_1| + E_2)^2 <= 2 (1 + |E_1|)^3
template <class T>
BasicIneqReport<T> check_nice2(const T& e1, const T& e2) {
  const T a = abs_value(e1);
  const T l = T(1) + T(2) * a + e2;
  const T one_a = T(1) + a;
  return make_report<T>("nice2", l * l, T(2) * one_a * one_a * one_a);
}

/// (1 + |E_A| + |E_B| + E_AB)^2 + cyclic <= 6 (1 + |E_A|)(1 + |E_B|)(1 + |E_C|).
/// Pairwise terms enter without absolute value.
template <class T>
BasicIneqReport<T> check_conjecture(const BasicTriangleBehavior<T>& e) {
  const T a = abs_value(e.ea), b = abs_value(e.eb), c = abs_value(e.ec);
  const T ab = T(1) + a + b + e.eab;
  const T bc = T(1) + b + c + e.ebc;
  const T ca = T(1) + c + a + e.eac;
  return make_report<T>("conjecture", ab * ab + bc * bc + ca * ca, T(6) * (T(1) + a) * (T(1) + b) * (T(1) + c),
                     IneqStatus::Conjectured);
}

/// E_AB + E_BC + E_AC >= -1, from p(+++) + p(---) >= 0.
template <class T>
BasicIneqReport<T> check_pairwise_positivity(const BasicTriangleBehavior<T>& e) {
  return make_report<T>("positivity", T(-1), e.eab + e.ebc + e.eac);
}

// ---------------------------------------------------------------------------
// Finner bound p(abc) <= sqrt(p_A(a) p_B(b) p_C(c)).

template <class T>
struct FinnerPoint {
  T p{0};
  T q{0};
};

/// p P_{+++} + q P_{---} + (1 - p - q) times the uniform mixture of the six
/// mixed-sign deterministic distributions. Throws std::invalid_argument
/// unless p, q >= 0 and p + q <= 1.
template <class T>
BasicTriangleDistribution<T> finner_pq_distribution(const FinnerPoint<T>& pt) {
  if (pt.p < T(0) || pt.q < T(0) || T(1) < pt.p + pt.q) {
    throw std::invalid_argument("Finner point needs p, q >= 0 and p + q <= 1");
  }
  BasicTriangleDistribution<T> d;
  const T mixed = (T(1) - pt.p - pt.q) / T(6);
  for (const auto& o : triangle_outcomes()) {
    if (o.a == o.b && o.b == o.c) {
      d[o] = o.a > 0 ? pt.p : pt.q;
    } else {
      d[o] = mixed;
    }
  }
  return d;
}

/// Largest q with p_{p,q} satisfying the bound at (+,+,+): 1 + p - 2 p^(2/3).
double finner_threshold(double p);

/// One report per outcome, in squared form p(abc)|p(abc)| <= p_A(a) p_B(b) p_C(c)
/// (names "finner[+-+]"). Rational input must be normalized exactly; double
/// input within 1e-12, and a double report counts as satisfied when its
/// margin is at least -tolerance. Throws NotNormalized.
template <class T>
std::vector<BasicIneqReport<T>> finner_check(const BasicTriangleDistribution<T>& d, double tolerance = 1e-12) {
  const auto e = behavior_from_distribution(d, tolerance);  // validates normalization
  const T pa_plus = (T(1) + e.ea) / T(2);
  const T pb_plus = (T(1) + e.eb) / T(2);
  const T pc_plus = (T(1) + e.ec) / T(2);
  std::vector<BasicIneqReport<T>> out;
  for (const auto& o : triangle_outcomes()) {
    const T pa = o.a > 0 ? pa_plus : T(1) - pa_plus;
    const T pb = o.b > 0 ? pb_plus : T(1) - pb_plus;
    const T pc = o.c > 0 ? pc_plus : T(1) - pc_plus;
    const T& p = d[o];
    auto report = make_report<T>("finner[" + o.label() + "]", p * abs_value(p), pa * pb * pc, IneqStatus::Conjectured);
    if constexpr (std::is_same_v<T, double>) report.satisfied = report.margin >= -tolerance;
    out.push_back(std::move(report));
  }
  return out;
}

template <class T>
bool finner_satisfied(const BasicTriangleDistribution<T>& d, double tolerance = 1e-12) {
  for (const auto& r : finner_check(d, tolerance)) {
    if (!r.satisfied) return false;
  }
  return true;
}

/// Single family, nice, conjecture and pairwise positivity for one behavior;
/// nice2 is added when the behavior is symmetric.
template <class T>
std::vector<BasicIneqReport<T>> check_all(const BasicTriangleBehavior<T>& e) {
  auto out = check_single_family(e);
  out.push_back(check_nice(e));
  if (e.ea == e.eb && e.eb == e.ec && e.eab == e.ebc && e.ebc == e.eac) out.push_back(check_nice2(e.ea, e.eab));
  out.push_back(check_conjecture(e));
  out.push_back(check_pairwise_positivity(e));
  return out;
}

}  // namespace netbound
