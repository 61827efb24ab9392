#include "netbound/lpfeas.hpp"

#include <cmath>

#include "netbound/errors.hpp"
#include "netbound/simplex.hpp"

namespace netbound {

LinearProgram build_lp(const TriangleBehavior& behavior) {
  LinearProgram lp;
  lp.rows.reserve(LinearProgram::kHexagonRows + LinearProgram::kTriangleRows);
  for (const auto& o : hexagon_outcomes()) {
    const auto form = hexagon_form(behavior, o);
    LpRow row;
    row.coefficients = form.coefficients;
    row.rhs = -form.constant;
    lp.rows.push_back(std::move(row));
  }
  for (const auto& o : triangle_outcomes()) {
    LpRow row;
    row.rhs = -(triangle_prob(behavior, o) * 8);
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

FeasibilityResult nsi_feasible(const TriangleBehavior& behavior) {
  const auto violated = triangle_positivity(behavior);
  if (!violated.empty()) {
    throw PositivityViolation("triangle probability negative at outcome " + violated.front().label());
  }
  const LinearProgram lp = build_lp(behavior);

  // Farkas dual over the hexagon rows: y >= 0 with sum_o y_o coeff_o = 0 and
  // sum_o y_o constant_o = -1. The triangle rows are slack and carry no
  // free variable, so they never enter a certificate.
  constexpr std::size_t n = LinearProgram::kHexagonRows;
  lp::ColumnMatrix<Rational> M(kNumFreeVars + 1, n);
  for (std::size_t o = 0; o < n; ++o) {
    const auto& row = lp.rows[o];
    for (std::size_t k = 0; k < kNumFreeVars; ++k) M(k, o) = row.coefficients[k];
    M(kNumFreeVars, o) = -row.rhs;
  }
  std::vector<Rational> h(kNumFreeVars + 1, Rational(0));
  h[kNumFreeVars] = -1;

  const auto solution = lp::solve_nonnegative(M, h);
  FeasibilityResult result;
  if (solution.status == lp::Feasibility::Feasible) {
    result.status = NsiStatus::Infeasible;
    result.certificate.assign(lp.rows.size(), Rational(0));
    for (std::size_t o = 0; o < n; ++o) result.certificate[o] = solution.x[o];
    if (!certificate_is_valid(lp, result.certificate)) {
      throw std::logic_error("simplex returned an invalid infeasibility certificate");
    }
    return result;
  }
  // Ray (u, t) with A u + c t >= 0 and t > 0; the witness is u / t.
  const Rational& t = solution.farkas[kNumFreeVars];
  if (t <= 0) throw std::logic_error("simplex returned a ray without a positive scale");
  HexagonFreeVars witness;
  for (std::size_t k = 0; k < kNumFreeVars; ++k) witness.values[k] = solution.farkas[k] / t;
  if (!witness_is_valid(behavior, witness)) {
    throw std::logic_error("simplex returned an invalid hexagon witness");
  }
  result.status = NsiStatus::Feasible;
  result.witness = std::move(witness);
  return result;
}

bool witness_is_valid(const TriangleBehavior& behavior, const HexagonFreeVars& witness) {
  for (const auto& o : hexagon_outcomes()) {
    if (hexagon_form(behavior, o).evaluate(witness) < 0) return false;
  }
  return true;
}

bool certificate_is_valid(const LinearProgram& lp, const std::vector<Rational>& certificate) {
  if (certificate.size() != lp.rows.size()) return false;
  std::array<Rational, kNumFreeVars> combined{};
  Rational rhs(0);
  bool any = false;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const Rational& y = certificate[r];
    if (y < 0) return false;
    if (sgn(y) == 0) continue;
    any = true;
    for (std::size_t k = 0; k < kNumFreeVars; ++k) combined[k] += y * lp.rows[r].coefficients[k];
    rhs += y * lp.rows[r].rhs;
  }
  if (!any) return false;
  for (const auto& c : combined) {
    if (sgn(c) != 0) return false;
  }
  // 0 = combined . F >= rhs > 0 is a contradiction.
  return rhs > 0;
}

bool symmetric_point_feasible(const Rational& e1, const Rational& e2) {
  auto behavior = with_slack_maximizing_e_abc(symmetric_behavior(e1, e2));
  if (!behavior) return false;
  return nsi_feasible(*behavior).feasible();
}

E2Bracket bisect_max_e2(const Rational& e1, const Rational& tol) {
  if (abs(e1) > 1) throw std::invalid_argument("|e1| must not exceed 1");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  E2Bracket bracket;
  if (symmetric_point_feasible(e1, Rational(1))) {
    bracket.feasible = bracket.infeasible = bracket.value = 1;
    return bracket;
  }
  Rational lo = e1 * e1;
  Rational hi = 1;
  if (!symmetric_point_feasible(e1, lo)) {
    throw std::logic_error("product point E2 = E1^2 reported infeasible");
  }
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (symmetric_point_feasible(e1, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  bracket.feasible = lo;
  bracket.infeasible = hi;
  bracket.value = (lo + hi) / 2;
  return bracket;
}

Rational max_feasible_e2(const Rational& e1, const Rational& tol) { return bisect_max_e2(e1, tol).value; }

double nice2_max_e2(double e1) {
  const double a = std::fabs(e1);
  return std::sqrt(2.0 * std::pow(1.0 + a, 3)) - 1.0 - 2.0 * a;
}

}  // namespace netbound
