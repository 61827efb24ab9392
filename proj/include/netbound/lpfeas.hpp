#pragma once

// NSI compatibility of a triangle behavior: does some assignment of the ten
// free hexagon correlators make all 64 hexagon probabilities nonnegative?

#include <array>
#include <optional>
#include <vector>

#include "netbound/correlators.hpp"
#include "netbound/rational.hpp"

namespace netbound {

/// One constraint  coefficients . F >= rhs, in units of 64 p (hexagon rows)
/// or 8 p (triangle rows).
struct LpRow {
  std::array<Rational, kNumFreeVars> coefficients{};
  Rational rhs{0};
};

struct LinearProgram {
  static constexpr std::size_t kHexagonRows = 64;
  static constexpr std::size_t kTriangleRows = 8;

  std::vector<LpRow> rows;  // hexagon rows in hexagon_outcomes() order, then triangle rows
};

enum class NsiStatus { Feasible, Infeasible };

struct FeasibilityResult {
  NsiStatus status = NsiStatus::Infeasible;
  /// Free variables making every hexagon probability nonnegative (Feasible).
  std::optional<HexagonFreeVars> witness;
  /// Nonnegative multipliers over all 72 rows whose combination cancels
  /// every free variable and leaves 0 >= 1 (Infeasible).
  std::vector<Rational> certificate;

  bool feasible() const { return status == NsiStatus::Feasible; }
};

LinearProgram build_lp(const TriangleBehavior& behavior);

/// Throws PositivityViolation if the triangle rows alone fail.
FeasibilityResult nsi_feasible(const TriangleBehavior& behavior);

/// Exact checks used by tests and the CLI.
bool witness_is_valid(const TriangleBehavior& behavior, const HexagonFreeVars& witness);
bool certificate_is_valid(const LinearProgram& lp, const std::vector<Rational>& certificate);

/// Symmetric behavior (E_1, E_2) with E_ABC at the centre of its positivity
/// interval; false when no E_ABC makes the triangle valid.
bool symmetric_point_feasible(const Rational& e1, const Rational& e2);

struct E2Bracket {
  Rational feasible;    // largest E_2 proven feasible
  Rational infeasible;  // smallest E_2 proven infeasible (equals feasible when 1 is feasible)
  Rational value;       // midpoint returned by max_feasible_e2
};

/// Bisection over symmetric E_2 for fixed E_1, starting from the product
/// point E_2 = E_1^2, which is always feasible.
E2Bracket bisect_max_e2(const Rational& e1, const Rational& tol);

Rational max_feasible_e2(const Rational& e1, const Rational& tol);

/// Upper end of (1 + 2|E_1| + E_2)^2 <= 2 (1 + |E_1|)^3.
double nice2_max_e2(double e1);

}  // namespace netbound
