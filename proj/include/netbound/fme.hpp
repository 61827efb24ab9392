#pragma once

// Exact Fourier-Motzkin elimination over rational inequality systems, and the
// derivation of the zero-marginal hexagon constraints on pairwise correlators.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netbound/correlators.hpp"
#include "netbound/rational.hpp"

namespace netbound {

/// coefficients . variables + constant >= 0
struct InequalityRow {
  std::vector<Rational> coefficients;
  Rational constant{0};

  friend bool operator==(const InequalityRow&, const InequalityRow&) = default;
};

/// Scales by a positive factor to coprime integers. The zero row is unchanged.
InequalityRow normalized(InequalityRow row);

class LinearInequalitySystem {
 public:
  LinearInequalitySystem() = default;
  /// Throws std::invalid_argument on duplicate names.
  explicit LinearInequalitySystem(std::vector<std::string> variables);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<InequalityRow>& rows() const { return rows_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  std::optional<std::size_t> find_variable(std::string_view name) const;
  /// Throws UnknownVariable.
  std::size_t variable_index(std::string_view name) const;

  void add_row(InequalityRow row);
  void add_row(std::vector<Rational> coefficients, Rational constant);

  /// Row from named terms, e.g. {{"EAB", 2}, {"EAB_sq", 1}} with constant 1.
  InequalityRow make_row(std::initializer_list<std::pair<std::string_view, Rational>> terms,
                         Rational constant) const;

  /// Canonical text: "1 + 2*EAB + EAB_sq - EBC_sq - EAC_sq >= 0".
  std::string format_row(const InequalityRow& row) const;
  std::string format_row(std::size_t i) const { return format_row(rows_[i]); }
  /// Inverse of format_row. Throws ParseError or UnknownVariable.
  InequalityRow parse_row(std::string_view text) const;

  bool satisfied_by(std::span<const Rational> point) const;
  std::optional<std::size_t> find_row(const InequalityRow& row) const;

 private:
  std::vector<std::string> variables_;
  std::vector<InequalityRow> rows_;
};

/// Textbook elimination: rows with a zero coefficient pass through, every
/// positive row is paired with every negative row. Output rows are
/// normalized and deduplicated (first occurrence kept) and `var` is dropped
/// from the variable list. Throws UnknownVariable.
LinearInequalitySystem fm_eliminate(const LinearInequalitySystem& system, std::string_view var);

/// Exact feasibility of {rows >= 0}.
bool is_feasible(const LinearInequalitySystem& system);

/// Whether `row` holds at every point of `system` (exact LP; the system must be feasible).
bool is_implied(const LinearInequalitySystem& system, const InequalityRow& row);

/// Drops every row implied by the remaining ones, testing rows from last to
/// first so earlier rows win ties. Rows are normalized, duplicates and
/// trivially true rows removed, and input order is preserved. An infeasible
/// system collapses to the single row  -1 >= 0.
///
/// The OpenMP version first marks, in parallel, the rows not implied by all
/// others (those survive any removal order), then runs the serial pass over
/// the rest; both give identical output.
LinearInequalitySystem remove_redundant(const LinearInequalitySystem& system);
LinearInequalitySystem remove_redundant_serial(const LinearInequalitySystem& system);

struct EliminationStep {
  std::string variable;
  std::size_t combined = 0;  // rows produced by pairing (before dedup)
  std::size_t candidates = 0;  // after dedup and history pruning
  std::size_t kept = 0;        // after redundancy removal
};

struct EliminationOptions {
  /// Chernikov pruning: after k eliminations a row built from more than k+1
  /// input rows is redundant.
  bool prune_by_history = true;
  bool remove_redundant_each_step = true;
};

LinearInequalitySystem eliminate_all(const LinearInequalitySystem& system, std::span<const std::string> order,
                                     const EliminationOptions& options = {},
                                     std::vector<EliminationStep>* trace = nullptr);

// ---------------------------------------------------------------------------
// Hexagon with zero single-party marginals.

/// Variable order: EAB, EBC, EAC, EAB_sq, EBC_sq, EAC_sq, then the ten free variables.
std::vector<std::string> hexagon_system_variables();

/// The 64 rows 64 p(o) >= 0 with squared correlators as independent variables,
/// in hexagon_outcomes() order.
LinearInequalitySystem hexagon_zero_marginal_system();

/// F3, F3', F3'', F5, F5', F5'', F4, F4', F4'', F6 by variable name.
std::vector<std::string> default_elimination_order();

/// The irredundant projection onto the six pairwise variables (24 rows).
LinearInequalitySystem derive_random_marginal_inequalities(std::vector<EliminationStep>* trace = nullptr);

/// Sum of 64 p over `outcomes` (zero marginals) as a row over hexagon_system_variables().
InequalityRow sum_of_hexagon_rows(std::span<const HexagonOutcome> outcomes);

/// The four outcomes whose probabilities sum to (1 + E_AB)^2 - E_BC^2 - E_AC^2 over 16.
std::array<HexagonOutcome, 4> sum4_outcomes();

/// Checks coefficient by coefficient that 16 * (sum of the four probabilities)
/// equals 1 + 2 E_AB + E_AB^2 - E_BC^2 - E_AC^2 with every free variable cancelled.
bool verify_sum4_identity(std::span<const HexagonOutcome> outcomes);
inline bool verify_sum4_identity() {
  const auto outcomes = sum4_outcomes();
  return verify_sum4_identity(outcomes);
}

// ---------------------------------------------------------------------------
// Party-permutation and output-flip symmetry.

/// Image of a row under one group element, as a permutation with signs of the variables.
struct SignedPermutation {
  std::vector<std::size_t> target;
  std::vector<int> sign;

  InequalityRow apply(const InequalityRow& row) const;
};

/// The 48 elements generated by permuting the parties and flipping outputs.
/// Variables must be triangle correlator names (EA, ..., EABC), optionally
/// with an "_sq" suffix (squares are flip-invariant).
std::vector<SignedPermutation> triangle_symmetry_group(const std::vector<std::string>& variables);

struct InequalityFamily {
  InequalityRow representative;  // lexicographically largest (constant, coefficients...) in the orbit
  std::vector<std::size_t> members;  // indices of system rows in the orbit
  std::size_t orbit_size = 0;        // distinct images under the group
};

/// Families in order of their first member.
std::vector<InequalityFamily> reduce_by_symmetry(const LinearInequalitySystem& system);

/// Nonnegative multipliers showing `target` follows from `family` once every
/// "_sq" variable is known to be nonnegative: target - sum lambda_i family_i
/// has zero coefficients on plain variables and nonnegative ones on squares
/// and the constant.
struct SquareSubsumption {
  std::vector<Rational> multipliers;  // one per family row
  InequalityRow remainder;
};

std::optional<SquareSubsumption> subsumption_modulo_squares(const LinearInequalitySystem& family,
                                                            const InequalityRow& target);

}  // namespace netbound
