#pragma once

// Phase-1 revised simplex for  M x = h, x >= 0.
//
// Every LP in the library is posed in this form: either a nonnegative
// solution exists, or a Farkas ray y with M^T y >= 0 and h . y < 0 proves
// that none does. The solver is templated on the scalar: the Rational
// instantiation with Bland's rule is exact and always terminates; the double
// instantiation is only used to find a starting basis for the exact one.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "netbound/rational.hpp"

namespace netbound::lp {

/// Column-major dense matrix.
template <class T>
class ColumnMatrix {
 public:
  ColumnMatrix() = default;
  ColumnMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, std::vector<T>(rows, T(0))) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return columns_[c][r]; }
  const T& operator()(std::size_t r, std::size_t c) const { return columns_[c][r]; }
  const std::vector<T>& column(std::size_t c) const { return columns_[c]; }

  void append_column(std::vector<T> col) {
    if (col.size() != rows_) throw std::invalid_argument("column length mismatch");
    columns_.push_back(std::move(col));
  }

 private:
  std::size_t rows_ = 0;
  std::vector<std::vector<T>> columns_;
};

enum class Feasibility { Feasible, Infeasible };
enum class PivotRule { Bland, Dantzig };

template <class T>
struct SystemSolution {
  Feasibility status = Feasibility::Infeasible;
  std::vector<T> x;                // Feasible: M x = h, x >= 0
  std::vector<T> farkas;           // Infeasible: M^T y >= 0, h . y < 0
  std::vector<std::size_t> basis;  // final basis; indices >= cols() are artificial
  std::size_t iterations = 0;
  bool warm_started = false;
};

template <class T>
struct Tolerance {
  static bool negative(const T& v) { return v < 0; }
  static bool positive(const T& v) { return v > 0; }
  static bool zero(const T& v) { return v == 0; }
};

template <>
struct Tolerance<double> {
  static constexpr double eps = 1e-9;
  static bool negative(double v) { return v < -eps; }
  static bool positive(double v) { return v > eps; }
  static bool zero(double v) { return std::fabs(v) <= eps; }
};

template <class T>
inline bool is_zero_value(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(v) == 0;
  } else {
    return v == T(0);
  }
}

/// Phase-1 simplex state over the extended matrix [M' | I], where M' is M
/// with rows negated so that the right-hand side is nonnegative.
template <class T>
class Phase1Simplex {
 public:
  Phase1Simplex(const ColumnMatrix<T>& M, const std::vector<T>& h) : m_(M.rows()), n_(M.cols()), M_(M) {
    if (h.size() != m_) throw std::invalid_argument("right-hand side length mismatch");
    row_sign_.resize(m_);
    rhs_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      row_sign_[i] = h[i] < T(0) ? -1 : 1;
      rhs_[i] = row_sign_[i] < 0 ? T(-h[i]) : h[i];
    }
  }

  /// Starts from the all-artificial basis.
  void start_artificial() {
    basis_.resize(m_);
    binv_.assign(m_ * m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      binv_[i * m_ + i] = T(1);
    }
    x_basic_ = rhs_;
    mark_basic();
  }

  /// Starts from `basis` if it is nonsingular and primal feasible.
  bool start_from(const std::vector<std::size_t>& basis) {
    if (basis.size() != m_) return false;
    std::vector<T> b(m_ * m_, T(0));
    for (std::size_t k = 0; k < m_; ++k) {
      if (basis[k] >= n_ + m_) return false;
      for (std::size_t i = 0; i < m_; ++i) b[i * m_ + k] = extended(i, basis[k]);
    }
    auto inverse = invert(std::move(b));
    if (!inverse) return false;
    std::vector<T> xb(m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < m_; ++k) xb[i] += (*inverse)[i * m_ + k] * rhs_[k];
      if (xb[i] < T(0)) return false;
    }
    basis_ = basis;
    binv_ = std::move(*inverse);
    x_basic_ = std::move(xb);
    mark_basic();
    return true;
  }

  /// Pivots until phase-1 optimality or `max_iterations`. Returns false on the cap.
  bool run(PivotRule rule, std::size_t max_iterations) {
    std::vector<T> pi(m_);
    std::vector<T> u(m_);
    while (iterations_ < max_iterations) {
      compute_duals(pi);
      const auto entering = choose_entering(pi, rule);
      if (!entering) return true;
      const std::size_t q = *entering;
      for (std::size_t i = 0; i < m_; ++i) {
        T s(0);
        for (std::size_t k = 0; k < m_; ++k) {
          const T& a = extended(k, q);
          if (!is_zero_value(a)) s += binv_[i * m_ + k] * a;
        }
        u[i] = s;
      }
      const auto leaving = choose_leaving(u);
      if (!leaving) throw std::logic_error("phase-1 simplex cannot be unbounded");
      pivot(*leaving, q, u);
      ++iterations_;
    }
    return false;
  }

  SystemSolution<T> result() const {
    SystemSolution<T> out;
    out.basis = basis_;
    out.iterations = iterations_;
    T infeasibility(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += x_basic_[i];
    }
    if (Tolerance<T>::zero(infeasibility)) {
      out.status = Feasibility::Feasible;
      out.x.assign(n_, T(0));
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < n_) out.x[basis_[i]] = x_basic_[i];
      }
    } else {
      out.status = Feasibility::Infeasible;
      std::vector<T> pi(m_);
      compute_duals(pi);
      out.farkas.resize(m_);
      for (std::size_t k = 0; k < m_; ++k) out.farkas[k] = row_sign_[k] < 0 ? pi[k] : T(-pi[k]);
    }
    return out;
  }

 private:
  T extended(std::size_t row, std::size_t col) const {
    if (col < n_) {
      const T& v = M_(row, col);
      return row_sign_[row] < 0 ? T(-v) : v;
    }
    return T(col - n_ == row ? 1 : 0);
  }

  void mark_basic() {
    is_basic_.assign(n_ + m_, false);
    for (std::size_t b : basis_) is_basic_[b] = true;
  }

  void compute_duals(std::vector<T>& pi) const {
    for (std::size_t k = 0; k < m_; ++k) {
      T s(0);
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= n_) s += binv_[i * m_ + k];
      }
      pi[k] = s;
    }
  }

  // Reduced cost of structural column j is -pi . M'_j; artificials never re-enter.
  std::optional<std::size_t> choose_entering(const std::vector<T>& pi, PivotRule rule) const {
    std::optional<std::size_t> best;
    T best_value(0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j]) continue;
      T dot(0);
      const auto& col = M_.column(j);
      for (std::size_t k = 0; k < m_; ++k) {
        if (is_zero_value(col[k])) continue;
        if (row_sign_[k] < 0) {
          dot -= pi[k] * col[k];
        } else {
          dot += pi[k] * col[k];
        }
      }
      // reduced cost = -dot
      if (Tolerance<T>::positive(dot)) {
        if (rule == PivotRule::Bland) return j;
        if (!best || dot > best_value) {
          best = j;
          best_value = dot;
        }
      }
    }
    return best;
  }

  std::optional<std::size_t> choose_leaving(const std::vector<T>& u) const {
    std::optional<std::size_t> row;
    T best_ratio(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (!Tolerance<T>::positive(u[i])) continue;
      T ratio = x_basic_[i] / u[i];
      if (!row || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*row])) {
        row = i;
        best_ratio = std::move(ratio);
      }
    }
    return row;
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<T>& u) {
    const T pivot_value = u[r];
    const T theta = x_basic_[r] / pivot_value;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || is_zero_value(u[i])) continue;
      x_basic_[i] -= theta * u[i];
      if constexpr (std::is_same_v<T, double>) {
        if (x_basic_[i] < 0 && x_basic_[i] > -Tolerance<double>::eps) x_basic_[i] = 0;
      }
    }
    x_basic_[r] = theta;
    for (std::size_t k = 0; k < m_; ++k) binv_[r * m_ + k] /= pivot_value;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || is_zero_value(u[i])) continue;
      const T factor = u[i];
      for (std::size_t k = 0; k < m_; ++k) {
        const T& rv = binv_[r * m_ + k];
        if (!is_zero_value(rv)) binv_[i * m_ + k] -= factor * rv;
      }
    }
    is_basic_[basis_[r]] = false;
    is_basic_[q] = true;
    basis_[r] = q;
  }

  std::optional<std::vector<T>> invert(std::vector<T> b) const {
    const std::size_t m = m_;
    std::vector<T> inv(m * m, T(0));
    for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = T(1);
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot_row = m;
      if constexpr (std::is_same_v<T, double>) {
        double best = 1e-12;
        for (std::size_t r = col; r < m; ++r) {
          if (std::fabs(b[r * m + col]) > best) {
            best = std::fabs(b[r * m + col]);
            pivot_row = r;
          }
        }
      } else {
        for (std::size_t r = col; r < m; ++r) {
          if (!is_zero_value(b[r * m + col])) {
            pivot_row = r;
            break;
          }
        }
      }
      if (pivot_row == m) return std::nullopt;
      if (pivot_row != col) {
        for (std::size_t k = 0; k < m; ++k) {
          std::swap(b[pivot_row * m + k], b[col * m + k]);
          std::swap(inv[pivot_row * m + k], inv[col * m + k]);
        }
      }
      const T p = b[col * m + col];
      for (std::size_t k = 0; k < m; ++k) {
        b[col * m + k] /= p;
        inv[col * m + k] /= p;
      }
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || is_zero_value(b[r * m + col])) continue;
        const T f = b[r * m + col];
        for (std::size_t k = 0; k < m; ++k) {
          if (!is_zero_value(b[col * m + k])) b[r * m + k] -= f * b[col * m + k];
          if (!is_zero_value(inv[col * m + k])) inv[r * m + k] -= f * inv[col * m + k];
        }
      }
    }
    return inv;
  }

  std::size_t m_;
  std::size_t n_;
  const ColumnMatrix<T>& M_;
  std::vector<int> row_sign_;
  std::vector<T> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<T> binv_;  // row-major m x m
  std::vector<T> x_basic_;
  std::size_t iterations_ = 0;
};

struct SolveOptions {
  /// Seed the exact solve with the final basis of a double-precision run.
  bool warm_start = true;
  /// Problems with fewer structural columns skip the warm start.
  std::size_t warm_start_min_columns = 48;
};

/// Exact answer for M x = h, x >= 0, with a verified solution or Farkas ray.
SystemSolution<Rational> solve_nonnegative(const ColumnMatrix<Rational>& M, const std::vector<Rational>& h,
                                           const SolveOptions& options = {});

/// Exact checks of the two certificate kinds.
bool certifies_feasible(const ColumnMatrix<Rational>& M, const std::vector<Rational>& h,
                        const std::vector<Rational>& x);
bool certifies_infeasible(const ColumnMatrix<Rational>& M, const std::vector<Rational>& h,
                          const std::vector<Rational>& y);

}  // namespace netbound::lp
