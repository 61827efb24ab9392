#include "netbound/simplex.hpp"

#include <limits>

namespace netbound::lp {

namespace {

ColumnMatrix<double> to_double_matrix(const ColumnMatrix<Rational>& M) {
  ColumnMatrix<double> out(M.rows(), M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) {
    const auto& col = M.column(j);
    for (std::size_t i = 0; i < M.rows(); ++i) out(i, j) = col[i].get_d();
  }
  return out;
}

}  // namespace

SystemSolution<Rational> solve_nonnegative(const ColumnMatrix<Rational>& M, const std::vector<Rational>& h,
                                           const SolveOptions& options) {
  Phase1Simplex<Rational> exact(M, h);
  bool warm = false;
  if (options.warm_start && M.cols() >= options.warm_start_min_columns) {
    const ColumnMatrix<double> Md = to_double_matrix(M);
    std::vector<double> hd(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) hd[i] = h[i].get_d();
    Phase1Simplex<double> approx(Md, hd);
    approx.start_artificial();
    approx.run(PivotRule::Dantzig, 20 * (M.rows() + M.cols()));
    warm = exact.start_from(approx.result().basis);
  }
  if (!warm) exact.start_artificial();
  exact.run(PivotRule::Bland, std::numeric_limits<std::size_t>::max());
  auto result = exact.result();
  result.warm_started = warm;
  return result;
}

bool certifies_feasible(const ColumnMatrix<Rational>& M, const std::vector<Rational>& h,
                        const std::vector<Rational>& x) {
  if (x.size() != M.cols() || h.size() != M.rows()) return false;
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Rational s(0);
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (sgn(x[j]) != 0) s += M(i, j) * x[j];
    }
    if (s != h[i]) return false;
  }
  return true;
}

bool certifies_infeasible(const ColumnMatrix<Rational>& M, const std::vector<Rational>& h,
                          const std::vector<Rational>& y) {
  if (y.size() != M.rows() || h.size() != M.rows()) return false;
  for (std::size_t j = 0; j < M.cols(); ++j) {
    Rational s(0);
    const auto& col = M.column(j);
    for (std::size_t i = 0; i < M.rows(); ++i) s += col[i] * y[i];
    if (s < 0) return false;
  }
  Rational hy(0);
  for (std::size_t i = 0; i < M.rows(); ++i) hy += h[i] * y[i];
  return hy < 0;
}

}  // namespace netbound::lp
