#pragma once

// Discrete trilocal models: three independent sources with d-valued hidden
// variables and local stochastic responses.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "netbound/correlators.hpp"
#include "netbound/rational.hpp"

namespace netbound {

inline constexpr int kMaxAlphabet = 6;

/// dist_alpha, dist_beta, dist_gamma have length d.
/// resp_a[beta][gamma], resp_b[alpha][gamma], resp_c[alpha][beta] hold P(output = +1).
template <class T>
struct BasicTrilocalModel {
  int d = 1;
  std::vector<T> dist_alpha, dist_beta, dist_gamma;
  std::vector<std::vector<T>> resp_a, resp_b, resp_c;
};

using TrilocalModel = BasicTrilocalModel<Rational>;
using TrilocalModelD = BasicTrilocalModel<double>;

template <class T>
BasicTrilocalModel<T> uniform_model(int d) {
  BasicTrilocalModel<T> m;
  m.d = d;
  const T w = T(1) / T(d);
  m.dist_alpha = m.dist_beta = m.dist_gamma = std::vector<T>(static_cast<std::size_t>(d), w);
  const std::vector<std::vector<T>> half(static_cast<std::size_t>(d),
                                         std::vector<T>(static_cast<std::size_t>(d), T(1) / T(2)));
  m.resp_a = m.resp_b = m.resp_c = half;
  return m;
}

namespace detail {

template <class T>
void check_distribution(const std::vector<T>& dist, std::size_t d, double tolerance, const char* name) {
  if (dist.size() != d) throw std::invalid_argument(std::string(name) + " has the wrong length");
  T total(0);
  for (const auto& v : dist) {
    if (v < T(0)) throw std::invalid_argument(std::string(name) + " has a negative entry");
    total += v;
  }
  if constexpr (std::is_same_v<T, double>) {
    if (abs_value(total - 1.0) > tolerance) throw std::invalid_argument(std::string(name) + " does not sum to 1");
  } else {
    if (total != T(1)) throw std::invalid_argument(std::string(name) + " does not sum to 1");
  }
}

template <class T>
void check_table(const std::vector<std::vector<T>>& table, std::size_t d, const char* name) {
  if (table.size() != d) throw std::invalid_argument(std::string(name) + " has the wrong shape");
  for (const auto& row : table) {
    if (row.size() != d) throw std::invalid_argument(std::string(name) + " has the wrong shape");
    for (const auto& v : row) {
      if (v < T(0) || v > T(1)) throw std::invalid_argument(std::string(name) + " entry outside [0,1]");
    }
  }
}

}  // namespace detail

/// Throws std::invalid_argument naming the first broken field.
template <class T>
void validate(const BasicTrilocalModel<T>& m, double tolerance = 1e-12) {
  if (m.d < 1 || m.d > kMaxAlphabet) throw std::invalid_argument("alphabet size must be in 1..6");
  const auto d = static_cast<std::size_t>(m.d);
  detail::check_distribution(m.dist_alpha, d, tolerance, "dist_alpha");
  detail::check_distribution(m.dist_beta, d, tolerance, "dist_beta");
  detail::check_distribution(m.dist_gamma, d, tolerance, "dist_gamma");
  detail::check_table(m.resp_a, d, "resp_a");
  detail::check_table(m.resp_b, d, "resp_b");
  detail::check_table(m.resp_c, d, "resp_c");
}

template <class T>
bool is_valid(const BasicTrilocalModel<T>& m, double tolerance = 1e-12) {
  try {
    validate(m, tolerance);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

/// p(abc) = sum mu(alpha) nu(beta) omega(gamma) P(a|beta,gamma) P(b|alpha,gamma) P(c|alpha,beta).
template <class T>
BasicTriangleDistribution<T> evaluate(const BasicTrilocalModel<T>& m) {
  validate(m);
  const auto d = static_cast<std::size_t>(m.d);
  BasicTriangleDistribution<T> out;
  for (std::size_t al = 0; al < d; ++al) {
    for (std::size_t be = 0; be < d; ++be) {
      for (std::size_t ga = 0; ga < d; ++ga) {
        const T w = m.dist_alpha[al] * m.dist_beta[be] * m.dist_gamma[ga];
        if (w == T(0)) continue;
        const T pa = m.resp_a[be][ga], pb = m.resp_b[al][ga], pc = m.resp_c[al][be];
        for (const auto& o : triangle_outcomes()) {
          const T fa = o.a > 0 ? pa : T(1) - pa;
          const T fb = o.b > 0 ? pb : T(1) - pb;
          const T fc = o.c > 0 ? pc : T(1) - pc;
          out[o] += w * fa * fb * fc;
        }
      }
    }
  }
  return out;
}

template <class T>
BasicTriangleBehavior<T> correlators_of(const BasicTrilocalModel<T>& m) {
  return behavior_from_distribution(evaluate(m), 1e-10);
}

/// Correlators straight from the model, using E[abc | hidden] = product of (2P - 1).
/// No validation; the search inner loop.
BasicTriangleBehavior<double> fast_correlators(const TrilocalModelD& m);

TrilocalModelD to_double_model(const TrilocalModel& m);

/// Sources Bernoulli(r), Bernoulli(q), Bernoulli(p) for alpha, beta, gamma
/// (value 0 with that probability), every table [[1,0],[0,0]].
TrilocalModel binary_pqr_model(const Rational& p, const Rational& q, const Rational& r);

/// Uniform bits and identity response tables: E_1 = E_2 = 0, E_ABC = 1.
TrilocalModel model_parity_bits();

/// d = 2, E_1 = 0 and E_2 = -1/3 exactly.
TrilocalModel model_e2_minus_third();

/// A model together with the candidate that passed validation.
struct ResolvedModel {
  TrilocalModelD model;
  std::string polynomial;   // quartic whose root was used
  std::string variant;      // "printed" or "corrected", plus the root and sign chosen
  double root = 0;
  std::vector<std::string> rejected;  // candidates tried first, with the reason
};

/// d = 3, E_2 = -1/3 with E_1 about 0.1753. Throws NoValidRoot.
ResolvedModel model_max_e1();

/// d = 3, E_1 = E_3 = 0 with E_2 about 0.3621. Throws NoValidRoot.
ResolvedModel model_e1e3_zero();

/// (4/9)z^7 - (8/3)z^5 + (8/9)z^4 - z^3 + (16/3)z^2 - (32/9)z + 1
double e1e3_zero_e2_polynomial(double z);

/// Real roots of sum c[i] z^i in [lo, hi]: sign changes on a uniform grid,
/// refined by bisection to 1e-15. Ascending.
std::vector<double> real_roots(const std::vector<double>& coefficients, double lo, double hi,
                               std::size_t grid = 4096);

/// Single-party correlators scale by eta, pairwise by eta^2, E_ABC by eta^3.
template <class T>
BasicTriangleBehavior<T> depolarize(const BasicTriangleBehavior<T>& e, const T& eta) {
  if (eta < T(0) || eta > T(1)) throw std::invalid_argument("eta must lie in [0,1]");
  const T eta2 = eta * eta;
  const T eta3 = eta2 * eta;
  return {eta * e.ea, eta * e.eb, eta * e.ec, eta2 * e.eab, eta2 * e.ebc, eta2 * e.eac, eta3 * e.eabc};
}

/// Each response becomes eta P + (1 - eta)/2; its correlators are depolarize(correlators_of(m), eta).
template <class T>
BasicTrilocalModel<T> depolarize_model(BasicTrilocalModel<T> m, const T& eta) {
  if (eta < T(0) || eta > T(1)) throw std::invalid_argument("eta must lie in [0,1]");
  const T shift = (T(1) - eta) / T(2);
  for (auto* table : {&m.resp_a, &m.resp_b, &m.resp_c}) {
    for (auto& row : *table) {
      for (auto& v : row) v = eta * v + shift;
    }
  }
  return m;
}

/// Random model with entries k/denominator; distributions are exact.
TrilocalModel random_rational_model(int d, std::mt19937_64& rng, long denominator = 12);

// ---------------------------------------------------------------------------
// Search

struct SearchTarget {
  std::array<std::optional<double>, 7> value{};  // kAllCorrelators order
  std::array<double, 7> weight{1, 1, 1, 1, 1, 1, 1};

  std::optional<double>& operator[](Correlator c) { return value[static_cast<std::size_t>(c)]; }
  const std::optional<double>& operator[](Correlator c) const { return value[static_cast<std::size_t>(c)]; }

  /// All seven fields of `e`; with include_eabc false E_ABC is left free.
  static SearchTarget from_behavior(const BasicTriangleBehavior<double>& e, bool include_eabc = true);
  static SearchTarget symmetric(double e1, double e2, std::optional<double> e3 = std::nullopt);
  bool any() const;
};

/// Weighted squared error over the specified fields.
double residual(const SearchTarget& target, const BasicTriangleBehavior<double>& e);

struct SearchOptions {
  int d = 3;
  std::uint64_t seed = 0;
  std::size_t budget = 20000;  // objective evaluations per restart
  int restarts = 50;
  double stop_below = 1e-12;   // a restart ends once its residual drops below this
};

struct SearchResult {
  TrilocalModelD model;
  double residual = 0;
  int restart = -1;  // index of the restart that produced the model
  std::size_t evaluations = 0;
  std::optional<std::string> warning;
};

/// Hooke-Jeeves pattern search from `restarts` random starts, in parallel.
/// Same result as search_serial for the same options.
/// Throws std::invalid_argument on d outside 1..6, zero budget or an empty target.
SearchResult search(const SearchTarget& target, const SearchOptions& options = {});
SearchResult search_serial(const SearchTarget& target, const SearchOptions& options = {});

/// One restart; exposed for the benchmark and tests.
SearchResult search_restart(const SearchTarget& target, const SearchOptions& options, int restart);

}  // namespace netbound
