#include "netbound/trilocal.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <limits>

#include "netbound/errors.hpp"

namespace netbound {

namespace {

using Table = std::vector<std::vector<Rational>>;

Table rational_table(std::initializer_list<std::initializer_list<Rational>> rows) {
  Table t;
  for (const auto& r : rows) t.emplace_back(r);
  return t;
}

std::vector<std::vector<double>> double_table(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> t;
  for (const auto& r : rows) t.emplace_back(r);
  return t;
}

double horner(const std::vector<double>& c, double z) {
  double s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

std::string describe(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return buf;
}

struct Candidate {
  std::string polynomial;
  std::string variant;
  double root;
  TrilocalModelD model;
};

bool near(double a, double b, double tol) { return std::abs(a - b) < tol; }

/// First candidate that passes `check`; the others are recorded as rejected.
template <class Check>
ResolvedModel first_valid(const std::vector<Candidate>& candidates, Check check, const char* what) {
  ResolvedModel out;
  for (const auto& c : candidates) {
    std::string reason;
    if (!is_valid(c.model, 1e-12)) {
      reason = "not a probability assignment";
    } else {
      reason = check(c, fast_correlators(c.model));
    }
    const std::string label = c.polynomial + " " + c.variant + " root " + describe(c.root);
    if (reason.empty()) {
      out.model = c.model;
      out.polynomial = c.polynomial;
      out.variant = c.variant;
      out.root = c.root;
      return out;
    }
    out.rejected.push_back(label + ": " + reason);
  }
  std::string msg = std::string("no root/sign choice gives a valid ") + what + " model";
  for (const auto& r : out.rejected) msg += "; " + r;
  throw NoValidRoot(msg);
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& coefficients, double lo, double hi, std::size_t grid) {
  std::vector<double> roots;
  if (grid < 1 || !(lo < hi)) return roots;
  const auto f = [&](double z) { return horner(coefficients, z); };
  boost::math::tools::eps_tolerance<double> done(std::numeric_limits<double>::digits - 3);
  double a = lo, fa = f(lo);
  for (std::size_t i = 1; i <= grid; ++i) {
    const double b = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid);
    const double fb = f(b);
    if (fa == 0) {
      roots.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0) {
      const auto [l, r] = boost::math::tools::bisect(f, a, b, [&](double x, double y) {
        return std::abs(y - x) <= 1e-15 || done(x, y);
      });
      roots.push_back(0.5 * (l + r));
    }
    a = b;
    fa = fb;
  }
  if (fa == 0) roots.push_back(hi);
  return roots;
}

BasicTriangleBehavior<double> fast_correlators(const TrilocalModelD& m) {
  const auto d = static_cast<std::size_t>(m.d);
  BasicTriangleBehavior<double> e;
  for (std::size_t al = 0; al < d; ++al) {
    const double wa = m.dist_alpha[al];
    if (wa == 0) continue;
    for (std::size_t be = 0; be < d; ++be) {
      const double wab = wa * m.dist_beta[be];
      if (wab == 0) continue;
      const double sc = 2 * m.resp_c[al][be] - 1;
      for (std::size_t ga = 0; ga < d; ++ga) {
        const double w = wab * m.dist_gamma[ga];
        const double sa = 2 * m.resp_a[be][ga] - 1;
        const double sb = 2 * m.resp_b[al][ga] - 1;
        e.ea += w * sa;
        e.eb += w * sb;
        e.ec += w * sc;
        e.eab += w * sa * sb;
        e.ebc += w * sb * sc;
        e.eac += w * sa * sc;
        e.eabc += w * sa * sb * sc;
      }
    }
  }
  return e;
}

TrilocalModelD to_double_model(const TrilocalModel& m) {
  TrilocalModelD out;
  out.d = m.d;
  const auto vec = [](const std::vector<Rational>& v) {
    std::vector<double> r;
    for (const auto& x : v) r.push_back(to_double(x));
    return r;
  };
  out.dist_alpha = vec(m.dist_alpha);
  out.dist_beta = vec(m.dist_beta);
  out.dist_gamma = vec(m.dist_gamma);
  for (const auto& row : m.resp_a) out.resp_a.push_back(vec(row));
  for (const auto& row : m.resp_b) out.resp_b.push_back(vec(row));
  for (const auto& row : m.resp_c) out.resp_c.push_back(vec(row));
  return out;
}

TrilocalModel binary_pqr_model(const Rational& p, const Rational& q, const Rational& r) {
  for (const auto* v : {&p, &q, &r}) {
    if (*v < 0 || *v > 1) throw std::invalid_argument("p, q, r must lie in [0,1]");
  }
  TrilocalModel m;
  m.d = 2;
  m.dist_alpha = {r, Rational(1) - r};
  m.dist_beta = {q, Rational(1) - q};
  m.dist_gamma = {p, Rational(1) - p};
  m.resp_a = m.resp_b = m.resp_c = rational_table({{1, 0}, {0, 0}});
  return m;
}

TrilocalModel model_parity_bits() {
  TrilocalModel m;
  m.d = 2;
  m.dist_alpha = m.dist_beta = m.dist_gamma = {make_rational(1, 2), make_rational(1, 2)};
  m.resp_a = m.resp_b = m.resp_c = rational_table({{1, 0}, {0, 1}});
  return m;
}

TrilocalModel model_e2_minus_third() {
  TrilocalModel m;
  m.d = 2;
  m.dist_alpha = {make_rational(1, 3), make_rational(2, 3)};
  m.dist_beta = {make_rational(3, 4), make_rational(1, 4)};
  m.dist_gamma = {make_rational(2, 3), make_rational(1, 3)};
  m.resp_a = rational_table({{1, 0}, {0, 0}});
  m.resp_b = rational_table({{0, make_rational(1, 2)}, {make_rational(1, 2), 1}});
  m.resp_c = rational_table({{1, 1}, {0, 1}});
  return m;
}

ResolvedModel model_max_e1() {
  struct Quartic {
    const char* name;
    const char* text;
    std::vector<double> coefficients;
  };
  const Quartic quartics[] = {{"printed", "9z^4+12z^3-12z+1", {1, -12, 0, 12, 9}},
                              {"corrected", "9z^4+12z^3+6z^2-12z+1", {1, -12, 6, 12, 9}}};
  const struct {
    const char* name;
    double constant;
  } signs[] = {{"x constant -15 (printed)", -15}, {"x constant +15", 15}};

  std::vector<Candidate> candidates;
  for (const auto& quartic : quartics) {
    auto roots = real_roots(quartic.coefficients, -4, 4);
    std::sort(roots.rbegin(), roots.rend());  // larger root first
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const double y = roots[k];
      for (const auto& s : signs) {
        const double x = (-9 * y * y * y - 15 * y * y - 7 * y + s.constant) / 8;
        TrilocalModelD m;
        m.d = 3;
        m.dist_alpha = {x, 1 - x, 0};
        m.dist_beta = {y, (1 - y) / 2, (1 - y) / 2};
        m.dist_gamma = {1 - x, x, 0};
        m.resp_a = double_table({{1, 0, 1}, {0, 0, 0}, {1, 1, 1}});
        m.resp_b = double_table({{1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
        m.resp_c = double_table({{0, 1, 0}, {1, 1, 0}, {0, 0, 0}});
        const std::string which = k == 0 ? "larger root" : "root #" + std::to_string(k + 1) + " from the top";
        candidates.push_back({quartic.text, std::string(quartic.name) + ", " + which + ", " + s.name, y, m});
      }
    }
  }
  return first_valid(
      candidates,
      [](const Candidate& c, const BasicTriangleBehavior<double>& e) -> std::string {
        const double y = c.root;
        const double printed_e1 = (3 * y * y * y + y * y + y - 1) / 4;
        if (!near(e.ea, e.eb, 1e-9) || !near(e.eb, e.ec, 1e-9)) return "marginals differ";
        for (double v : {e.eab, e.ebc, e.eac}) {
          if (!near(v, -1.0 / 3, 1e-9)) return "pairwise correlator " + describe(v) + " is not -1/3";
        }
        if (!near(e.ea, printed_e1, 1e-9)) return "E_1 " + describe(e.ea) + " differs from (3y^3+y^2+y-1)/4";
        if (!near(e.ea, 0.1753, 5e-4)) return "E_1 " + describe(e.ea) + " is not about 0.1753";
        return {};
      },
      "max-E_1");
}

double e1e3_zero_e2_polynomial(double z) {
  return horner({1, -32.0 / 9, 16.0 / 3, -1, 8.0 / 9, -8.0 / 3, 0, 4.0 / 9}, z);
}

ResolvedModel model_e1e3_zero() {
  struct Quartic {
    const char* name;
    const char* text;
    std::vector<double> coefficients;
  };
  const Quartic quartics[] = {{"printed", "z^4-8z+3", {3, -8, 0, 0, 1}},
                              {"corrected", "4z^4-8z+3", {3, -8, 0, 0, 4}}};
  std::vector<Candidate> candidates;
  for (const auto& quartic : quartics) {
    for (double z : real_roots(quartic.coefficients, 0, 1)) {
      const double x = 2.0 / 3 - z * z * z / 3 - z / 2;
      const double y = 1.0 / 3 + z * z * z / 3 - z / 2;
      TrilocalModelD m;
      m.d = 3;
      m.dist_alpha = m.dist_beta = m.dist_gamma = {x, y, z};
      m.resp_a = m.resp_b = m.resp_c = double_table({{0, 0, 1}, {0, 0, 0}, {1, 0, 1}});
      candidates.push_back({quartic.text, std::string(quartic.name) + ", root in (0,1)", z, m});
    }
  }
  return first_valid(
      candidates,
      [](const Candidate&, const BasicTriangleBehavior<double>& e) -> std::string {
        for (double v : {e.ea, e.eb, e.ec}) {
          if (std::abs(v) >= 1e-9) return "E_1 = " + describe(v);
        }
        if (std::abs(e.eabc) >= 1e-9) return "E_3 = " + describe(e.eabc);
        if (!near(e.eab, e.ebc, 1e-9) || !near(e.ebc, e.eac, 1e-9)) return "pairwise correlators differ";
        if (!near(e.eab, 0.3621, 5e-4)) return "E_2 " + describe(e.eab) + " is not about 0.3621";
        return {};
      },
      "E_1 = E_3 = 0");
}

TrilocalModel random_rational_model(int d, std::mt19937_64& rng, long denominator) {
  if (d < 1 || d > kMaxAlphabet) throw std::invalid_argument("alphabet size must be in 1..6");
  if (denominator < 1) throw std::invalid_argument("denominator must be positive");
  std::uniform_int_distribution<long> entry(0, denominator);
  const auto n = static_cast<std::size_t>(d);
  const auto dist = [&] {
    std::vector<long> w(n);
    long total = 0;
    while (total == 0) {
      total = 0;
      for (auto& v : w) total += (v = entry(rng));
    }
    std::vector<Rational> out;
    for (long v : w) out.push_back(make_rational(v, total));
    return out;
  };
  const auto table = [&] {
    Table t(n, std::vector<Rational>(n));
    for (auto& row : t) {
      for (auto& v : row) v = make_rational(entry(rng), denominator);
    }
    return t;
  };
  TrilocalModel m;
  m.d = d;
  m.dist_alpha = dist();
  m.dist_beta = dist();
  m.dist_gamma = dist();
  m.resp_a = table();
  m.resp_b = table();
  m.resp_c = table();
  return m;
}

// ---------------------------------------------------------------------------
// Search

SearchTarget SearchTarget::from_behavior(const BasicTriangleBehavior<double>& e, bool include_eabc) {
  SearchTarget t;
  for (Correlator c : kAllCorrelators) {
    if (c == Correlator::ABC && !include_eabc) continue;
    t[c] = e[c];
  }
  return t;
}

SearchTarget SearchTarget::symmetric(double e1, double e2, std::optional<double> e3) {
  SearchTarget t;
  t[Correlator::A] = t[Correlator::B] = t[Correlator::C] = e1;
  t[Correlator::AB] = t[Correlator::BC] = t[Correlator::AC] = e2;
  t[Correlator::ABC] = e3;
  return t;
}

bool SearchTarget::any() const {
  return std::any_of(value.begin(), value.end(), [](const auto& v) { return v.has_value(); });
}

double residual(const SearchTarget& target, const BasicTriangleBehavior<double>& e) {
  double s = 0;
  for (std::size_t i = 0; i < kAllCorrelators.size(); ++i) {
    if (!target.value[i]) continue;
    const double diff = e[kAllCorrelators[i]] - *target.value[i];
    s += target.weight[i] * diff * diff;
  }
  return s;
}

namespace {

/// Flat parameters: three distributions (d each) then three tables (d*d each).
class Parameterization {
 public:
  explicit Parameterization(int d) : d_(static_cast<std::size_t>(d)) {}

  std::size_t size() const { return 3 * d_ + 3 * d_ * d_; }
  bool is_distribution(std::size_t i) const { return i < 3 * d_; }

  /// Clip distributions to [0, inf) and renormalize; clip tables to [0, 1].
  void project(std::vector<double>& theta) const {
    for (std::size_t k = 0; k < 3; ++k) {
      double total = 0;
      for (std::size_t i = 0; i < d_; ++i) {
        double& v = theta[k * d_ + i];
        v = std::max(v, 0.0);
        total += v;
      }
      for (std::size_t i = 0; i < d_; ++i) {
        double& v = theta[k * d_ + i];
        v = total > 0 ? v / total : 1.0 / static_cast<double>(d_);
      }
    }
    for (std::size_t i = 3 * d_; i < theta.size(); ++i) theta[i] = std::clamp(theta[i], 0.0, 1.0);
  }

  TrilocalModelD model(const std::vector<double>& theta) const {
    TrilocalModelD m;
    m.d = static_cast<int>(d_);
    const auto dist = [&](std::size_t k) {
      return std::vector<double>(theta.begin() + static_cast<std::ptrdiff_t>(k * d_),
                                 theta.begin() + static_cast<std::ptrdiff_t>((k + 1) * d_));
    };
    m.dist_alpha = dist(0);
    m.dist_beta = dist(1);
    m.dist_gamma = dist(2);
    const auto table = [&](std::size_t k) {
      std::vector<std::vector<double>> t(d_, std::vector<double>(d_));
      const std::size_t base = 3 * d_ + k * d_ * d_;
      for (std::size_t i = 0; i < d_; ++i) {
        for (std::size_t j = 0; j < d_; ++j) t[i][j] = theta[base + i * d_ + j];
      }
      return t;
    };
    m.resp_a = table(0);
    m.resp_b = table(1);
    m.resp_c = table(2);
    return m;
  }

 private:
  std::size_t d_;
};

void check_search_input(const SearchTarget& target, const SearchOptions& options) {
  if (options.d < 1 || options.d > kMaxAlphabet) throw std::invalid_argument("alphabet size must be in 1..6");
  if (options.budget == 0) throw std::invalid_argument("search budget must be positive");
  if (options.restarts < 1) throw std::invalid_argument("at least one restart is needed");
  if (!target.any()) throw std::invalid_argument("search target specifies no correlator");
  for (double w : target.weight) {
    if (!(w >= 0)) throw std::invalid_argument("search weights must be nonnegative");
  }
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

std::optional<std::string> reliability_warning(int d) {
  if (d <= 3) return std::nullopt;
  return "search with d > 3 is not reliable; a failure does not rule out a trilocal model";
}

bool better(const SearchResult& a, const SearchResult& b) {
  if (a.residual != b.residual) return a.residual < b.residual;
  return a.restart < b.restart;
}

/// Index of the first restart below stop_below if any, else the lowest residual.
SearchResult pick(std::vector<SearchResult>& results, double stop_below) {
  for (auto& r : results) {
    if (r.restart >= 0 && r.residual < stop_below) return std::move(r);
  }
  SearchResult* best = nullptr;
  for (auto& r : results) {
    if (r.restart < 0) continue;
    if (!best || better(r, *best)) best = &r;
  }
  return std::move(*best);
}

}  // namespace

SearchResult search_restart(const SearchTarget& target, const SearchOptions& options, int restart) {
  check_search_input(target, options);
  const Parameterization par(options.d);
  auto rng = restart_rng(options.seed, restart);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> base(par.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double u = unit(rng);
    base[i] = par.is_distribution(i) ? -std::log1p(-u) : u;  // exponential weights give a uniform simplex point
  }
  par.project(base);

  std::size_t evals = 0;
  const auto f = [&](const std::vector<double>& theta) {
    ++evals;
    return residual(target, fast_correlators(par.model(theta)));
  };

  double fbase = f(base);
  double step = 0.25;
  const auto explore = [&](std::vector<double> x, double& fx) {
    for (std::size_t i = 0; i < x.size() && evals < options.budget; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = x;
        trial[i] += dir * step;
        par.project(trial);
        const double ft = f(trial);
        if (ft < fx) {
          x = std::move(trial);
          fx = ft;
          break;
        }
      }
    }
    return x;
  };

  while (evals < options.budget && step > 1e-14 && fbase >= options.stop_below) {
    double fx = fbase;
    auto x = explore(base, fx);
    if (fx < fbase) {
      while (evals < options.budget && fx < fbase && fx >= options.stop_below) {
        std::vector<double> pattern(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) pattern[i] = 2 * x[i] - base[i];
        par.project(pattern);
        base = std::move(x);
        fbase = fx;
        double fp = f(pattern);
        auto y = explore(std::move(pattern), fp);
        if (fp < fbase) {
          x = std::move(y);
          fx = fp;
        } else {
          x = base;
          fx = fbase;
        }
      }
      if (fx < fbase) {
        base = std::move(x);
        fbase = fx;
      }
    } else {
      step *= 0.5;
    }
  }

  SearchResult out;
  out.model = par.model(base);
  out.residual = fbase;
  out.restart = restart;
  out.evaluations = evals;
  return out;
}

SearchResult search_serial(const SearchTarget& target, const SearchOptions& options) {
  check_search_input(target, options);
  std::vector<SearchResult> results(static_cast<std::size_t>(options.restarts));
  for (int r = 0; r < options.restarts; ++r) {
    results[static_cast<std::size_t>(r)] = search_restart(target, options, r);
    if (results[static_cast<std::size_t>(r)].residual < options.stop_below) break;
  }
  auto best = pick(results, options.stop_below);
  best.warning = reliability_warning(options.d);
  return best;
}

SearchResult search(const SearchTarget& target, const SearchOptions& options) {
  check_search_input(target, options);
  std::vector<SearchResult> results(static_cast<std::size_t>(options.restarts));
  std::atomic<int> first_hit{options.restarts};
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < options.restarts; ++r) {
    if (r > first_hit.load(std::memory_order_relaxed)) continue;
    auto res = search_restart(target, options, r);
    if (res.residual < options.stop_below) {
      int cur = first_hit.load();
      while (r < cur && !first_hit.compare_exchange_weak(cur, r)) {
      }
    }
    results[static_cast<std::size_t>(r)] = std::move(res);
  }
  auto best = pick(results, options.stop_below);
  best.warning = reliability_warning(options.d);
  return best;
}

}  // namespace netbound
