#include "netbound/scan.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "netbound/correlators.hpp"
#include "netbound/errors.hpp"
#include "netbound/inequalities.hpp"
#include "netbound/lpfeas.hpp"
#include "netbound/quadratic.hpp"
#include "netbound/trilocal.hpp"

namespace netbound {

const char* plane_name(Plane p) {
  switch (p) {
    case Plane::E1E2: return "e1e2";
    case Plane::E2E3: return "e2e3";
    case Plane::Pairwise: return "pairwise";
    case Plane::Finner: return "finner";
  }
  return "?";
}

Plane parse_plane(std::string_view name) {
  for (Plane p : {Plane::E1E2, Plane::E2E3, Plane::Pairwise, Plane::Finner}) {
    if (name == plane_name(p)) return p;
  }
  throw ConfigError("unknown plane '" + std::string(name) + "' (expected e1e2, e2e3, pairwise or finner)");
}

const char* label_name(Label l) {
  switch (l) {
    case Label::Positivity: return "positivity";
    case Label::Nsi: return "nsi";
    case Label::Trilocal: return "trilocal";
    case Label::Gap: return "gap";
  }
  return "?";
}

void validate(const ScanConfig& cfg) {
  if (cfg.resolution < 2) throw ConfigError("resolution must be at least 2");
  if (!(cfg.threshold > 0)) throw ConfigError("residual threshold must be positive");
  if (cfg.d < 1 || cfg.d > kMaxAlphabet) throw ConfigError("d must be in 1..6");
  if (cfg.budget == 0) throw ConfigError("search budget must be positive");
  if (cfg.restarts < 1) throw ConfigError("restarts must be positive");
  if (cfg.eac < -1 || cfg.eac > 1) throw ConfigError("E_AC must lie in [-1,1]");
}

int scan_threads(const ScanConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("NETBOUND_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw ConfigError(std::string("NETBOUND_THREADS must be a positive integer, got '") + env + "'");
    return static_cast<int>(n);
  }
  return omp_get_max_threads();
}

std::vector<Rational> grid_axis(const Rational& lo, const Rational& hi, int n) {
  if (n < 2) throw ConfigError("resolution must be at least 2");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n));
  const Rational step = (hi - lo) / Rational(n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo + Rational(i) * step);
  return out;
}

namespace {

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  return buf;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

BasicTriangleBehavior<double> to_double_behavior(const TriangleBehavior& e) {
  BasicTriangleBehavior<double> out;
  for (Correlator c : kAllCorrelators) out[c] = to_double(e[c]);
  return out;
}

void run_search(const ScanConfig& cfg, const SearchTarget& target, std::uint64_t point_seed,
                RegionClassification& cell) {
  SearchOptions opts;
  opts.d = cfg.d;
  opts.seed = point_seed;
  opts.budget = cfg.budget;
  opts.restarts = cfg.restarts;
  opts.stop_below = cfg.threshold;
  const auto result = search_serial(target, opts);
  cell.residual = result.residual;
  if (result.residual < cfg.threshold) {
    cell.label = Label::Trilocal;
    cell.evidence = "residual=" + format_residual(result.residual) + ";restart=" + std::to_string(result.restart);
  } else {
    cell.label = Label::Gap;
    cell.evidence = "search-failed;residual=" + format_residual(result.residual);
  }
}

std::string farkas_evidence(const FeasibilityResult& r) {
  std::size_t support = 0;
  for (const auto& y : r.certificate) support += (y != 0);
  return "farkas-support=" + std::to_string(support);
}

/// E_ABC free: positivity via the interval, NSI via the LP at the interval midpoint.
bool positivity_and_lp(const TriangleBehavior& e, RegionClassification& cell) {
  const auto slack = with_slack_maximizing_e_abc(e);
  if (!slack) {
    cell.label = Label::Positivity;
    cell.evidence = "no-valid-eabc";
    return false;
  }
  cell.positivity_ok = true;
  const auto lp = nsi_feasible(*slack);
  if (!lp.feasible()) {
    cell.label = Label::Nsi;
    cell.evidence = farkas_evidence(lp);
    return false;
  }
  cell.nsi_ok = true;
  return true;
}

void classify_e1e2(const ScanConfig& cfg, const Rational& e1, const Rational& e2, std::uint64_t seed,
                   RegionClassification& cell) {
  if (!positivity_and_lp(symmetric_behavior(e1, e2), cell)) return;
  run_search(cfg, SearchTarget::symmetric(to_double(e1), to_double(e2)), seed, cell);
}

void classify_e2e3(const ScanConfig& cfg, const Rational& e2, const Rational& e3, std::uint64_t seed,
                   RegionClassification& cell) {
  const auto e = symmetric_behavior(Rational(0), e2, e3);
  const auto violated = triangle_positivity(e);
  if (!violated.empty()) {
    cell.label = Label::Positivity;
    cell.evidence = "violated=" + violated.front().label();
    return;
  }
  cell.positivity_ok = true;
  if (Sqrt2Number(e2 + 1) > Sqrt2Number::root()) {
    cell.label = Label::Nsi;
    cell.evidence = "e2>sqrt2-1";
    return;
  }
  cell.nsi_ok = true;
  run_search(cfg, SearchTarget::from_behavior(to_double_behavior(e)), seed, cell);
}

TriangleBehavior pairwise_behavior(const Rational& eab, const Rational& ebc, const Rational& eac) {
  TriangleBehavior e;
  e.eab = eab;
  e.ebc = ebc;
  e.eac = eac;
  return e;
}

void classify_pairwise(const ScanConfig& cfg, const Rational& eab, const Rational& ebc, std::uint64_t seed,
                       RegionClassification& cell, bool with_search) {
  const auto e = pairwise_behavior(eab, ebc, cfg.eac);
  if (!e_abc_positivity_interval(e)) {
    cell.label = Label::Positivity;
    cell.evidence = "no-valid-eabc";
    return;
  }
  cell.positivity_ok = true;
  for (const auto& r : check_single_family(e)) {
    if (!r.satisfied) {
      cell.label = Label::Nsi;
      cell.evidence = r.name;
      return;
    }
  }
  cell.nsi_ok = true;
  if (with_search) {
    run_search(cfg, SearchTarget::from_behavior(to_double_behavior(e), false), seed, cell);
  }
}

void classify_finner(const ScanConfig& cfg, const Rational& p, const Rational& q, std::uint64_t seed,
                     RegionClassification& cell) {
  if (p + q > 1) {
    cell.label = Label::Positivity;
    cell.evidence = "p+q>1";
    return;
  }
  cell.positivity_ok = true;
  const auto dist = finner_pq_distribution(FinnerPoint<Rational>{p, q});
  const auto e = behavior_from_distribution(dist);
  cell.finner_violated = !finner_satisfied(dist);
  cell.nice2_violated = !check_nice2(e.ea, e.eab).satisfied;
  const std::string flags = std::string("finner=") + (cell.finner_violated ? "1" : "0") +
                            ";nice2=" + (cell.nice2_violated ? "1" : "0");
  const auto lp = nsi_feasible(e);
  if (!lp.feasible()) {
    cell.label = Label::Nsi;
    cell.evidence = farkas_evidence(lp) + ";" + flags;
    return;
  }
  cell.nsi_ok = true;
  run_search(cfg, SearchTarget::from_behavior(to_double_behavior(e)), seed, cell);
  cell.evidence += ";" + flags;
}

std::pair<Rational, Rational> plane_range(Plane p) {
  if (p == Plane::Finner) return {Rational(0), Rational(1)};
  return {Rational(-1), Rational(1)};
}

ScanResult prepare(const ScanConfig& cfg) {
  validate(cfg);
  ScanResult r;
  r.config = cfg;
  const auto [lo, hi] = plane_range(cfg.plane);
  r.xs = grid_axis(lo, hi, cfg.resolution);
  r.ys = grid_axis(lo, hi, cfg.resolution);
  r.cells.resize(r.xs.size() * r.ys.size());
  return r;
}

std::uint64_t point_seed(const ScanConfig& cfg, std::size_t index) { return splitmix(cfg.seed ^ splitmix(index)); }

/// Pairwise plane: (i, j) and its pi-rotation share a search, run at the smaller index.
std::size_t search_index(const ScanResult& r, std::size_t index) {
  if (r.config.plane != Plane::Pairwise) return index;
  return std::min(index, r.cells.size() - 1 - index);
}

void classify_cell(ScanResult& r, std::size_t index) {
  const std::size_t n = r.xs.size();
  const auto& x = r.xs[index % n];
  const auto& y = r.ys[index / n];
  const std::size_t owner = search_index(r, index);
  if (r.config.plane == Plane::Pairwise && owner != index) {
    auto& cell = r.cells[index];
    cell.x = to_double(x);
    cell.y = to_double(y);
    classify_pairwise(r.config, x, y, 0, cell, false);
    return;
  }
  r.cells[index] = classify_point(r.config, x, y, point_seed(r.config, owner));
}

/// Mirrored pairwise cells take the search outcome of their representative.
void copy_mirrored_searches(ScanResult& r) {
  if (r.config.plane != Plane::Pairwise) return;
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    const std::size_t owner = search_index(r, k);
    if (owner == k) continue;
    auto& cell = r.cells[k];
    const auto& rep = r.cells[owner];
    if (!cell.nsi_ok || !rep.nsi_ok) continue;
    cell.label = rep.label;
    cell.evidence = rep.evidence;
    cell.residual = rep.residual;
  }
}

}  // namespace

RegionClassification classify_point(const ScanConfig& cfg, const Rational& x, const Rational& y,
                                    std::uint64_t seed) {
  RegionClassification cell;
  cell.x = to_double(x);
  cell.y = to_double(y);
  switch (cfg.plane) {
    case Plane::E1E2: classify_e1e2(cfg, x, y, seed, cell); break;
    case Plane::E2E3: classify_e2e3(cfg, x, y, seed, cell); break;
    case Plane::Pairwise: classify_pairwise(cfg, x, y, seed, cell, true); break;
    case Plane::Finner: classify_finner(cfg, x, y, seed, cell); break;
  }
  return cell;
}

ScanResult scan_serial(const ScanConfig& cfg) {
  auto r = prepare(cfg);
  for (std::size_t k = 0; k < r.cells.size(); ++k) classify_cell(r, k);
  copy_mirrored_searches(r);
  r.summary = summarize(r);
  return r;
}

ScanResult scan(const ScanConfig& cfg) {
  auto r = prepare(cfg);
  const int threads = scan_threads(cfg);
  const auto total = static_cast<std::ptrdiff_t>(r.cells.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::ptrdiff_t k = 0; k < total; ++k) classify_cell(r, static_cast<std::size_t>(k));
  copy_mirrored_searches(r);
  r.summary = summarize(r);
  return r;
}

ScanResult scan_e1_e2(ScanConfig cfg) {
  cfg.plane = Plane::E1E2;
  return scan(cfg);
}
ScanResult scan_e2_e3(ScanConfig cfg) {
  cfg.plane = Plane::E2E3;
  return scan(cfg);
}
ScanResult scan_eab_ebc(ScanConfig cfg) {
  cfg.plane = Plane::Pairwise;
  return scan(cfg);
}
ScanResult scan_finner(ScanConfig cfg) {
  cfg.plane = Plane::Finner;
  return scan(cfg);
}

namespace {

/// Nearest grid index to v on an axis, or nullopt outside it.
std::optional<std::size_t> nearest(const std::vector<Rational>& axis, double v) {
  const double lo = to_double(axis.front()), hi = to_double(axis.back());
  if (v < lo || v > hi) return std::nullopt;
  const double pos = (v - lo) / (hi - lo) * static_cast<double>(axis.size() - 1);
  return static_cast<std::size_t>(std::lround(pos));
}

}  // namespace

ScanSummary summarize(const ScanResult& r) {
  ScanSummary s;
  for (const auto& c : r.cells) {
    ++s.counts[static_cast<std::size_t>(c.label)];
    const bool nested = c.label == Label::Trilocal
                            ? (c.nsi_ok && c.positivity_ok && c.residual && *c.residual < r.config.threshold)
                            : c.label == Label::Gap ? (c.nsi_ok && c.positivity_ok)
                            : c.label == Label::Nsi ? (c.positivity_ok && !c.nsi_ok)
                                                    : (!c.positivity_ok && !c.nsi_ok);
    if (!nested) ++s.nesting_violations;
    if (c.positivity_ok && c.finner_violated && !c.nice2_violated) ++s.finner_only;
    if (c.positivity_ok && c.nice2_violated && !c.finner_violated) ++s.nice2_only;
  }
  s.gap_area_fraction = r.cells.empty() ? 0.0
                                        : static_cast<double>(s.counts[static_cast<std::size_t>(Label::Gap)]) /
                                              static_cast<double>(r.cells.size());

  // Depolarizing a trilocal point keeps it trilocal; check the nearest grid cell along the path.
  const Plane plane = r.config.plane;
  const bool path_in_plane = plane == Plane::E1E2 || plane == Plane::E2E3 ||
                             (plane == Plane::Pairwise && r.config.eac == 0);
  if (path_in_plane) {
    const std::size_t n = r.xs.size();
    for (const auto& c : r.cells) {
      if (c.label != Label::Trilocal) continue;
      for (double eta : {0.25, 0.5, 0.75}) {
        double x = c.x, y = c.y;
        if (plane == Plane::E1E2) {
          x *= eta;
          y *= eta * eta;
        } else if (plane == Plane::E2E3) {
          x *= eta * eta;
          y *= eta * eta * eta;
        } else {
          x *= eta * eta;
          y *= eta * eta;
        }
        const auto i = nearest(r.xs, x), j = nearest(r.ys, y);
        if (!i || !j) continue;
        ++s.depolarization_checked;
        if (r.cells[*j * n + *i].label != Label::Trilocal) ++s.depolarization_mismatches;
      }
    }
  }
  return s;
}

namespace {

std::string format_coordinate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

std::string to_csv(const ScanResult& r) {
  std::string out = "x,y,label,evidence\n";
  for (const auto& c : r.cells) {
    out += format_coordinate(c.x) + "," + format_coordinate(c.y) + "," + label_name(c.label) + "," + c.evidence + "\n";
  }
  return out;
}

std::string to_json(const ScanResult& r) {
  using nlohmann::ordered_json;
  ordered_json cfg = {{"plane", plane_name(r.config.plane)},
                      {"resolution", r.config.resolution},
                      {"d", r.config.d},
                      {"seed", r.config.seed},
                      {"budget", r.config.budget},
                      {"restarts", r.config.restarts},
                      {"threshold", r.config.threshold}};
  if (r.config.plane == Plane::Pairwise) cfg["eac"] = to_fraction_string(r.config.eac);
  ordered_json counts;
  for (std::size_t l = 0; l < kNumLabels; ++l) counts[label_name(static_cast<Label>(l))] = r.summary.counts[l];
  ordered_json summary = {{"counts", counts},
                          {"gap_area_fraction", r.summary.gap_area_fraction},
                          {"nesting_violations", r.summary.nesting_violations},
                          {"depolarization_checked", r.summary.depolarization_checked},
                          {"depolarization_mismatches", r.summary.depolarization_mismatches}};
  if (r.config.plane == Plane::Finner) {
    summary["finner_only"] = r.summary.finner_only;
    summary["nice2_only"] = r.summary.nice2_only;
  }
  ordered_json cells = ordered_json::array();
  for (const auto& c : r.cells) {
    ordered_json cell = {{"x", c.x}, {"y", c.y}, {"label", label_name(c.label)}, {"evidence", c.evidence}};
    if (c.residual) cell["residual"] = *c.residual;
    cells.push_back(std::move(cell));
  }
  ordered_json doc = {{"config", cfg}, {"summary", summary}, {"cells", cells}};
  return doc.dump(2) + "\n";
}

void emit_csv(const ScanResult& r, const std::string& path) {
  if (r.cells.empty()) throw std::invalid_argument("empty grid");
  write_file(path, to_csv(r));
}

void emit_json(const ScanResult& r, const std::string& path) {
  if (r.cells.empty()) throw std::invalid_argument("empty grid");
  write_file(path, to_json(r));
}

}  // namespace netbound
