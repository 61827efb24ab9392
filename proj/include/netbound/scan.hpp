#pragma once

// Grid sweeps over two-parameter slices of triangle behaviors, labelling each
// point by the first check that rules it out.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netbound/rational.hpp"

namespace netbound {

enum class Plane { E1E2, E2E3, Pairwise, Finner };

/// "e1e2", "e2e3", "pairwise", "finner".
const char* plane_name(Plane p);
/// Throws ConfigError.
Plane parse_plane(std::string_view name);

enum class Label { Positivity, Nsi, Trilocal, Gap };
inline constexpr std::size_t kNumLabels = 4;

/// "positivity", "nsi", "trilocal", "gap".
const char* label_name(Label l);

struct ScanConfig {
  Plane plane = Plane::E1E2;
  int resolution = 201;   // points per axis
  Rational eac{0};        // fixed E_AC for the pairwise plane
  int d = 3;
  std::uint64_t seed = 0;
  std::size_t budget = 20000;  // objective evaluations per search restart
  int restarts = 50;
  double threshold = 1e-7;     // residual below which a point is trilocal
  int threads = 0;             // 0: NETBOUND_THREADS, else the OpenMP default
};

/// Throws ConfigError.
void validate(const ScanConfig& cfg);

/// Worker count: cfg.threads if positive, else NETBOUND_THREADS, else the OpenMP default.
int scan_threads(const ScanConfig& cfg);

struct RegionClassification {
  double x = 0;
  double y = 0;
  Label label = Label::Gap;
  std::string evidence;  // no commas
  bool positivity_ok = false;
  bool nsi_ok = false;
  std::optional<double> residual;  // when a search ran
  bool finner_violated = false;    // finner plane only
  bool nice2_violated = false;     // finner plane only
};

struct ScanSummary {
  std::array<std::size_t, kNumLabels> counts{};
  double gap_area_fraction = 0;  // gap cells over all cells
  std::size_t nesting_violations = 0;
  std::size_t depolarization_checked = 0;
  std::size_t depolarization_mismatches = 0;
  std::size_t finner_only = 0;  // Finner violated, nice2 satisfied, positivity valid
  std::size_t nice2_only = 0;
};

struct ScanResult {
  ScanConfig config;
  std::vector<Rational> xs;  // grid abscissae
  std::vector<Rational> ys;
  /// Row-major: all x for ys[0], then ys[1], ...
  std::vector<RegionClassification> cells;
  ScanSummary summary;

  const RegionClassification& at(std::size_t i, std::size_t j) const { return cells[j * xs.size() + i]; }
};

/// lo + i (hi - lo) / (n - 1), exactly.
std::vector<Rational> grid_axis(const Rational& lo, const Rational& hi, int n);

/// Classifies one point of cfg.plane; `point_seed` seeds its search.
RegionClassification classify_point(const ScanConfig& cfg, const Rational& x, const Rational& y,
                                    std::uint64_t point_seed);

/// Parallel over grid points; identical output to scan_serial.
ScanResult scan(const ScanConfig& cfg);
ScanResult scan_serial(const ScanConfig& cfg);

ScanResult scan_e1_e2(ScanConfig cfg);
ScanResult scan_e2_e3(ScanConfig cfg);
ScanResult scan_eab_ebc(ScanConfig cfg);
ScanResult scan_finner(ScanConfig cfg);

/// Label nesting and depolarization audits plus label counts.
ScanSummary summarize(const ScanResult& result);

/// Header "x,y,label,evidence", coordinates with 9 significant digits.
std::string to_csv(const ScanResult& result);
std::string to_json(const ScanResult& result);
/// Throws std::runtime_error naming the path.
void emit_csv(const ScanResult& result, const std::string& path);
void emit_json(const ScanResult& result, const std::string& path);

}  // namespace netbound
