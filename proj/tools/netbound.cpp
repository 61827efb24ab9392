// netbound: command-line front end.

#include <omp.h>

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "netbound/errors.hpp"
#include "netbound/fme.hpp"
#include "netbound/inequalities.hpp"
#include "netbound/json_io.hpp"
#include "netbound/lpfeas.hpp"
#include "netbound/scan.hpp"
#include "netbound/trilocal.hpp"

using namespace netbound;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 1;

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

Rational parse_config_rational(const std::string& text, const char* option) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ConfigError(std::string(option) + ": " + e.what());
  }
}

int run_feasible(const std::string& behavior_arg) {
  const auto e = behavior_from_json(load_json_argument(behavior_arg));
  const auto violated = triangle_positivity(e);
  if (!violated.empty()) {
    Json j;
    j["status"] = "positivity-violation";
    j["outcome"] = violated.front().label();
    print(j);
    return kExitFailure;
  }
  const auto result = nsi_feasible(e);
  Json j;
  if (result.feasible()) {
    j["status"] = "feasible";
    j["witness"] = witness_to_json(*result.witness);
    j["verified"] = witness_is_valid(e, *result.witness);
  } else {
    j["status"] = "infeasible";
    Json cert = Json::array();
    for (const auto& y : result.certificate) cert.push_back(to_fraction_string(y));
    j["certificate"] = cert;
    j["verified"] = certificate_is_valid(build_lp(e), result.certificate);
  }
  print(j);
  return 0;
}

int run_maxe2(const std::string& e1_text, const std::string& tol_text) {
  const Rational e1 = parse_config_rational(e1_text, "--e1");
  const Rational tol = parse_config_rational(tol_text, "--tol");
  if (abs(e1) > 1) throw ConfigError("--e1 must lie in [-1,1]");
  if (tol <= 0) throw ConfigError("--tol must be positive");
  const auto bracket = bisect_max_e2(e1, tol);
  const double closed = std::min(1.0, nice2_max_e2(to_double(e1)));
  Json j;
  j["e1"] = to_fraction_string(e1);
  j["max_e2"] = to_double(bracket.value);
  j["feasible"] = to_fraction_string(bracket.feasible);
  j["infeasible"] = to_fraction_string(bracket.infeasible);
  j["closed_form"] = closed;
  j["difference"] = to_double(bracket.value) - closed;
  print(j);
  return 0;
}

int run_derive(bool raw, bool trace) {
  std::vector<EliminationStep> steps;
  const auto system = derive_random_marginal_inequalities(trace ? &steps : nullptr);
  for (const auto& s : steps) {
    std::fprintf(stderr, "eliminate %-5s combined %zu candidates %zu kept %zu\n", s.variable.c_str(), s.combined,
                 s.candidates, s.kept);
  }
  if (raw) {
    for (std::size_t i = 0; i < system.size(); ++i) std::cout << system.format_row(i) << "\n";
    return 0;
  }
  const auto families = reduce_by_symmetry(system);
  LinearInequalitySystem first(system.variables());
  for (auto i : families.front().members) first.add_row(system.rows()[i]);
  for (std::size_t k = 0; k < families.size(); ++k) {
    const auto& f = families[k];
    std::cout << "family " << k + 1 << " (" << f.members.size() << " rows): " << system.format_row(f.representative)
              << "\n";
    if (k == 0) continue;
    if (const auto sub = subsumption_modulo_squares(first, f.representative)) {
      std::cout << "  implied by family 1 when squares are nonnegative; remainder "
                << system.format_row(sub->remainder) << "\n";
    }
  }
  std::cout << "sum of four hexagon outcomes reproduces family 1: " << (verify_sum4_identity() ? "true" : "false")
            << "\n";
  return 0;
}

std::vector<std::string> parse_ineq_list(const std::string& which) {
  static const std::vector<std::string> all = {"single", "nice", "nice2", "conjecture", "finner", "positivity"};
  if (which == "all") return all;
  for (const auto& name : all) {
    if (name == which) return {which};
  }
  throw ConfigError("unknown --ineq '" + which + "'");
}

int run_check(const std::string& behavior_arg, const std::string& which) {
  const auto e = behavior_from_json(load_json_argument(behavior_arg));
  const bool symmetric = e.ea == e.eb && e.eb == e.ec && e.eab == e.ebc && e.ebc == e.eac;
  Json out = Json::array();
  for (const auto& name : parse_ineq_list(which)) {
    if (name == "single") {
      for (const auto& r : check_single_family(e)) out.push_back(report_to_json(r));
    } else if (name == "nice") {
      out.push_back(report_to_json(check_nice(e)));
    } else if (name == "nice2") {
      if (!symmetric && which != "all") throw ConfigError("nice2 needs a symmetric behavior");
      if (symmetric) out.push_back(report_to_json(check_nice2(e.ea, e.eab)));
    } else if (name == "conjecture") {
      out.push_back(report_to_json(check_conjecture(e)));
    } else if (name == "finner") {
      for (const auto& r : finner_check(distribution_from_behavior(e))) out.push_back(report_to_json(r));
    } else if (name == "positivity") {
      out.push_back(report_to_json(check_pairwise_positivity(e)));
    }
  }
  print(out);
  return 0;
}

Json resolved_json(const ResolvedModel& r) {
  Json meta;
  meta["polynomial"] = r.polynomial;
  meta["choice"] = r.variant;
  meta["root"] = r.root;
  meta["rejected"] = r.rejected;
  return meta;
}

int run_trilocal_eval(const std::string& model_arg, const std::string& builtin) {
  Json j;
  if (!builtin.empty()) {
    if (!model_arg.empty()) throw ConfigError("give either --model or --builtin");
    if (builtin == "parity-bits" || builtin == "e2-minus-third") {
      const auto m = builtin == "parity-bits" ? model_parity_bits() : model_e2_minus_third();
      const auto dist = evaluate(m);
      j["model"] = model_to_json(m);
      j["distribution"] = distribution_to_json(dist);
      j["behavior"] = behavior_to_json(behavior_from_distribution(dist));
    } else if (builtin == "max-e1" || builtin == "e1e3-zero") {
      const auto r = builtin == "max-e1" ? model_max_e1() : model_e1e3_zero();
      j["model"] = model_to_json(r.model);
      j["behavior"] = behavior_to_json(fast_correlators(r.model));
      j["metadata"] = resolved_json(r);
    } else {
      throw ConfigError("unknown --builtin '" + builtin + "' (parity-bits, e2-minus-third, max-e1, e1e3-zero)");
    }
  } else {
    if (model_arg.empty()) throw ConfigError("--model or --builtin is required");
    const auto m = model_from_json(load_json_argument(model_arg));
    const auto dist = evaluate(m);
    j["distribution"] = distribution_to_json(dist);
    j["behavior"] = behavior_to_json(behavior_from_distribution(dist));
  }
  print(j);
  return 0;
}

int run_trilocal_search(const std::string& target_arg, const SearchOptions& opts) {
  const auto target = target_from_json(load_json_argument(target_arg));
  SearchOptions o = opts;
  if (o.d < 1 || o.d > kMaxAlphabet) throw ConfigError("--d must be in 1..6");
  if (o.budget == 0) throw ConfigError("--budget must be positive");
  if (o.restarts < 1) throw ConfigError("--restarts must be positive");
  const auto result = search(target, o);
  Json j;
  j["residual"] = result.residual;
  j["restart"] = result.restart;
  j["model"] = model_to_json(result.model);
  j["behavior"] = behavior_to_json(fast_correlators(result.model));
  if (result.warning) {
    j["warning"] = *result.warning;
    std::cerr << "warning: " << *result.warning << "\n";
  }
  print(j);
  return 0;
}

int run_scan(ScanConfig cfg, const std::string& plane, const std::string& eac, const std::string& out, bool json) {
  cfg.plane = parse_plane(plane);
  if (!eac.empty()) {
    if (cfg.plane != Plane::Pairwise) throw ConfigError("--eac applies to the pairwise plane only");
    cfg.eac = parse_config_rational(eac, "--eac");
  }
  validate(cfg);
  const auto result = scan(cfg);
  const std::string text = json ? to_json(result) : to_csv(result);
  if (out.empty()) {
    std::cout << text;
  } else if (json) {
    emit_json(result, out);
  } else {
    emit_csv(result, out);
  }
  const auto& s = result.summary;
  std::fprintf(stderr,
               "positivity %zu nsi %zu trilocal %zu gap %zu; gap fraction %.4f; nesting violations %zu; "
               "depolarization mismatches %zu/%zu\n",
               s.counts[0], s.counts[1], s.counts[2], s.counts[3], s.gap_area_fraction, s.nesting_violations,
               s.depolarization_mismatches, s.depolarization_checked);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NSI bounds, inequality derivation and trilocal models for the triangle network"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string behavior_arg;
  auto* feasible = app.add_subcommand("feasible", "Decide NSI compatibility of a behavior by exact LP");
  feasible->add_option("--behavior", behavior_arg, "Behavior JSON (inline or file)")->required();
  feasible->callback([&] { action = [&] { return run_feasible(behavior_arg); }; });

  std::string e1_text, tol_text = "1/10000";
  auto* maxe2 = app.add_subcommand("maxe2", "Largest NSI-feasible symmetric E2 for a given E1");
  maxe2->add_option("--e1", e1_text, "E1 as fraction or decimal")->required();
  maxe2->add_option("--tol", tol_text, "Bisection tolerance")->capture_default_str();
  maxe2->callback([&] { action = [&] { return run_maxe2(e1_text, tol_text); }; });

  bool raw = false, trace = false;
  auto* derive = app.add_subcommand("derive", "Eliminate the free hexagon variables by Fourier-Motzkin");
  derive->add_flag("--raw", raw, "Print every irredundant row");
  derive->add_flag("--trace", trace, "Per-step row counts on stderr");
  derive->callback([&] { action = [&] { return run_derive(raw, trace); }; });

  std::string check_behavior, ineq = "all";
  auto* check = app.add_subcommand("check", "Evaluate closed-form inequalities on a behavior");
  check->add_option("--behavior", check_behavior, "Behavior JSON (inline or file)")->required();
  check->add_option("--ineq", ineq, "single|nice|nice2|conjecture|finner|positivity|all")->capture_default_str();
  check->callback([&] { action = [&] { return run_check(check_behavior, ineq); }; });

  auto* trilocal = app.add_subcommand("trilocal", "Trilocal models");
  trilocal->require_subcommand(1);
  std::string model_arg, builtin;
  auto* eval = trilocal->add_subcommand("eval", "Evaluate a model");
  eval->add_option("--model", model_arg, "Model JSON (inline or file)");
  eval->add_option("--builtin", builtin, "parity-bits|e2-minus-third|max-e1|e1e3-zero");
  eval->callback([&] { action = [&] { return run_trilocal_eval(model_arg, builtin); }; });

  std::string target_arg;
  SearchOptions search_opts;
  auto* search_cmd = trilocal->add_subcommand("search", "Search for a model matching target correlators");
  search_cmd->add_option("--target", target_arg, "Target JSON (inline or file)")->required();
  search_cmd->add_option("--d", search_opts.d, "Alphabet size")->capture_default_str();
  search_cmd->add_option("--seed", search_opts.seed, "Seed")->capture_default_str();
  search_cmd->add_option("--budget", search_opts.budget, "Evaluations per restart")->capture_default_str();
  search_cmd->add_option("--restarts", search_opts.restarts, "Restarts")->capture_default_str();
  search_cmd->callback([&] { action = [&] { return run_trilocal_search(target_arg, search_opts); }; });

  ScanConfig scan_cfg;
  std::string plane, eac, out;
  bool json = false;
  auto* scan_cmd = app.add_subcommand("scan", "Classify a grid of behaviors");
  scan_cmd->add_option("--plane", plane, "e1e2|e2e3|pairwise|finner")->required();
  scan_cmd->add_option("--eac", eac, "Fixed E_AC for the pairwise plane");
  scan_cmd->add_option("--res", scan_cfg.resolution, "Points per axis")->capture_default_str();
  scan_cmd->add_option("--d", scan_cfg.d, "Search alphabet size")->capture_default_str();
  scan_cmd->add_option("--seed", scan_cfg.seed, "Seed")->capture_default_str();
  scan_cmd->add_option("--budget", scan_cfg.budget, "Evaluations per search restart")->capture_default_str();
  scan_cmd->add_option("--restarts", scan_cfg.restarts, "Search restarts per point")->capture_default_str();
  scan_cmd->add_option("--threshold", scan_cfg.threshold, "Residual for the trilocal label")->capture_default_str();
  scan_cmd->add_option("--out", out, "Output path (stdout if omitted)");
  scan_cmd->add_flag("--json", json, "JSON instead of CSV");
  scan_cmd->callback([&] { action = [&] { return run_scan(scan_cfg, plane, eac, out, json); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    ScanConfig env_probe;
    omp_set_num_threads(scan_threads(env_probe));
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
