#include "netbound/fme.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "netbound/errors.hpp"
#include "netbound/simplex.hpp"

namespace netbound {

namespace {

std::string row_key(const InequalityRow& row) {
  std::string key = row.constant.get_str();
  for (const auto& c : row.coefficients) {
    key.push_back(',');
    key += c.get_str();
  }
  return key;
}

bool is_zero_row(const InequalityRow& row) {
  return std::all_of(row.coefficients.begin(), row.coefficients.end(),
                     [](const Rational& c) { return sgn(c) == 0; });
}

bool trivially_true(const InequalityRow& row) { return is_zero_row(row) && row.constant >= 0; }

// Columns (g_s; g0_s) for the selected rows plus one slack column (0; 1).
// M x = (g; g0), x >= 0 solvable iff the row is implied (affine Farkas lemma).
bool implied_by_subset(const std::vector<InequalityRow>& rows, const std::vector<std::size_t>& subset,
                       const InequalityRow& row) {
  const std::size_t n = row.coefficients.size();
  lp::ColumnMatrix<Rational> M(n + 1, subset.size() + 1);
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const auto& r = rows[subset[j]];
    for (std::size_t i = 0; i < n; ++i) M(i, j) = r.coefficients[i];
    M(n, j) = r.constant;
  }
  M(n, subset.size()) = 1;
  std::vector<Rational> h(row.coefficients);
  h.push_back(row.constant);
  return lp::solve_nonnegative(M, h).status == lp::Feasibility::Feasible;
}

bool rows_feasible(const std::vector<InequalityRow>& rows, std::size_t n) {
  if (rows.empty()) return true;
  // Infeasible iff some lambda >= 0 cancels every coefficient and leaves a negative constant.
  lp::ColumnMatrix<Rational> M(n + 1, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) M(i, j) = rows[j].coefficients[i];
    M(n, j) = rows[j].constant;
  }
  std::vector<Rational> h(n + 1, Rational(0));
  h[n] = -1;
  return lp::solve_nonnegative(M, h).status != lp::Feasibility::Feasible;
}

struct Prepared {
  std::vector<InequalityRow> rows;
  bool infeasible = false;
};

Prepared prepare(const LinearInequalitySystem& system) {
  Prepared out;
  std::unordered_set<std::string> seen;
  for (const auto& r : system.rows()) {
    auto row = normalized(r);
    if (trivially_true(row)) continue;
    if (is_zero_row(row)) {
      out.infeasible = true;
      return out;
    }
    if (seen.insert(row_key(row)).second) out.rows.push_back(std::move(row));
  }
  out.infeasible = !rows_feasible(out.rows, system.num_variables());
  return out;
}

LinearInequalitySystem infeasible_system(const LinearInequalitySystem& system) {
  LinearInequalitySystem out(system.variables());
  out.add_row(std::vector<Rational>(system.num_variables(), Rational(0)), Rational(-1));
  return out;
}

// Removes, from last to first, rows implied by the other surviving rows.
// Rows flagged in `keep` are never tested.
LinearInequalitySystem backward_pass(const LinearInequalitySystem& system, const std::vector<InequalityRow>& rows,
                                     const std::vector<char>& keep) {
  std::vector<char> alive(rows.size(), 1);
  for (std::size_t k = rows.size(); k-- > 0;) {
    if (keep[k]) continue;
    std::vector<std::size_t> others;
    others.reserve(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != k && alive[j]) others.push_back(j);
    }
    if (implied_by_subset(rows, others, rows[k])) alive[k] = 0;
  }
  LinearInequalitySystem out(system.variables());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (alive[k]) out.add_row(rows[k]);
  }
  return out;
}

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
  std::vector<std::size_t> idx;
  idx.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != skip) idx.push_back(j);
  }
  return idx;
}

class History {
 public:
  History() = default;
  explicit History(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  History operator|(const History& other) const {
    History out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct TrackedRow {
  InequalityRow row;
  History history;
};

InequalityRow combine(const InequalityRow& pos, const InequalityRow& neg, std::size_t var) {
  // pos[var] > 0 > neg[var]; the combination cancels var.
  const Rational a = -neg.coefficients[var];
  const Rational b = pos.coefficients[var];
  InequalityRow out;
  out.coefficients.resize(pos.coefficients.size());
  for (std::size_t i = 0; i < out.coefficients.size(); ++i) {
    out.coefficients[i] = a * pos.coefficients[i] + b * neg.coefficients[i];
  }
  out.coefficients[var] = 0;
  out.constant = a * pos.constant + b * neg.constant;
  return normalized(std::move(out));
}

std::string format_coefficient_term(const Rational& c, const std::string& name, bool first) {
  std::string s;
  const bool negative = c < 0;
  const Rational mag = negative ? Rational(-c) : c;
  if (first) {
    if (negative) s += "-";
  } else {
    s += negative ? " - " : " + ";
  }
  if (name.empty()) return s + to_fraction_string(mag);
  if (mag != 1) s += to_fraction_string(mag) + "*";
  return s + name;
}

}  // namespace

InequalityRow normalized(InequalityRow row) {
  mpz_class g = 0;
  mpz_class l = 1;
  auto absorb = [&](const Rational& c) {
    if (sgn(c) == 0) return;
    mpz_class num = abs(c.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  };
  for (const auto& c : row.coefficients) absorb(c);
  absorb(row.constant);
  if (g == 0) return row;
  Rational scale(l, g);
  scale.canonicalize();
  for (auto& c : row.coefficients) c *= scale;
  row.constant *= scale;
  return row;
}

LinearInequalitySystem::LinearInequalitySystem(std::vector<std::string> variables) : variables_(std::move(variables)) {
  std::unordered_set<std::string> seen;
  for (const auto& v : variables_) {
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable " + v);
  }
}

std::optional<std::size_t> LinearInequalitySystem::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t LinearInequalitySystem::variable_index(std::string_view name) const {
  auto i = find_variable(name);
  if (!i) throw UnknownVariable("unknown variable " + std::string(name));
  return *i;
}

void LinearInequalitySystem::add_row(InequalityRow row) {
  if (row.coefficients.size() != variables_.size()) {
    throw std::invalid_argument("row length does not match the variable count");
  }
  rows_.push_back(std::move(row));
}

void LinearInequalitySystem::add_row(std::vector<Rational> coefficients, Rational constant) {
  add_row(InequalityRow{std::move(coefficients), std::move(constant)});
}

InequalityRow LinearInequalitySystem::make_row(std::initializer_list<std::pair<std::string_view, Rational>> terms,
                                               Rational constant) const {
  InequalityRow row{std::vector<Rational>(variables_.size(), Rational(0)), std::move(constant)};
  for (const auto& [name, value] : terms) row.coefficients[variable_index(name)] += value;
  return row;
}

std::string LinearInequalitySystem::format_row(const InequalityRow& row) const {
  std::string s;
  bool first = true;
  if (sgn(row.constant) != 0) {
    s += format_coefficient_term(row.constant, "", true);
    first = false;
  }
  for (std::size_t i = 0; i < row.coefficients.size(); ++i) {
    if (sgn(row.coefficients[i]) == 0) continue;
    s += format_coefficient_term(row.coefficients[i], variables_[i], first);
    first = false;
  }
  if (first) s = "0";
  return s + " >= 0";
}

InequalityRow LinearInequalitySystem::parse_row(std::string_view text) const {
  constexpr std::string_view suffix = " >= 0";
  if (text.size() < suffix.size() || text.substr(text.size() - suffix.size()) != suffix) {
    throw ParseError("row must end with ' >= 0': " + std::string(text));
  }
  text.remove_suffix(suffix.size());
  InequalityRow row;
  row.coefficients.assign(variables_.size(), Rational(0));
  int sign = 1;
  bool expect_term = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find(' ', pos), text.size());
    std::string_view token = text.substr(pos, end - pos);
    pos = end + 1;
    if (token.empty()) continue;
    if (!expect_term) {
      if (token != "+" && token != "-") throw ParseError("expected '+' or '-' in row: " + std::string(text));
      sign = token == "-" ? -1 : 1;
      expect_term = true;
      continue;
    }
    if (token.front() == '-') {
      sign = -sign;
      token.remove_prefix(1);
    }
    const auto star = token.find('*');
    Rational coefficient(1);
    std::string_view name = token;
    if (star != std::string_view::npos) {
      coefficient = parse_rational(token.substr(0, star));
      name = token.substr(star + 1);
    } else if (!std::isalpha(static_cast<unsigned char>(token.front()))) {
      coefficient = parse_rational(token);
      name = {};
    }
    if (name.empty()) {
      row.constant += sign * coefficient;
    } else {
      row.coefficients[variable_index(name)] += sign * coefficient;
    }
    sign = 1;
    expect_term = false;
  }
  if (expect_term) throw ParseError("dangling operator in row: " + std::string(text));
  return row;
}

bool LinearInequalitySystem::satisfied_by(std::span<const Rational> point) const {
  if (point.size() != variables_.size()) throw std::invalid_argument("point dimension mismatch");
  for (const auto& row : rows_) {
    Rational s = row.constant;
    for (std::size_t i = 0; i < point.size(); ++i) s += row.coefficients[i] * point[i];
    if (s < 0) return false;
  }
  return true;
}

std::optional<std::size_t> LinearInequalitySystem::find_row(const InequalityRow& row) const {
  const auto target = normalized(row);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (normalized(rows_[i]) == target) return i;
  }
  return std::nullopt;
}

LinearInequalitySystem fm_eliminate(const LinearInequalitySystem& system, std::string_view var) {
  const std::size_t v = system.variable_index(var);
  std::vector<std::string> names = system.variables();
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(v));
  LinearInequalitySystem out(std::move(names));
  std::unordered_set<std::string> seen;
  auto emit = [&](InequalityRow row) {
    row = normalized(std::move(row));
    row.coefficients.erase(row.coefficients.begin() + static_cast<std::ptrdiff_t>(v));
    if (seen.insert(row_key(row)).second) out.add_row(std::move(row));
  };
  std::vector<const InequalityRow*> pos, neg;
  for (const auto& row : system.rows()) {
    const int s = sgn(row.coefficients[v]);
    if (s == 0) {
      emit(row);
    } else {
      (s > 0 ? pos : neg).push_back(&row);
    }
  }
  for (const auto* p : pos) {
    for (const auto* n : neg) emit(combine(*p, *n, v));
  }
  return out;
}

bool is_feasible(const LinearInequalitySystem& system) {
  for (const auto& row : system.rows()) {
    if (is_zero_row(row) && row.constant < 0) return false;
  }
  return rows_feasible(system.rows(), system.num_variables());
}

bool is_implied(const LinearInequalitySystem& system, const InequalityRow& row) {
  if (row.coefficients.size() != system.num_variables()) {
    throw std::invalid_argument("row length does not match the variable count");
  }
  std::vector<std::size_t> all(system.size());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return implied_by_subset(system.rows(), all, row);
}

LinearInequalitySystem remove_redundant_serial(const LinearInequalitySystem& system) {
  const Prepared prepared = prepare(system);
  if (prepared.infeasible) return infeasible_system(system);
  return backward_pass(system, prepared.rows, std::vector<char>(prepared.rows.size(), 0));
}

LinearInequalitySystem remove_redundant(const LinearInequalitySystem& system) {
  const Prepared prepared = prepare(system);
  if (prepared.infeasible) return infeasible_system(system);
  const auto& rows = prepared.rows;
  const auto n = static_cast<std::int64_t>(rows.size());
  std::vector<char> essential(rows.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    essential[i] = implied_by_subset(rows, all_but(rows.size(), i), rows[i]) ? 0 : 1;
  }
  return backward_pass(system, rows, essential);
}

LinearInequalitySystem eliminate_all(const LinearInequalitySystem& system, std::span<const std::string> order,
                                     const EliminationOptions& options, std::vector<EliminationStep>* trace) {
  std::vector<std::size_t> order_idx;
  for (const auto& name : order) {
    const std::size_t v = system.variable_index(name);
    if (std::find(order_idx.begin(), order_idx.end(), v) != order_idx.end()) {
      throw std::invalid_argument("variable " + name + " listed twice in the elimination order");
    }
    order_idx.push_back(v);
  }

  std::vector<TrackedRow> rows;
  rows.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    History h(system.size());
    h.set(i);
    rows.push_back({normalized(system.rows()[i]), std::move(h)});
  }

  for (std::size_t step = 0; step < order_idx.size(); ++step) {
    const std::size_t v = order_idx[step];
    EliminationStep stats;
    stats.variable = system.variables()[v];

    std::vector<TrackedRow> next;
    std::unordered_map<std::string, std::size_t> index;
    auto emit = [&](InequalityRow row, History history) {
      if (trivially_true(row)) return;
      if (options.prune_by_history && history.count() > step + 2) return;
      auto [it, inserted] = index.emplace(row_key(row), next.size());
      if (inserted) {
        next.push_back({std::move(row), std::move(history)});
      } else if (history.count() < next[it->second].history.count()) {
        next[it->second].history = std::move(history);
      }
    };

    std::vector<const TrackedRow*> pos, neg;
    for (const auto& r : rows) {
      const int s = sgn(r.row.coefficients[v]);
      if (s == 0) {
        emit(r.row, r.history);
      } else {
        (s > 0 ? pos : neg).push_back(&r);
      }
    }
    for (const auto* p : pos) {
      for (const auto* n : neg) {
        ++stats.combined;
        emit(combine(p->row, n->row, v), p->history | n->history);
      }
    }
    stats.candidates = next.size();

    if (options.remove_redundant_each_step) {
      LinearInequalitySystem current(system.variables());
      for (const auto& r : next) current.add_row(r.row);
      const auto reduced = remove_redundant(current);
      std::vector<TrackedRow> kept;
      kept.reserve(reduced.size());
      for (const auto& row : reduced.rows()) {
        auto it = index.find(row_key(row));
        if (it != index.end()) {
          kept.push_back(std::move(next[it->second]));
        } else {
          kept.push_back({row, History(system.size())});
        }
      }
      next = std::move(kept);
    }
    stats.kept = next.size();
    rows = std::move(next);
    if (trace) trace->push_back(std::move(stats));
  }

  std::vector<std::string> remaining;
  std::vector<std::size_t> remaining_idx;
  for (std::size_t i = 0; i < system.num_variables(); ++i) {
    if (std::find(order_idx.begin(), order_idx.end(), i) == order_idx.end()) {
      remaining.push_back(system.variables()[i]);
      remaining_idx.push_back(i);
    }
  }
  LinearInequalitySystem out(remaining);
  for (const auto& r : rows) {
    InequalityRow row;
    row.constant = r.row.constant;
    for (auto i : remaining_idx) row.coefficients.push_back(r.row.coefficients[i]);
    out.add_row(std::move(row));
  }
  return out;
}

std::vector<std::string> hexagon_system_variables() {
  std::vector<std::string> vars = {"EAB", "EBC", "EAC", "EAB_sq", "EBC_sq", "EAC_sq"};
  for (std::size_t k = 0; k < kNumFreeVars; ++k) vars.emplace_back(free_var_name(static_cast<FreeVar>(k)));
  return vars;
}

namespace {

InequalityRow zero_marginal_row(const HexagonOutcome& o) {
  constexpr std::size_t kPairs = 3;
  InequalityRow row{std::vector<Rational>(2 * kPairs + kNumFreeVars, Rational(0)), Rational(0)};
  for (const auto& term : hexagon::expansion()) {
    if (term.power[hexagon::kEA] || term.power[hexagon::kEB] || term.power[hexagon::kEC]) continue;
    const int sign = hexagon::term_sign_sum(term, o);
    if (sign == 0) continue;
    int slot = -1;
    for (std::size_t k = 0; k < kPairs; ++k) {
      const int p = term.power[hexagon::kEAB + k];
      if (p == 0) continue;
      if (slot >= 0 || p > 2) throw std::logic_error("hexagon term is not linear in the pairwise symbols");
      slot = static_cast<int>(p == 1 ? k : kPairs + k);
    }
    if (term.free_var >= 0) {
      if (slot >= 0) throw std::logic_error("free variable multiplied by a pairwise correlator");
      row.coefficients[2 * kPairs + static_cast<std::size_t>(term.free_var)] += sign;
    } else if (slot >= 0) {
      row.coefficients[static_cast<std::size_t>(slot)] += sign;
    } else {
      row.constant += sign;
    }
  }
  return row;
}

}  // namespace

LinearInequalitySystem hexagon_zero_marginal_system() {
  LinearInequalitySystem system(hexagon_system_variables());
  for (const auto& o : hexagon_outcomes()) system.add_row(zero_marginal_row(o));
  return system;
}

std::vector<std::string> default_elimination_order() {
  return {"F3", "F3p", "F3pp", "F5", "F5p", "F5pp", "F4", "F4p", "F4pp", "F6"};
}

LinearInequalitySystem derive_random_marginal_inequalities(std::vector<EliminationStep>* trace) {
  const auto order = default_elimination_order();
  return remove_redundant(eliminate_all(hexagon_zero_marginal_system(), order, {}, trace));
}

InequalityRow sum_of_hexagon_rows(std::span<const HexagonOutcome> outcomes) {
  InequalityRow sum{std::vector<Rational>(6 + kNumFreeVars, Rational(0)), Rational(0)};
  for (const auto& o : outcomes) {
    const auto row = zero_marginal_row(o);
    for (std::size_t i = 0; i < sum.coefficients.size(); ++i) sum.coefficients[i] += row.coefficients[i];
    sum.constant += row.constant;
  }
  return sum;
}

std::array<HexagonOutcome, 4> sum4_outcomes() {
  return {make_hexagon_outcome(1, 1, 1, -1, -1, 1), make_hexagon_outcome(-1, -1, -1, 1, 1, -1),
          make_hexagon_outcome(1, 1, -1, 1, 1, 1), make_hexagon_outcome(-1, -1, 1, -1, -1, -1)};
}

bool verify_sum4_identity(std::span<const HexagonOutcome> outcomes) {
  // 16 * sum p = (sum of 64 p) / 4
  InequalityRow sum = sum_of_hexagon_rows(outcomes);
  for (auto& c : sum.coefficients) c /= 4;
  sum.constant /= 4;
  const LinearInequalitySystem vars(hexagon_system_variables());
  const auto expected = vars.make_row({{"EAB", 2}, {"EAB_sq", 1}, {"EBC_sq", -1}, {"EAC_sq", -1}}, Rational(1));
  return sum == expected;
}

InequalityRow SignedPermutation::apply(const InequalityRow& row) const {
  InequalityRow out{std::vector<Rational>(row.coefficients.size(), Rational(0)), row.constant};
  for (std::size_t i = 0; i < row.coefficients.size(); ++i) out.coefficients[target[i]] = sign[i] * row.coefficients[i];
  return out;
}

std::vector<SignedPermutation> triangle_symmetry_group(const std::vector<std::string>& variables) {
  struct Parsed {
    unsigned parties;
    bool square;
  };
  auto mask_name = [](unsigned mask) -> std::string {
    switch (mask) {
      case 1: return "A";
      case 2: return "B";
      case 4: return "C";
      case 3: return "AB";
      case 6: return "BC";
      case 5: return "AC";
      case 7: return "ABC";
      default: return "";
    }
  };
  std::vector<Parsed> parsed;
  std::map<std::pair<unsigned, bool>, std::size_t> lookup;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    std::string_view name = variables[i];
    bool square = false;
    if (name.ends_with("_sq")) {
      square = true;
      name.remove_suffix(3);
    }
    if (name.size() < 2 || name[0] != 'E') throw UnknownVariable("not a correlator name: " + variables[i]);
    unsigned mask = 0;
    for (char c : name.substr(1)) {
      if (c < 'A' || c > 'C') throw UnknownVariable("not a correlator name: " + variables[i]);
      mask |= 1u << (c - 'A');
    }
    if (mask_name(mask) != name.substr(1)) throw UnknownVariable("not a correlator name: " + variables[i]);
    parsed.push_back({mask, square});
    lookup[{mask, square}] = i;
  }

  std::array<int, 3> perm = {0, 1, 2};
  std::vector<SignedPermutation> group;
  do {
    for (unsigned flips = 0; flips < 8; ++flips) {
      SignedPermutation g;
      g.target.resize(variables.size());
      g.sign.resize(variables.size());
      for (std::size_t i = 0; i < variables.size(); ++i) {
        unsigned image = 0;
        int s = 1;
        for (int p = 0; p < 3; ++p) {
          if (parsed[i].parties & (1u << p)) {
            image |= 1u << perm[static_cast<std::size_t>(p)];
            if (flips & (1u << p)) s = -s;
          }
        }
        auto it = lookup.find({image, parsed[i].square});
        if (it == lookup.end()) throw UnknownVariable("symmetry image of " + variables[i] + " is not a variable");
        g.target[i] = it->second;
        g.sign[i] = parsed[i].square ? 1 : s;
      }
      group.push_back(std::move(g));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return group;
}

namespace {

bool lex_greater(const InequalityRow& a, const InequalityRow& b) {
  if (a.constant != b.constant) return a.constant > b.constant;
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i] != b.coefficients[i]) return a.coefficients[i] > b.coefficients[i];
  }
  return false;
}

}  // namespace

std::vector<InequalityFamily> reduce_by_symmetry(const LinearInequalitySystem& system) {
  const auto group = triangle_symmetry_group(system.variables());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < system.size(); ++i) index.emplace(row_key(normalized(system.rows()[i])), i);

  std::vector<InequalityFamily> families;
  std::vector<char> assigned(system.size(), 0);
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (assigned[i]) continue;
    InequalityFamily family;
    std::unordered_set<std::string> images;
    bool have_rep = false;
    for (const auto& g : group) {
      auto image = normalized(g.apply(system.rows()[i]));
      const auto key = row_key(image);
      if (!images.insert(key).second) continue;
      if (auto it = index.find(key); it != index.end() && !assigned[it->second]) {
        assigned[it->second] = 1;
        family.members.push_back(it->second);
      }
      if (!have_rep || lex_greater(image, family.representative)) {
        family.representative = std::move(image);
        have_rep = true;
      }
    }
    std::sort(family.members.begin(), family.members.end());
    family.orbit_size = images.size();
    families.push_back(std::move(family));
  }
  return families;
}

std::optional<SquareSubsumption> subsumption_modulo_squares(const LinearInequalitySystem& family,
                                                            const InequalityRow& target) {
  const std::size_t n = family.num_variables();
  if (target.coefficients.size() != n) throw std::invalid_argument("row length does not match the variable count");
  std::vector<std::size_t> squares;
  for (std::size_t i = 0; i < n; ++i) {
    if (family.variables()[i].ends_with("_sq")) squares.push_back(i);
  }
  const std::size_t m = family.size();
  lp::ColumnMatrix<Rational> M(n + 1, m + squares.size() + 1);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& r = family.rows()[j];
    for (std::size_t i = 0; i < n; ++i) M(i, j) = r.coefficients[i];
    M(n, j) = r.constant;
  }
  for (std::size_t k = 0; k < squares.size(); ++k) M(squares[k], m + k) = 1;
  M(n, m + squares.size()) = 1;
  std::vector<Rational> h(target.coefficients);
  h.push_back(target.constant);

  const auto solution = lp::solve_nonnegative(M, h);
  if (solution.status != lp::Feasibility::Feasible) return std::nullopt;
  SquareSubsumption out;
  out.multipliers.assign(solution.x.begin(), solution.x.begin() + static_cast<std::ptrdiff_t>(m));
  out.remainder = target;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& r = family.rows()[j];
    for (std::size_t i = 0; i < n; ++i) out.remainder.coefficients[i] -= out.multipliers[j] * r.coefficients[i];
    out.remainder.constant -= out.multipliers[j] * r.constant;
  }
  return out;
}

}  // namespace netbound
