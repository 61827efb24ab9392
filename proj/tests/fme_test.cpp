#include <gtest/gtest.h>

#include <random>
#include <set>

#include "netbound/errors.hpp"
#include "netbound/fme.hpp"
#include "netbound/simplex.hpp"

using namespace netbound;

namespace {

LinearInequalitySystem random_system(std::mt19937& rng, std::size_t vars, std::size_t rows, bool boxed) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars; ++i) names.push_back("x" + std::to_string(i));
  LinearInequalitySystem s(names);
  std::uniform_int_distribution<int> coef(-3, 3), cst(0, 6);
  if (boxed) {
    for (std::size_t i = 0; i < vars; ++i) {
      std::vector<Rational> up(vars, Rational(0)), down(vars, Rational(0));
      up[i] = -1;
      down[i] = 1;
      s.add_row(up, 4);
      s.add_row(down, 4);
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<Rational> c(vars);
    for (auto& v : c) v = coef(rng);
    s.add_row(c, cst(rng));
  }
  return s;
}

// Solves the d x d system given by the selected rows as equalities (Gauss-Jordan, exact).
std::optional<std::vector<Rational>> intersect(const LinearInequalitySystem& s, const std::vector<std::size_t>& pick) {
  const std::size_t d = s.num_variables();
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = s.rows()[pick[r]].coefficients[c];
    a[r][d] = -s.rows()[pick[r]].constant;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && a[p][c] == 0) ++p;
    if (p == d) return std::nullopt;
    std::swap(a[p], a[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<Rational> x(d);
  for (std::size_t c = 0; c < d; ++c) x[c] = a[c][d] / a[c][c];
  return x;
}

std::vector<std::vector<Rational>> vertices(const LinearInequalitySystem& s) {
  const std::size_t d = s.num_variables();
  const std::size_t n = s.size();
  std::set<std::vector<Rational>> out;
  std::vector<std::size_t> pick(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == d) {
      auto x = intersect(s, pick);
      if (x && s.satisfied_by(*x)) out.insert(*x);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return {out.begin(), out.end()};
}

bool in_convex_hull(const std::vector<std::vector<Rational>>& points, const std::vector<Rational>& q) {
  const std::size_t d = q.size();
  lp::ColumnMatrix<Rational> M(d + 1, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) M(i, j) = points[j][i];
    M(d, j) = 1;
  }
  std::vector<Rational> h(q);
  h.push_back(1);
  return lp::solve_nonnegative(M, h).status == lp::Feasibility::Feasible;
}

}  // namespace

TEST(Normalized, ScalesToCoprimeIntegers) {
  EXPECT_EQ(normalized({{2, 4}, 6}), (InequalityRow{{1, 2}, 3}));
  EXPECT_EQ(normalized({{Rational(1, 2), Rational(-1, 3)}, 0}), (InequalityRow{{3, -2}, 0}));
  EXPECT_EQ(normalized({{-4}, 2}), (InequalityRow{{-2}, 1}));
  EXPECT_EQ(normalized({{0, 0}, 0}), (InequalityRow{{0, 0}, 0}));
}

TEST(LinearInequalitySystem, Construction) {
  EXPECT_THROW(LinearInequalitySystem({"x", "x"}), std::invalid_argument);
  LinearInequalitySystem s({"x", "y"});
  EXPECT_THROW(s.add_row({1}, 0), std::invalid_argument);
  EXPECT_THROW(s.variable_index("z"), UnknownVariable);
  const auto row = s.make_row({{"y", 2}, {"x", -1}}, Rational(1, 2));
  EXPECT_EQ(s.format_row(row), "1/2 - x + 2*y >= 0");
  EXPECT_EQ(s.format_row(InequalityRow{{0, 0}, 0}), "0 >= 0");
}

TEST(LinearInequalitySystem, ParseRowInvertsFormat) {
  LinearInequalitySystem s({"x", "y"});
  const InequalityRow rows[] = {{{-1, 2}, Rational(1, 2)}, {{0, 0}, 0}, {{-3, 0}, 0}, {{1, -1}, -2}, {{Rational(2, 3), 1}, 0}};
  for (const auto& row : rows) EXPECT_EQ(s.parse_row(s.format_row(row)), row) << s.format_row(row);
  EXPECT_THROW(s.parse_row("x + z >= 0"), UnknownVariable);
  EXPECT_THROW(s.parse_row("x +"), ParseError);
  EXPECT_THROW(s.parse_row("x + >= 0"), ParseError);
  EXPECT_THROW(s.parse_row("x y >= 0"), ParseError);
}

TEST(FmEliminate, TextbookExample) {
  LinearInequalitySystem s({"x", "y"});
  s.add_row({0, 1}, 0);
  s.add_row({0, -1}, 1);
  s.add_row({-1, 1}, 0);
  const auto out = fm_eliminate(s, "y");
  ASSERT_EQ(out.variables(), std::vector<std::string>{"x"});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.rows()[0], (InequalityRow{{0}, 1}));
  EXPECT_EQ(out.rows()[1], (InequalityRow{{-1}, 1}));
}

TEST(FmEliminate, AbsentVariable) {
  LinearInequalitySystem s({"x", "y"});
  s.add_row({1, 0}, 0);
  s.add_row({-1, 0}, 2);
  const auto out = fm_eliminate(s, "y");
  EXPECT_EQ(out.variables(), std::vector<std::string>{"x"});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.rows()[0], (InequalityRow{{1}, 0}));
  EXPECT_EQ(out.rows()[1], (InequalityRow{{-1}, 2}));
  EXPECT_THROW(fm_eliminate(s, "z"), UnknownVariable);
}

TEST(FmEliminate, SoundOnRandomPoints) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_system(rng, 3, 6, true);
    const auto proj = fm_eliminate(s, "x2");
    for (int k = 0; k < 200; ++k) {
      std::vector<Rational> p = {make_rational(coord(rng), 2), make_rational(coord(rng), 2), make_rational(coord(rng), 2)};
      if (!s.satisfied_by(p)) continue;
      EXPECT_TRUE(proj.satisfied_by(std::vector<Rational>(p.begin(), p.begin() + 2)));
    }
  }
}

TEST(FmEliminate, ProjectionMatchesVertexEnumeration) {
  std::mt19937 rng(33);
  int checked = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = random_system(rng, 3, 4, true);
    const auto verts = vertices(s);
    if (verts.empty()) continue;
    ++checked;
    std::vector<std::vector<Rational>> shadow;
    for (const auto& v : verts) shadow.push_back({v[0], v[1]});
    const auto proj = fm_eliminate(s, "x2");
    for (const auto& v : shadow) EXPECT_TRUE(proj.satisfied_by(v));
    for (const auto& q : vertices(proj)) EXPECT_TRUE(in_convex_hull(shadow, q));
  }
  EXPECT_GT(checked, 5);
}

TEST(RemoveRedundant, Examples) {
  LinearInequalitySystem a({"x"});
  a.add_row({1}, 0);
  a.add_row({2}, 0);
  const auto ra = remove_redundant(a);
  ASSERT_EQ(ra.size(), 1u);
  EXPECT_EQ(ra.rows()[0], (InequalityRow{{1}, 0}));

  LinearInequalitySystem b({"x"});
  b.add_row({1}, 0);
  b.add_row({-1}, 1);
  b.add_row({1}, 1);
  const auto rb = remove_redundant(b);
  ASSERT_EQ(rb.size(), 2u);
  EXPECT_EQ(rb.rows()[0], (InequalityRow{{1}, 0}));
  EXPECT_EQ(rb.rows()[1], (InequalityRow{{-1}, 1}));
}

TEST(RemoveRedundant, EarlierRowWinsAmongEquivalentSets) {
  // x + y >= 0 is implied by x >= 0, y >= 0 but not conversely.
  LinearInequalitySystem s({"x", "y"});
  s.add_row({1, 1}, 0);
  s.add_row({1, 0}, 0);
  s.add_row({0, 1}, 0);
  const auto out = remove_redundant(s);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.rows()[0], (InequalityRow{{1, 0}, 0}));
}

TEST(RemoveRedundant, InfeasibleAndTrivial) {
  LinearInequalitySystem s({"x"});
  s.add_row({1}, -2);
  s.add_row({-1}, 1);
  EXPECT_FALSE(is_feasible(s));
  const auto out = remove_redundant(s);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.rows()[0], (InequalityRow{{0}, -1}));

  LinearInequalitySystem t({"x"});
  t.add_row({0}, 3);
  EXPECT_TRUE(remove_redundant(t).empty());
}

TEST(RemoveRedundant, IdempotentAndMatchesSerial) {
  std::mt19937 rng(44);
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = random_system(rng, 3, 10, trial % 2 == 0);
    const auto once = remove_redundant(s);
    const auto serial = remove_redundant_serial(s);
    ASSERT_EQ(once.rows(), serial.rows());
    EXPECT_EQ(remove_redundant(once).rows(), once.rows());
    for (const auto& row : s.rows()) {
      if (is_feasible(s)) EXPECT_TRUE(is_implied(once, row));
    }
  }
}

TEST(HexagonSystem, Shape) {
  const auto s = hexagon_zero_marginal_system();
  EXPECT_EQ(s.size(), 64u);
  EXPECT_EQ(s.num_variables(), 16u);
  EXPECT_EQ(s.variables()[0], "EAB");
  EXPECT_EQ(s.variables()[15], "F6");
  // All-plus outcome: 1 + 2(EAB + EBC + EAC) + squares + 2 F3..F5 + F6.
  const auto& row = s.rows()[0];
  EXPECT_EQ(row.constant, 1);
  EXPECT_EQ(row.coefficients[0], 2);
  EXPECT_EQ(row.coefficients[3], 1);
  EXPECT_EQ(row.coefficients[6], 2);
  EXPECT_EQ(row.coefficients[15], 1);
}

TEST(Sum4Identity, Holds) { EXPECT_TRUE(verify_sum4_identity()); }

TEST(Sum4Identity, PerturbedListFails) {
  auto outcomes = sum4_outcomes();
  outcomes[3] = make_hexagon_outcome(1, 1, 1, 1, 1, 1);
  EXPECT_FALSE(verify_sum4_identity(outcomes));
}

TEST(Sum4Identity, SpotCheckAtOrigin) {
  const auto outcomes = sum4_outcomes();
  EXPECT_EQ(sum_of_hexagon_rows(outcomes).constant, 4);
}

TEST(Symmetry, GroupHas48DistinctElements) {
  const std::vector<std::string> vars = {"EAB", "EBC", "EAC", "EAB_sq", "EBC_sq", "EAC_sq"};
  const auto group = triangle_symmetry_group(vars);
  ASSERT_EQ(group.size(), 48u);
  std::set<std::pair<std::vector<std::size_t>, std::vector<int>>> distinct;
  for (const auto& g : group) distinct.insert({g.target, g.sign});
  // Flips act on pairwise correlators through products of two signs, so
  // (f_A, f_B, f_C) and its negation coincide here.
  EXPECT_EQ(distinct.size(), 24u);
  EXPECT_THROW(triangle_symmetry_group({"EAB", "F3"}), UnknownVariable);
}

TEST(Symmetry, FlipNegatesCorrelatorsContainingParty) {
  const std::vector<std::string> vars = {"EA", "EB", "EC", "EAB", "EBC", "EAC", "EABC", "EAB_sq", "EBC_sq", "EAC_sq"};
  const std::vector<int> flip_a = {-1, 1, 1, -1, 1, -1, -1, 1, 1, 1};
  bool found = false;
  for (const auto& g : triangle_symmetry_group(vars)) {
    bool identity = true;
    for (std::size_t i = 0; i < vars.size(); ++i) identity = identity && g.target[i] == i;
    if (identity && g.sign == flip_a) found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_THROW(triangle_symmetry_group({"EA", "EB", "EAB"}), UnknownVariable);
}

TEST(Derivation, TwentyFourRowsInThreeFamilies) {
  std::vector<EliminationStep> trace;
  const auto s = derive_random_marginal_inequalities(&trace);
  ASSERT_EQ(trace.size(), 10u);
  EXPECT_EQ(trace.back().kept, 24u);
  ASSERT_EQ(s.size(), 24u);
  ASSERT_EQ(s.variables(), (std::vector<std::string>{"EAB", "EBC", "EAC", "EAB_sq", "EBC_sq", "EAC_sq"}));

  const auto a7 = s.make_row({{"EAB", 2}, {"EAB_sq", 1}, {"EBC_sq", -1}, {"EAC_sq", -1}}, 1);
  const auto a8 = s.make_row({{"EAB", 2}, {"EAB_sq", 1}, {"EBC_sq", 1}, {"EAC_sq", 1}}, 1);
  const auto a9 = s.make_row({{"EAB", 1}, {"EBC", 1}, {"EAC_sq", 1}}, 1);
  EXPECT_TRUE(s.find_row(a7));

  const auto families = reduce_by_symmetry(s);
  ASSERT_EQ(families.size(), 3u);
  std::vector<InequalityRow> reps;
  std::size_t total = 0;
  for (const auto& f : families) {
    reps.push_back(f.representative);
    EXPECT_EQ(f.members.size(), f.orbit_size);
    total += f.members.size();
  }
  EXPECT_EQ(total, 24u);
  EXPECT_EQ(reps[0], a7);
  EXPECT_EQ(reps[1], a8);
  EXPECT_EQ(reps[2], a9);
  EXPECT_EQ(families[0].orbit_size, 6u);
  EXPECT_EQ(families[1].orbit_size, 6u);
  EXPECT_EQ(families[2].orbit_size, 12u);

  // The third family follows from the first once squares are nonnegative.
  LinearInequalitySystem first(s.variables());
  for (auto i : families[0].members) first.add_row(s.rows()[i]);
  for (auto i : families[2].members) {
    const auto cert = subsumption_modulo_squares(first, s.rows()[i]);
    ASSERT_TRUE(cert);
    for (const auto& m : cert->multipliers) EXPECT_GE(m, 0);
  }
  // The second family is the first plus 2 E_BC^2 + 2 E_AC^2.
  const auto second = subsumption_modulo_squares(first, a8);
  ASSERT_TRUE(second);
  EXPECT_EQ(second->remainder, s.make_row({{"EBC_sq", 2}, {"EAC_sq", 2}}, 0));
}

TEST(Derivation, ExplicitHalfHalfCombination) {
  const LinearInequalitySystem vars({"EAB", "EBC", "EAC", "EAB_sq", "EBC_sq", "EAC_sq"});
  const auto ab = vars.make_row({{"EAB", 2}, {"EAB_sq", 1}, {"EBC_sq", -1}, {"EAC_sq", -1}}, 1);
  const auto bc = vars.make_row({{"EBC", 2}, {"EBC_sq", 1}, {"EAB_sq", -1}, {"EAC_sq", -1}}, 1);
  const auto a9 = vars.make_row({{"EAB", 1}, {"EBC", 1}, {"EAC_sq", 1}}, 1);
  InequalityRow remainder = a9;
  for (std::size_t i = 0; i < 6; ++i) {
    remainder.coefficients[i] -= (ab.coefficients[i] + bc.coefficients[i]) / 2;
  }
  remainder.constant -= (ab.constant + bc.constant) / 2;
  EXPECT_EQ(remainder, vars.make_row({{"EAC_sq", 2}}, 0));
}
