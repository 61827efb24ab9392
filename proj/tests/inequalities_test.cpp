#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "netbound/inequalities.hpp"
#include "netbound/lpfeas.hpp"

using namespace netbound;

namespace {

template <class T>
BasicTriangleBehavior<T> pairwise(const T& ab, const T& bc, const T& ac) {
  BasicTriangleBehavior<T> e;
  e.eab = ab;
  e.ebc = bc;
  e.eac = ac;
  return e;
}

const Sqrt2Number kRoot2 = Sqrt2Number::root();

}  // namespace

TEST(SingleFamily, WitnessIsViolated) {
  const auto e = pairwise(Rational(1, 2), Rational(-3, 5), Rational(0));
  const auto reports = check_single_family(e);
  ASSERT_EQ(reports.size(), 6u);
  EXPECT_EQ(reports[2].name, "single[BC+]");
  EXPECT_EQ(reports[2].margin, Rational(16, 100) - Rational(1, 4));
  EXPECT_FALSE(reports[2].satisfied);
  EXPECT_FALSE(single_family_satisfied(e));
}

TEST(SingleFamily, ZeroBehavior) {
  for (const auto& r : check_single_family(TriangleBehavior{})) {
    EXPECT_TRUE(r.satisfied);
    EXPECT_EQ(r.margin, 1);
  }
}

TEST(SingleFamily, BoundaryAtRootTwoMinusOne) {
  const Sqrt2Number e2 = kRoot2 - Sqrt2Number(1);
  const auto reports = check_single_family(pairwise(e2, e2, e2));
  // (1 - E_2)^2 = 2 E_2^2 at E_2 = sqrt2 - 1
  EXPECT_EQ(reports[1].margin, Sqrt2Number(0));
  EXPECT_TRUE(reports[1].satisfied);
  EXPECT_EQ(reports[0].margin, Sqrt2Number(-4) + Sqrt2Number(4) * kRoot2);
}

TEST(Nice, Examples) {
  const auto r = check_nice(pairwise(Rational(1, 2), Rational(-3, 5), Rational(0)));
  EXPECT_TRUE(r.satisfied);
  EXPECT_EQ(r.lhs, Rational(341, 100));

  const Sqrt2Number e2 = kRoot2 - Sqrt2Number(1);
  const auto boundary = check_nice(pairwise(e2, e2, e2));
  EXPECT_EQ(boundary.margin, Sqrt2Number(0));
  EXPECT_TRUE(boundary.satisfied);

  const auto low = check_nice(pairwise(Rational(-1), Rational(-1), Rational(-1)));
  EXPECT_EQ(low.margin, 6);
}

TEST(Witness, IrrationalPointPassesFamilyButNotPositivity) {
  const Sqrt2Number e = Sqrt2Number(1) - kRoot2;
  const auto b = pairwise(e, e, e);
  EXPECT_TRUE(single_family_satisfied(b));
  const auto pos = check_pairwise_positivity(b);
  EXPECT_FALSE(pos.satisfied);
  EXPECT_EQ(pos.rhs, Sqrt2Number(3) - Sqrt2Number(3) * kRoot2);
  EXPECT_FALSE(triangle_positivity(b).empty());
}

TEST(Nice2, Examples) {
  EXPECT_EQ(check_nice2(Sqrt2Number(0), kRoot2 - Sqrt2Number(1)).margin, Sqrt2Number(0));
  const auto one = check_nice2(Rational(1), Rational(1));
  EXPECT_EQ(one.lhs, 16);
  EXPECT_EQ(one.margin, 0);
  EXPECT_FALSE(check_nice2(Rational(0), Rational(42, 100)).satisfied);
  EXPECT_TRUE(check_nice2(Rational(0), Rational(41, 100)).satisfied);
}

TEST(Nice2, EqualityAlongDeterministicFamily) {
  for (int k = 0; k <= 20; ++k) {
    // p from 71/100 (above 1/sqrt 2) to 1
    const Rational p = Rational(71, 100) + make_rational(k, 20) * Rational(29, 100);
    const Rational e1 = 2 * p * p - 1;
    const Rational e2 = 1 - 4 * p * p + 4 * p * p * p;
    EXPECT_EQ(check_nice2(e1, e2).margin, 0) << p;
    EXPECT_EQ(check_nice2(Rational(-e1), e2).margin, 0);
  }
}

TEST(Conjecture, ReducesToNiceAndNice2) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> u(-10, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = pairwise(make_rational(u(rng), 10), make_rational(u(rng), 10), make_rational(u(rng), 10));
    const auto c = check_conjecture(b);
    const auto n = check_nice(b);
    EXPECT_EQ(c.lhs, n.lhs);
    EXPECT_EQ(c.rhs, n.rhs);
    EXPECT_EQ(c.status, IneqStatus::Conjectured);

    const Rational e1 = make_rational(u(rng), 10), e2 = make_rational(u(rng), 10);
    const auto cs = check_conjecture(symmetric_behavior(e1, e2));
    const auto n2 = check_nice2(e1, e2);
    EXPECT_EQ(cs.margin, 3 * n2.margin);
    EXPECT_EQ(cs.satisfied, n2.satisfied);
  }
}

TEST(Conjecture, BinaryPqrClosedFormsSatisfyIt) {
  for (int i = 0; i <= 6; ++i) {
    for (int j = 0; j <= 6; ++j) {
      for (int k = 0; k <= 6; ++k) {
        const Rational p = make_rational(i, 6), q = make_rational(j, 6), r = make_rational(k, 6);
        TriangleBehavior e;
        e.ea = 2 * p * q - 1;
        e.eb = 2 * p * r - 1;
        e.ec = 2 * q * r - 1;
        e.eab = 1 - 2 * p * q - 2 * p * r + 4 * p * q * r;
        e.ebc = 1 - 2 * p * r - 2 * q * r + 4 * p * q * r;
        e.eac = 1 - 2 * p * q - 2 * q * r + 4 * p * q * r;
        EXPECT_TRUE(check_conjecture(e).satisfied) << p << " " << q << " " << r;
      }
    }
  }
}

TEST(SingleFamily, DominatesNice) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> u(-100, 100);
  int violations = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const auto b = pairwise(make_rational(u(rng), 100), make_rational(u(rng), 100), make_rational(u(rng), 100));
    if (!check_nice(b).satisfied) {
      ++violations;
      EXPECT_FALSE(single_family_satisfied(b));
    }
  }
  EXPECT_GT(violations, 100);
}

TEST(SingleFamily, ConsistentWithLp) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> u(-10, 10);
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto b = pairwise(make_rational(u(rng), 10), make_rational(u(rng), 10), make_rational(u(rng), 10));
    auto full = with_slack_maximizing_e_abc(b);
    if (!full) continue;
    const bool lp = nsi_feasible(*full).feasible();
    feasible += lp;
    // The family together with pairwise positivity is the exact projection.
    EXPECT_EQ(lp, single_family_satisfied(b)) << b.eab << " " << b.ebc << " " << b.eac;
  }
  EXPECT_GT(feasible, 5);
}

TEST(Finner, UniformAndPointMass) {
  TriangleDistribution uniform;
  uniform.p.fill(Rational(1, 8));
  for (const auto& r : finner_check(uniform)) {
    EXPECT_TRUE(r.satisfied);
    EXPECT_EQ(r.lhs, Rational(1, 64));
    EXPECT_EQ(r.rhs, Rational(1, 8));
  }
  const auto point = finner_pq_distribution(FinnerPoint<Rational>{1, 0});
  const auto reports = finner_check(point);
  EXPECT_EQ(reports[0].name, "finner[+++]");
  EXPECT_EQ(reports[0].margin, 0);
  EXPECT_TRUE(finner_satisfied(point));
}

TEST(Finner, PqDistribution) {
  const auto uniform = finner_pq_distribution(FinnerPoint<Rational>{Rational(1, 8), Rational(1, 8)});
  for (const auto& v : uniform.p) EXPECT_EQ(v, Rational(1, 8));
  EXPECT_THROW(finner_pq_distribution(FinnerPoint<Rational>{Rational(3, 4), Rational(1, 2)}), std::invalid_argument);
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; i + j <= 8; ++j) {
      const Rational p = make_rational(i, 8), q = make_rational(j, 8);
      const auto e = behavior_from_distribution(finner_pq_distribution(FinnerPoint<Rational>{p, q}));
      EXPECT_EQ(e.ea, p - q);
      EXPECT_EQ(e.eb, p - q);
      EXPECT_EQ(e.eab, (4 * (p + q) - 1) / 3);
      EXPECT_EQ(e.eac, (4 * (p + q) - 1) / 3);
      EXPECT_EQ(e.eabc, p - q);
    }
  }
}

TEST(Finner, ThresholdFlipAtPlusPlusPlus) {
  for (int k = 1; k <= 9; ++k) {
    const double p = k / 10.0;
    const double t = finner_threshold(p);
    const auto below = finner_check(finner_pq_distribution(FinnerPoint<double>{p, t - 1e-3}));
    const auto above = finner_check(finner_pq_distribution(FinnerPoint<double>{p, t + 1e-3}));
    EXPECT_TRUE(below[0].satisfied) << p;
    EXPECT_FALSE(above[0].satisfied) << p;
  }
}

TEST(Finner, MirroredConstraint) {
  // p <= 1 + q - 2 q^(2/3) from (-,-,-); for small p it is slack at the (+,+,+) threshold.
  for (const double p : {0.1, 0.2, 0.3}) {
    const double t = finner_threshold(p);
    EXPECT_TRUE(finner_satisfied(finner_pq_distribution(FinnerPoint<double>{p, t - 1e-3})));
    EXPECT_FALSE(finner_satisfied(finner_pq_distribution(FinnerPoint<double>{p, t + 1e-3})));
  }
  const auto r = finner_check(finner_pq_distribution(FinnerPoint<double>{0.5, finner_threshold(0.5) - 1e-3}));
  EXPECT_FALSE(r[7].satisfied);
  EXPECT_GT(0.5, finner_threshold(finner_threshold(0.5)));
}

TEST(Finner, ProductDistributionsStrictlySatisfy) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> u(1, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational a = make_rational(u(rng), 10), b = make_rational(u(rng), 10), c = make_rational(u(rng), 10);
    TriangleDistribution d;
    for (const auto& o : triangle_outcomes()) {
      d[o] = (o.a > 0 ? a : 1 - a) * (o.b > 0 ? b : 1 - b) * (o.c > 0 ? c : 1 - c);
    }
    for (const auto& r : finner_check(d)) EXPECT_GT(r.margin, 0);
  }
}

TEST(Finner, RejectsUnnormalized) {
  TriangleDistribution d;
  d.p.fill(Rational(1, 7));
  EXPECT_THROW(finner_check(d), NotNormalized);
}

TEST(CheckAll, IncludesNice2OnlyWhenSymmetric) {
  EXPECT_EQ(check_all(symmetric_behavior(Rational(0), Rational(1, 5))).size(), 10u);
  EXPECT_EQ(check_all(pairwise(Rational(0), Rational(1, 5), Rational(0))).size(), 9u);
}
