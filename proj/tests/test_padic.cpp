#include "algconc/padic.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace algconc;

namespace {

IntPoly product_mod(const std::vector<PadicPoly>& fs, const Integer& m) {
  IntPoly prod{1};
  for (const auto& f : fs) prod = reduce_mod(prod * f.coeffs, m);
  return prod;
}

IntPoly random_poly(std::mt19937_64& rng, int deg, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<Integer> c;
  for (int i = 0; i < deg; ++i) c.push_back(d(rng));
  c.push_back(1);
  return IntPoly(c);
}

}  // namespace

TEST(SquareClass, Goldens) {
  auto c = square_class(Rational(3), 3);
  EXPECT_EQ(c.D, 1);
  EXPECT_EQ(c.unit_class, 1);
  EXPECT_EQ(c.label(), "p");
  c = square_class(Rational(2), 3);
  EXPECT_EQ(c.D, 0);
  EXPECT_EQ(c.unit_class, -1);
  EXPECT_EQ(c.label(), "u");
  EXPECT_EQ(square_class(Rational(5), 2).label(), "5");
  EXPECT_EQ(square_class(Rational(-3), 2).label(), "5");  // -3 = 5 mod 8
  EXPECT_EQ(square_class(Rational(6), 2).label(), "-10");
  EXPECT_EQ(square_class(Rational(1, 12), 3).label(), "p");  // 12 = 3 * 2^2
  EXPECT_EQ(square_class(Rational(-6, 25), 3).label(), "p");  // -2 is a residue mod 3
  EXPECT_EQ(square_class(Rational(6), 3).label(), "up");
  EXPECT_THROW(square_class(Rational(0), 5), std::domain_error);
}

TEST(SquareClass, MultiplicativeAndSquareInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-300, 300);
  for (int p : {2, 3, 5, 7, 13}) {
    for (int trial = 0; trial < 200; ++trial) {
      Rational x(d(rng), 1 + std::abs(d(rng)));
      Rational y(d(rng), 1 + std::abs(d(rng)));
      Rational s(d(rng), 1 + std::abs(d(rng)));
      if (x == 0 || y == 0 || s == 0) continue;
      EXPECT_EQ(square_class(x * y, p), multiply(square_class(x, p), square_class(y, p)));
      EXPECT_EQ(square_class(x * s * s, p), square_class(x, p));
      EXPECT_EQ(square_class(Rational(square_class(x, p).representative()), p), square_class(x, p));
    }
  }
}

TEST(Hensel, TwelveN525AtThreeToTheEight) {
  const IntPoly delta = fixtures::knot("12n_525").alexander;
  auto fs = hensel_factor(delta, 3, 8);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].coeffs, (IntPoly{1, 2565, 1}));
  EXPECT_EQ(fs[1].coeffs, (IntPoly{1, 3988, 5967, 3988, 1}));
  EXPECT_EQ(product_mod(fs, 6561), reduce_mod(delta, 6561));
  for (const auto& f : fs) EXPECT_EQ(f.k, 8);
}

TEST(Hensel, TrivialCases) {
  auto fs = hensel_factor(IntPoly{-1, 0, 1}, 3, 1);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].coeffs, (IntPoly{1, 1}));  // t + 1
  EXPECT_EQ(fs[1].coeffs, (IntPoly{2, 1}));  // t - 1
  for (int k : {1, 4, 12}) {
    auto g = hensel_factor(IntPoly{1, 0, 1}, 3, k);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_EQ(g[0].certification, Certification::Certified);
  }
  EXPECT_THROW(hensel_factor(IntPoly{1, 0, 3}, 3, 2), std::domain_error);
}

TEST(Hensel, RandomProductsRemultiply) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly f = random_poly(rng, 1 + trial % 7, 20);
    for (int p : {3, 5, 7, 11}) {
      int k = 1 + trial % 9;
      Integer m = pow(Integer(p), static_cast<unsigned>(k));
      auto fs = hensel_factor(f, p, k);
      EXPECT_EQ(product_mod(fs, m), reduce_mod(f, m)) << f.str() << " p=" << p;
      int total = 0;
      for (const auto& g : fs) total += g.coeffs.degree();
      EXPECT_EQ(total, f.degree());
    }
  }
}

TEST(Hensel, DegreesPreservedWhenDiscriminantIsAUnit) {
  std::mt19937_64 rng(29);
  int done = 0;
  while (done < 60) {
    IntPoly f = random_poly(rng, 2 + done % 5, 9);
    for (int p : {3, 5, 7}) {
      if (discriminant(f) % p == 0) continue;
      auto mf = factor_mod_p(f, p);
      auto fs = hensel_factor(f, p, 6);
      ASSERT_EQ(fs.size(), mf.factors.size());
      std::multiset<int> a, b;
      for (const auto& [g, e] : mf.factors) {
        EXPECT_EQ(e, 1);
        a.insert(g.degree());
      }
      for (const auto& g : fs) {
        b.insert(g.coeffs.degree());
        EXPECT_TRUE(g.claimed_irreducible());
      }
      EXPECT_EQ(a, b);
      // Newton polygon degrees agree with the unramified picture.
      auto nd = local_factor_degrees(f, p, 64);
      ASSERT_TRUE(nd.has_value());
      EXPECT_EQ(std::multiset<int>(nd->begin(), nd->end()), a);
    }
    ++done;
  }
}

TEST(LiftRoot, CubicToThreeToTheEight) {
  const IntPoly h{27, 25, 8, 1};
  Integer a = lift_simple_root(h, 3, 0, 8);
  EXPECT_EQ(a, 2565);
  EXPECT_EQ(a, 2 * 27 + 81 + 243 + 2187);
  EXPECT_EQ(h.eval(a) % 6561, 0);
  EXPECT_EQ(lift_simple_root(IntPoly{-1, 1}, 7, 1, 5), 1);
  EXPECT_THROW(lift_simple_root(h, 3, 1, 8), std::domain_error);
  EXPECT_THROW(lift_simple_root(IntPoly{0, 0, 1}, 3, 0, 4), std::domain_error);
}

TEST(LiftRoot, RandomRootsReduceAndVanish) {
  std::mt19937_64 rng(41);
  int done = 0;
  while (done < 100) {
    IntPoly h = random_poly(rng, 2 + done % 4, 30);
    const int p = std::vector<int>{3, 5, 7, 11, 13}[done % 5];
    for (int a0 = 0; a0 < p; ++a0) {
      if (h.eval(a0) % p != 0 || h.derivative().eval(a0) % p == 0) continue;
      const int k = 2 + done % 10;
      Integer a = lift_simple_root(h, p, a0, k);
      EXPECT_EQ(floor_mod(a, p), a0);
      EXPECT_EQ(floor_mod(h.eval(a), pow(Integer(p), static_cast<unsigned>(k))), 0);
      ++done;
      break;
    }
  }
}

TEST(Screen, TabulatedVerdicts) {
  // 11a300 mod 3: (1+t)^2 (1+t^2) (1+t+t^2+t^3+t^4).
  auto r = screen_symmetric_factors(fixtures::knot("11a_300").alexander, 3);
  ASSERT_EQ(r.factors.size(), 3u);
  EXPECT_EQ(r.verdict, ScreenVerdict::Impossible);
  auto r2 = screen_symmetric_factors(fixtures::knot("12a_1170").alexander, 3);
  EXPECT_EQ(r2.verdict, ScreenVerdict::Impossible);
  auto r3 = screen_symmetric_factors(fixtures::knot("12n_525").alexander, 3);
  EXPECT_EQ(r3.verdict, ScreenVerdict::NeedsLift);
  EXPECT_FALSE(r3.feasible_partitions.empty());
  EXPECT_THROW(screen_symmetric_factors(IntPoly{1, 1}, 2), std::invalid_argument);
}

TEST(Newton, TwelveN525TracePolynomial) {
  // Trace polynomial of 12n525: x^3 - 8x^2 + 25x - 27. Roots near -2 at p = 3
  // form one Q_3-irreducible quadratic (residual y^2 + 2y + 2 is irreducible).
  const IntPoly P{-27, 25, -8, 1};
  auto near = local_factors_near(P, 3, -2, 64);
  ASSERT_TRUE(near.resolved);
  ASSERT_EQ(near.factors.size(), 1u);
  EXPECT_EQ(near.factors[0].degree, 2);
  EXPECT_EQ(near.factors[0].valuation, Rational(1));
  auto degs = local_factor_degrees(P, 3, 64);
  ASSERT_TRUE(degs.has_value());
  EXPECT_EQ(*degs, (std::vector<int>{1, 2}));
}

TEST(Newton, RamifiedAndRecentredClusters) {
  // x^2 - 3: Eisenstein, one ramified quadratic of valuation 1/2.
  auto a = local_factors_near(IntPoly{-3, 0, 1}, 3, 0, 64);
  ASSERT_TRUE(a.resolved);
  ASSERT_EQ(a.factors.size(), 1u);
  EXPECT_EQ(a.factors[0].degree, 2);
  EXPECT_EQ(a.factors[0].valuation, Rational(1, 2));
  // (x - 1)(x - 10)(x - 28) at p = 3: all near 1; recentring separates them.
  IntPoly f = IntPoly{-1, 1} * IntPoly{-10, 1} * IntPoly{-28, 1};
  auto b = local_factor_degrees(f, 3, 64);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(*b, (std::vector<int>{1, 1, 1}));
  // x^2 - 18: slope 1, residual y^2 - 2 irreducible mod 3.
  auto c = local_factors_near(IntPoly{-18, 0, 1}, 3, 0, 64);
  ASSERT_TRUE(c.resolved);
  ASSERT_EQ(c.factors.size(), 1u);
  EXPECT_EQ(c.factors[0].degree, 2);
  // The precision ceiling stops a deep recentring.
  IntPoly deep = IntPoly{-243, 1} * IntPoly{-(243 + 19683), 1};
  EXPECT_TRUE(local_factors_near(deep, 3, 0, 64).resolved);
  auto capped = local_factors_near(deep, 3, 0, 4);
  EXPECT_FALSE(capped.resolved);
  EXPECT_EQ(capped.reason, "precision ceiling");
}

TEST(Newton, DegreesSumAndMatchBruteForceSplitting) {
  // Products of random Z-irreducible-mod-p pieces: the sum of local degrees is the degree.
  std::mt19937_64 rng(71);
  int done = 0;
  while (done < 200) {
    IntPoly f = random_poly(rng, 2 + done % 5, 12);
    if (discriminant(f) == 0) continue;
    for (int p : {3, 5}) {
      auto d = local_factor_degrees(f, p, 64);
      if (!d) continue;
      int total = 0;
      for (int x : *d) total += x;
      EXPECT_EQ(total, f.degree()) << f.str();
    }
    ++done;
  }
}

TEST(Precision, StartingPolicy) {
  // Disc(Delta of 12n525) = 3^6 * 13 * 31^2 (computed independently with sympy).
  EXPECT_EQ(starting_precision(fixtures::knot("12n_525").alexander, 3), 14);
  EXPECT_EQ(starting_precision(fixtures::knot("12n_525").alexander, 5), 8);
  // Discriminant of x^2 - 3^10 has v_3 = 10: k = 22.
  EXPECT_EQ(starting_precision(IntPoly{-59049, 0, 1}, 3), 22);
}
