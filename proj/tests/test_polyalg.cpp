#include "algconc/polyalg.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace algconc;

namespace {

using Factors = std::vector<std::pair<IntPoly, int>>;

IntMat random_seifert_like(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-2, 2);
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(Alexander, HandComputedCases) {
  EXPECT_EQ(alexander_poly(IntMat{{-1, 1}, {0, -1}}), (IntPoly{1, -1, 1}));
  EXPECT_EQ(alexander_poly(IntMat{{1, 1}, {0, -1}}), (IntPoly{-1, 3, -1}));
  EXPECT_EQ(alexander_poly(IntMat{{1, 1}, {0, -5}}), (IntPoly{-5, 11, -5}));
  EXPECT_EQ(alexander_poly(IntMat(0, 0)), IntPoly::constant(1));
}

TEST(Alexander, MatchesLeibnizOracleAndTabulatedValues) {
  for (const auto& k : fixtures::knots()) {
    IntPoly a = alexander_poly(k.v);
    EXPECT_EQ(a, oracle::alexander(k.v)) << k.name;
    EXPECT_EQ(normalize_unit(a), normalize_unit(k.alexander)) << k.name;
    EXPECT_EQ(abs(a.eval(Integer(1))), 1) << k.name;
  }
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    IntMat v = random_seifert_like(rng, 1 + static_cast<std::size_t>(i % 5));
    EXPECT_EQ(alexander_poly(v), oracle::alexander(v));
  }
}

TEST(CharPolyT, MonicAndScaled) {
  EXPECT_EQ(char_poly_T(IntMat{{-1, 1}, {0, -1}}), (RatPoly{1, -1, 1}));
  EXPECT_EQ(char_poly_T(IntMat{{1, 1}, {0, -1}}), (RatPoly{1, -3, 1}));
  EXPECT_THROW(char_poly_T(IntMat{{0, 1}, {0, 0}}), std::domain_error);
  for (const auto& k : fixtures::knots()) {
    if (det(k.v) == 0) continue;
    RatPoly c = char_poly_T(k.v);
    EXPECT_EQ(c.lead(), 1) << k.name;
    EXPECT_EQ(c.reciprocal(), c) << k.name;
    // det(tI - T) computed directly from T = V^{-1} V^t at a few points.
    RatMat t = inverse(to_rational(k.v)) * to_rational(k.v).transpose();
    for (int x = -2; x <= 2; ++x) {
      RatMat m = RatMat::identity(t.rows()) * Rational(x) - t;
      EXPECT_EQ(c.eval(Rational(x)), det(m)) << k.name;
    }
  }
}

TEST(Symmetry, Cases) {
  EXPECT_TRUE(is_symmetric(IntPoly{1, -3, 1}));
  EXPECT_FALSE(is_symmetric(IntPoly{-2, 1}));
  EXPECT_TRUE(is_symmetric(IntPoly{2, -3, 2}));
  EXPECT_TRUE(is_symmetric(IntPoly{-1, 0, 1}));
  EXPECT_FALSE(is_palindromic(IntPoly{-1, 0, 1}));
  EXPECT_THROW(is_symmetric(IntPoly()), std::invalid_argument);
}

TEST(FactorOverZ, TabulatedFactorizations) {
  auto check = [](const IntPoly& f, const Factors& expected) {
    Factorization fz = factor_over_Z(f);
    EXPECT_EQ(fz.factors, expected) << f;
    EXPECT_EQ(fz.product(), to_rational(f)) << f;
  };
  check(fixtures::knot("9_24").alexander, {{IntPoly{1, -3, 1}, 1}, {IntPoly{1, -1, 1}, 2}});
  check(fixtures::knot("12n_224").alexander,
        {{IntPoly{-2, 1}, 1}, {IntPoly{-1, 2}, 1}, {IntPoly{1, -1, 1}, 2}});
  check(fixtures::knot("12a_990").alexander, {{IntPoly{1, -3, 1}, 2}, {IntPoly{1, -1, 1}, 2}});
  check(fixtures::knot("12a_169").alexander, {{IntPoly{2, -3, 2}, 2}});
  check(fixtures::knot("12n_681").alexander, {{IntPoly{1, -1, 1, -1, 1}, 2}});
  check(fixtures::knot("12n_525").alexander, {{IntPoly{1, -8, 28, -43, 28, -8, 1}, 1}});
  IntPoly p934 = IntPoly{-2, 1} * IntPoly{-1, 2} * IntPoly{1, -3, 1};
  check(p934, {{IntPoly{-2, 1}, 1}, {IntPoly{-1, 2}, 1}, {IntPoly{1, -3, 1}, 1}});
}

TEST(FactorOverZ, ContentSignAndTPower) {
  IntPoly f = IntPoly{0, 0, -6, 6} * IntPoly{1, 0, 1};  // -6 t^2 (1 - t)(1 + t^2)
  Factorization fz = factor_over_Z(f);
  EXPECT_EQ(fz.unit, 6);
  EXPECT_EQ(fz.factors, (Factors{{IntPoly{-1, 1}, 1}, {IntPoly{0, 1}, 2}, {IntPoly{1, 0, 1}, 1}}));
  EXPECT_EQ(fz.product(), to_rational(f));
  Factorization c = factor_over_Z(IntPoly{-4});
  EXPECT_TRUE(c.factors.empty());
  EXPECT_EQ(c.unit, -4);
}

TEST(FactorOverZ, HardRecombination) {
  // x^4 + 1 is irreducible over Z but splits modulo every prime.
  Factorization a = factor_over_Z(IntPoly{1, 0, 0, 0, 1});
  EXPECT_EQ(a.factors, (Factors{{IntPoly{1, 0, 0, 0, 1}, 1}}));
  // Swinnerton-Dyer type: (x^2-2)(x^2-3) product of quartics splitting mod p.
  IntPoly s = IntPoly{1, 0, -10, 0, 1};  // minimal polynomial of sqrt2 + sqrt3
  Factorization b = factor_over_Z(s * s * IntPoly{-3, 2});
  EXPECT_EQ(b.factors, (Factors{{IntPoly{-3, 2}, 1}, {s, 2}}));
}

TEST(FactorOverZ, RandomProductsReassembleIntoIrreducibles) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    IntPoly f = IntPoly::constant(1);
    int pieces = 1 + trial % 4;
    for (int k = 0; k < pieces; ++k) {
      std::vector<Integer> c(static_cast<std::size_t>(2 + (trial + k) % 3));
      for (auto& x : c) x = d(rng);
      c.back() = 1 + std::abs(d(rng));
      if (c.front() == 0) c.front() = 1;
      f = f * IntPoly(c);
    }
    Factorization fz = factor_over_Z(f);
    EXPECT_EQ(fz.product(), to_rational(f)) << f;
    for (const auto& [g, e] : fz.factors) {
      EXPECT_GT(g.lead(), 0);
      EXPECT_EQ(content(g), 1);
      // Irreducible factors have no rational roots and no further split;
      // the square-free test guards pairwise distinctness.
      for (const auto& [h, e2] : fz.factors) {
        if (h == g) continue;
        EXPECT_EQ(gcd(g, h).degree(), 0);
      }
    }
  }
}

TEST(FactorModP, TabulatedFactorizations) {
  auto modp = [](const IntPoly& f, std::int64_t p) {
    ModFactorization m = factor_mod_p(f, p);
    std::vector<std::pair<std::vector<std::int64_t>, int>> out;
    for (const auto& [g, e] : m.factors) out.emplace_back(g.coeffs(), e);
    return std::make_pair(m.unit, out);
  };
  using V = std::vector<std::int64_t>;
  auto a = modp(fixtures::knot("11a_300").alexander, 3);
  EXPECT_EQ(a.first, 1);
  EXPECT_EQ(a.second, (std::vector<std::pair<V, int>>{{V{1, 1}, 2}, {V{1, 0, 1}, 1}, {V{1, 1, 1, 1, 1}, 1}}));
  auto b = modp(fixtures::knot("12n_525").alexander, 3);
  EXPECT_EQ(b.second, (std::vector<std::pair<V, int>>{{V{1, 1}, 4}, {V{1, 0, 1}, 1}}));
  auto c = modp(fixtures::knot("12a_1170").alexander, 3);
  EXPECT_EQ(c.first, 2);
  EXPECT_EQ(c.second,
            (std::vector<std::pair<V, int>>{{V{1, 1}, 2}, {V{2, 1, 1, 1}, 1}, {V{2, 2, 2, 1}, 1}}));
}

TEST(FactorModP, FactorsAreIrreducibleAndMultiplyBack) {
  std::mt19937_64 rng(29);
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 10007}) {
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(2 + trial % 7));
      for (auto& x : c) x = d(rng);
      if (c.back() == 0) c.back() = 1;
      ModPoly f(p, c);
      if (trial % 3 == 0) f = f * f * ModPoly(p, {1, 1});
      ModFactorization m = factor_mod_p(f);
      EXPECT_EQ(m.product(), f) << f.str() << " mod " << p;
      if (p > 13) continue;
      for (const auto& [g, e] : m.factors) {
        std::vector<long long> gl(g.coeffs().begin(), g.coeffs().end());
        if (g.degree() <= 6) {
          EXPECT_TRUE(oracle::irreducible_mod_p(gl, p)) << g.str() << " mod " << p;
        }
      }
    }
  }
}

TEST(Discriminant, Cases) {
  EXPECT_EQ(discriminant(IntPoly{1, -1, 1}), -3);
  EXPECT_EQ(discriminant(IntPoly{1, -2, 1}), 0);
  for (int b = -5; b <= 5; ++b)
    for (int c = -5; c <= 5; ++c) EXPECT_EQ(discriminant(IntPoly{c, b, 1}), b * b - 4 * c);
  // Cubic t^3 + a t + b: -4a^3 - 27b^2.
  EXPECT_EQ(discriminant(IntPoly{5, -2, 0, 1}), -4 * -8 - 27 * 25);
  // Non-monic quadratic: b^2 - 4ac.
  EXPECT_EQ(discriminant(IntPoly{2, -3, 2}), 9 - 16);
}

TEST(Resultant, CasesAndBezoutDivisibility) {
  EXPECT_EQ(resultant(IntPoly{-2, 1}, IntPoly{-3, 1}), -1);
  EXPECT_EQ(resultant(IntPoly{1, 0, 1}, IntPoly{-1, 1}), 2);
  // Res(f, g) divides Disc(f g) for distinct monic irreducibles.
  std::vector<IntPoly> irr = {IntPoly{1, -1, 1}, IntPoly{1, -3, 1}, IntPoly{1, 0, 1}, IntPoly{1, 1, 1, 1, 1},
                              IntPoly{-2, 0, 1}, IntPoly{1, -8, 28, -43, 28, -8, 1}};
  for (std::size_t i = 0; i < irr.size(); ++i)
    for (std::size_t j = i + 1; j < irr.size(); ++j) {
      Integer r = resultant(irr[i], irr[j]);
      ASSERT_NE(r, 0);
      EXPECT_EQ(discriminant(irr[i] * irr[j]) % r, 0);
      // Bezout: a f + b g = Res with a, b integral; check that Res lies in the ideal over Q
      // and that the Q-cofactors times Res are integral.
      auto [g, s, t] = extended_gcd(to_rational(irr[i]), to_rational(irr[j]));
      EXPECT_EQ(g, RatPoly::constant(1));
      RatPoly sr = s * Rational(r), tr = t * Rational(r);
      for (const auto& x : sr.coeffs()) EXPECT_EQ(denominator(x), 1);
      for (const auto& x : tr.coeffs()) EXPECT_EQ(denominator(x), 1);
    }
}

TEST(Radical, Cases) {
  EXPECT_EQ(radical(IntPoly{1, -1, 1} * IntPoly{1, -1, 1}), (IntPoly{1, -1, 1}));
  EXPECT_EQ(radical(fixtures::knot("9_24").alexander), (IntPoly{1, -3, 1} * IntPoly{1, -1, 1}));
  IntPoly sf = fixtures::knot("12n_525").alexander;
  EXPECT_EQ(radical(sf), sf);
}

TEST(TracePoly, CasesAndIdentity) {
  EXPECT_EQ(trace_poly(IntPoly{1, -1, 1}).P, (IntPoly{-1, 1}));
  EXPECT_EQ(trace_poly(IntPoly{1, 0, 1}).P, (IntPoly{0, 1}));
  EXPECT_EQ(trace_poly(IntPoly{1, -3, 1}).P, (IntPoly{-3, 1}));
  EXPECT_THROW(trace_poly(IntPoly{1, 1}), std::invalid_argument);
  EXPECT_THROW(trace_poly(IntPoly{1, 2, 3}), std::invalid_argument);
  // t^g P(t + 1/t) = f, checked by substituting x = (t^2 + 1)/t and clearing t^g.
  for (const auto& k : fixtures::knots()) {
    IntPoly f = normalize_unit(k.alexander);
    TracePoly tp = trace_poly(f);
    IntPoly acc;
    for (int j = 0; j <= tp.P.degree(); ++j) {
      IntPoly term = pow(IntPoly{1, 0, 1}, static_cast<unsigned>(j)) *
                     IntPoly::monomial(tp.P[static_cast<std::size_t>(j)], static_cast<std::size_t>(tp.g - j));
      acc += term;
    }
    EXPECT_EQ(acc, f) << k.name;
  }
}

TEST(Sturm, Isolation) {
  auto r1 = sturm_isolate(IntPoly{-1, 1}, -2, 2);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_LT(r1[0].lo, 1);
  EXPECT_GT(r1[0].hi, 1);
  EXPECT_TRUE(sturm_isolate(IntPoly{-3, 1}, -2, 2).empty());
  auto r2 = sturm_isolate(IntPoly{-2, 0, 1}, -2, 2);
  ASSERT_EQ(r2.size(), 2u);
  for (const auto& iv : r2) EXPECT_EQ(sign_at(IntPoly{-2, 0, 1}, iv.lo) * sign_at(IntPoly{-2, 0, 1}, iv.hi), -1);
  EXPECT_LE(r2[0].hi, 0);
  EXPECT_GE(r2[1].lo, 0);
  // Rational root hit exactly by the first bisection point and a clustered pair.
  auto r3 = sturm_isolate(IntPoly{0, -1, 0, 1}, -2, 2);  // roots -1, 0, 1
  ASSERT_EQ(r3.size(), 3u);
  IntPoly close = IntPoly{-1000, 1} * IntPoly{-1001, 1};
  auto r4 = sturm_isolate(close, 0, 2000);
  ASSERT_EQ(r4.size(), 2u);
  EXPECT_LE(r4[0].hi, r4[1].lo);
}

TEST(Sturm, CountsMatchTrigonometricRoots) {
  // Cyclotomic-style trace polynomials: Phi_5 has all four roots on the unit circle.
  TracePoly tp = trace_poly(IntPoly{1, 1, 1, 1, 1});
  EXPECT_EQ(sturm_isolate(tp.P, -2, 2).size(), 2u);
  // 12n_681 = Phi_10^2: two distinct unit-circle root pairs.
  TracePoly q = trace_poly(fixtures::knot("12n_681").alexander);
  EXPECT_EQ(sturm_isolate(q.P, -2, 2).size(), 2u);
}
