#include "algconc/order_engine.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

#include <gtest/gtest.h>

using namespace algconc;

namespace {

const IntMat trefoil{{-1, 1}, {0, -1}};
const IntMat figure8{{1, 1}, {0, -1}};
const IntMat order4_example{{1, 1}, {0, -5}};
const IntMat slice_example{{1, 1}, {0, -2}};

const CertificateStep& last(const OrderVerdict& v) { return v.certificate.back(); }

CertificateStep* find_step(OrderVerdict& v, const std::string& rule) {
  for (auto& s : v.certificate)
    if (s.rule == rule) return &s;
  return nullptr;
}

}  // namespace

TEST(Classify, Trefoil) {
  auto r = classify(trefoil);
  EXPECT_EQ(r.order, Order::Infinite);
  EXPECT_EQ(last(r).rule, "SIGNATURE_NONZERO");
  EXPECT_EQ(codec::dec_rat(last(r).witnesses["c"]), 0);  // omega = i
  EXPECT_EQ(last(r).witnesses["value"], -2);
  EXPECT_TRUE(verify_certificate(trefoil, r));
}

TEST(Classify, Order4ByOddValuation) {
  auto r = classify(order4_example);
  EXPECT_EQ(r.order, Order::Order4);
  EXPECT_EQ(last(r).rule, "THM_ODDEXP");
  EXPECT_EQ(last(r).witnesses["p"], 3);
  EXPECT_EQ(last(r).witnesses["delta_at_minus_one"], -21);
  EXPECT_EQ(last(r).witnesses["valuation"], 1);
  EXPECT_TRUE(verify_certificate(order4_example, r));
}

TEST(Classify, FigureEightHasNoPrimeThreeModFour) {
  auto r = classify(figure8);
  EXPECT_EQ(r.order, Order::Order2);
  EXPECT_EQ(last(r).rule, "COR1_NO_P3MOD4");
  EXPECT_EQ(last(r).witnesses["delta_at_minus_one"], -5);  // det(V + V^t)
  EXPECT_TRUE(verify_certificate(figure8, r));
}

TEST(Classify, NoSymmetricFactor) {
  auto r = classify(slice_example);
  EXPECT_EQ(r.order, Order::AlgebraicallySlice);
  EXPECT_EQ(last(r).rule, "NO_SYMMETRIC_FACTOR");
  Factorization fz = codec::dec_factorization(last(r).witnesses);
  ASSERT_EQ(fz.factors.size(), 2u);
  EXPECT_EQ(fz.factors[0].first, (IntPoly{-2, 1}));
  EXPECT_EQ(fz.factors[1].first, (IntPoly{-1, 2}));
  EXPECT_TRUE(verify_certificate(slice_example, r));
}

TEST(Classify, NineTwentyFourThreeOnlyInEvenExponentFactor) {
  const auto& k = fixtures::knot("9_24");
  auto r = classify(k.v);
  EXPECT_EQ(r.order, Order::Order2);
  EXPECT_EQ(last(r).rule, "COR2_FACTOR_SCREEN");
  const auto& odd = last(r).witnesses["odd_factors"];
  ASSERT_EQ(odd.size(), 1u);
  EXPECT_EQ(codec::dec_poly(odd[0]["g"]), (IntPoly{1, -3, 1}));
  EXPECT_EQ(odd[0]["value"], 5);
  EXPECT_TRUE(verify_certificate(k.v, r));
}

TEST(Classify, TwelveN525NeedsPadicAnalysis) {
  const auto& k = fixtures::knot("12n_525");
  auto r = classify(k.v);
  EXPECT_EQ(r.order, Order::Order2);
  ASSERT_NE(find_step(r, "MOD_P_SCREEN"), nullptr);
  EXPECT_EQ(find_step(r, "MOD_P_SCREEN")->witnesses["pairs"][0]["verdict"], "needs_lift");
  EXPECT_EQ(last(r).rule, "HENSEL_ANALYSIS");
  const auto& a = last(r).witnesses["analyses"][0];
  EXPECT_EQ(a["p"], 3);
  EXPECT_EQ(a["precision"], 14);
  EXPECT_FALSE(a["order4"].get<bool>());
  // The quadratic lift agrees with 1 + 2565 t + t^2 modulo 3^8.
  IntPoly quad = codec::dec_poly(a["hensel_factors"][0]);
  ASSERT_EQ(quad.degree(), 2);
  EXPECT_EQ(floor_mod(quad[1], Integer(6561)), 2565);
  EXPECT_TRUE(verify_certificate(k.v, r));
}

TEST(Classify, PrecisionCeilingIsHonest) {
  const auto& k = fixtures::knot("12n_525");
  ClassifyOptions opt;
  opt.max_precision = 4;
  auto r = classify(k.v, opt);
  EXPECT_EQ(r.order, Order::Undetermined);
  EXPECT_EQ(r.reason, "precision ceiling");
  EXPECT_EQ(last(r).witnesses["precision"], 14);
  EXPECT_EQ(last(r).witnesses["max_precision"], 4);
  EXPECT_TRUE(verify_certificate(k.v, r));
}

TEST(Classify, AmphicheiralShortcut) {
  const auto& k = fixtures::knot("12n_525");
  ClassifyOptions opt;
  opt.amphicheiral = true;
  auto r = classify(k.v, opt);
  EXPECT_EQ(r.order, Order::Order2);
  EXPECT_EQ(last(r).rule, "AMPHICHEIRAL");
  EXPECT_FALSE(last(r).verifiable);
  EXPECT_TRUE(verify_certificate(k.v, r));
}

TEST(Classify, FixturesMatchTabulatedOrders) {
  for (const auto& k : fixtures::knots()) {
    auto r = classify(k.v);
    Order want = k.order == 0 ? Order::Infinite
                 : k.order == 1 ? Order::AlgebraicallySlice
                 : k.order == 2 ? Order::Order2
                                : Order::Order4;
    EXPECT_EQ(r.order, want) << k.name;
    EXPECT_TRUE(verify_certificate(k.v, r)) << k.name;
  }
}

TEST(Classify, EvenExponentCases) {
  // 12n681: the cyclic summand has Im delta(T) as a metabolizer.
  auto r = classify(fixtures::knot("12n_681").v);
  EXPECT_EQ(r.order, Order::AlgebraicallySlice);
  EXPECT_EQ(last(r).rule, "CYCLIC_SQUARE_METABOLIZER");
  // Two copies of an order-4 class: nontrivial in W(Q_3), found by the local analysis.
  IntMat twice = direct_sum(order4_example, order4_example);
  auto d = classify(twice);
  EXPECT_EQ(d.order, Order::Order2);
  EXPECT_EQ(last(d).rule, "EVEN_EXP_LOCAL_NONTRIVIAL");
  EXPECT_EQ(last(d).witnesses["p"], 3);
  EXPECT_TRUE(verify_certificate(twice, d));
}

TEST(Classify, SingularInputReducesFirst) {
  // Trefoil with a trivial band added: V (+) [[0,1],[0,0]] is singular.
  IntMat v = direct_sum(trefoil, IntMat{{0, 1}, {0, 0}});
  std::mt19937_64 rng(3);
  v = gen::congruent(v, gen::random_unimodular(rng, 4));
  auto r = classify(v);
  EXPECT_EQ(r.order, Order::Infinite);
  EXPECT_EQ(r.certificate.front().rule, "LEVINE_REDUCTION");
  EXPECT_FALSE(r.certificate.front().witnesses["steps"].empty());
  EXPECT_TRUE(verify_certificate(v, r));
  auto e = classify(IntMat{{0, 1}, {0, 0}});
  EXPECT_EQ(e.order, Order::AlgebraicallySlice);
  EXPECT_EQ(e.certificate.size(), 1u);
  EXPECT_TRUE(verify_certificate(IntMat{{0, 1}, {0, 0}}, e));
}

TEST(Classify, RejectsInvalidInput) {
  EXPECT_THROW(classify(IntMat{{1, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(classify(IntMat{{1, 2, 3}, {0, 1, 1}, {1, 1, 1}}), std::invalid_argument);
}

TEST(Verify, TamperedPrime) {
  auto r = classify(order4_example);
  ASSERT_TRUE(verify_certificate(order4_example, r));
  // 7 also has odd valuation in -21, so it is an equally valid witness.
  for (int p : {2, 5, 11}) {
    auto t = r;
    t.certificate.back().witnesses["p"] = p;
    EXPECT_FALSE(verify_certificate(order4_example, t)) << p;
  }
}

TEST(Verify, TamperedSubspace) {
  const auto& k = fixtures::knot("12n_681");
  auto r = classify(k.v);
  ASSERT_EQ(last(r).rule, "CYCLIC_SQUARE_METABOLIZER");
  auto& basis = r.certificate.back().witnesses["basis"];
  basis[0][0] = codec::enc(codec::dec_rat(basis[0][0]) + 1);
  EXPECT_FALSE(verify_certificate(k.v, r));
}

TEST(Verify, TamperedVerdictOrChain) {
  auto r = classify(figure8);
  auto wrong = r;
  wrong.order = Order::Order4;
  EXPECT_FALSE(verify_certificate(figure8, wrong));
  auto truncated = r;
  truncated.certificate.erase(truncated.certificate.begin() + 1);  // drop the zero-signature step
  EXPECT_FALSE(verify_certificate(figure8, truncated));
  EXPECT_FALSE(verify_certificate(trefoil, r));  // certificate for another matrix

  const auto& k = fixtures::knot("12n_525");
  auto h = classify(k.v);
  h.certificate.back().witnesses["analyses"][0]["hensel_factors"][0][1] = 2566;
  EXPECT_FALSE(verify_certificate(k.v, h));
  auto flip = classify(k.v);
  flip.certificate.back().witnesses["analyses"][0]["order4"] = true;
  flip.order = Order::Order4;
  EXPECT_FALSE(verify_certificate(k.v, flip));
}

TEST(Batch, OrderAndIsolation) {
  EXPECT_TRUE(classify_batch({}).empty());
  std::vector<BatchInput> items = {{"3_1", trefoil, {}}, {"4_1", figure8, {}}};
  auto res = classify_batch(items, 2);
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0].name, "3_1");
  EXPECT_EQ(res[0].verdict->order, Order::Infinite);
  EXPECT_EQ(res[1].verdict->order, Order::Order2);

  items.insert(items.begin() + 1, BatchInput{"bad", IntMat{{1, 0}, {0, 1}}, {}});
  for (const auto& k : fixtures::knots()) items.push_back({k.name, k.v, {}});
  auto many = classify_batch(items, 4);
  ASSERT_EQ(many.size(), items.size());
  EXPECT_FALSE(many[1].verdict.has_value());
  EXPECT_NE(many[1].error.find("det(V - V^t)"), std::string::npos);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(many[i].name, items[i].name);
    if (i != 1) {
      EXPECT_EQ(many[i].verdict, classify(items[i].v)) << items[i].name;
    }
  }
}

TEST(Codec, RoundTripsLargeValues) {
  Integer big = pow(Integer(3), 90u);
  EXPECT_EQ(codec::dec_int(codec::enc(big)), big);
  EXPECT_EQ(codec::dec_int(codec::enc(Integer(-big))), -big);
  Rational q = Rational(big, Integer(7));
  EXPECT_EQ(codec::dec_rat(codec::enc(q)), q);
  EXPECT_EQ(codec::dec_rat(codec::enc(Rational(-3, 4))), Rational(-3, 4));
  EXPECT_THROW(codec::dec_int(json("12a")), std::invalid_argument);
  EXPECT_THROW(codec::dec_rat(json("1/0")), std::invalid_argument);
}
