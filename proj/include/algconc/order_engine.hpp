#pragma once

// The decision pipeline: a Seifert matrix in, its order in the algebraic
// concordance group out, with a replayable chain of certificate steps.

#include "algconc/core.hpp"
#include "algconc/exact_linalg.hpp"
#include "algconc/isometric.hpp"
#include "algconc/matrix.hpp"
#include "algconc/padic.hpp"
#include "algconc/polyalg.hpp"
#include "algconc/realsig.hpp"
#include "algconc/witt.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace algconc {

using json = nlohmann::json;

enum class Order { AlgebraicallySlice, Order2, Order4, Infinite, Undetermined };

inline const char* to_string(Order o) {
  switch (o) {
    case Order::AlgebraicallySlice: return "slice";
    case Order::Order2: return "2";
    case Order::Order4: return "4";
    case Order::Infinite: return "infinite";
    case Order::Undetermined: return "undetermined";
  }
  return "?";
}

inline Order order_from_string(const std::string& s) {
  for (Order o : {Order::AlgebraicallySlice, Order::Order2, Order::Order4, Order::Infinite, Order::Undetermined})
    if (s == to_string(o)) return o;
  throw std::invalid_argument("unknown order \"" + s + "\"");
}

struct CertificateStep {
  std::string rule;
  json witnesses;
  bool verifiable = true;

  friend bool operator==(const CertificateStep&, const CertificateStep&) = default;
};

struct OrderVerdict {
  Order order = Order::Undetermined;
  std::string reason;  ///< blocking condition, only for Undetermined
  std::vector<CertificateStep> certificate;

  friend bool operator==(const OrderVerdict&, const OrderVerdict&) = default;
};

struct ClassifyOptions {
  bool amphicheiral = false;
  int max_precision = 64;       ///< p-adic ceiling (exponent k of p^k)
  std::size_t search_budget = 20000;  ///< candidate vectors tried by the metabolizer search
};

// ---------------------------------------------------------------------------
// JSON encoding of exact values. Integers that fit in 64 bits are numbers,
// larger ones decimal strings; rationals are "a/b" strings unless integral.

namespace codec {

inline json enc(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

inline json enc(const Rational& x) {
  if (denominator(x) == 1) return enc(numerator(x));
  return x.str();
}

inline Integer dec_int(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s == "-")
      throw std::invalid_argument("not an integer: \"" + s + "\"");
    return Integer(s);
  }
  throw std::invalid_argument("not an integer: " + j.dump());
}

inline Rational dec_rat(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(dec_int(j));
    const Integer d = dec_int(json(s.substr(slash + 1)));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(dec_int(json(s.substr(0, slash)))) / Rational(d);
  }
  return Rational(dec_int(j));
}

inline json enc(const IntPoly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(enc(c));
  return a;
}

inline IntPoly dec_poly(const json& j) {
  std::vector<Integer> c;
  for (const auto& x : j) c.push_back(dec_int(x));
  return IntPoly(std::move(c));
}

template <typename T>
json enc(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(enc(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline IntMat dec_intmat(const json& j) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) {
    std::vector<Integer> row;
    for (const auto& x : r) row.push_back(dec_int(x));
    rows.push_back(std::move(row));
  }
  return IntMat::from_rows(rows);
}

/// Columns of a subspace basis are stored as a list of vectors.
inline json enc_columns(const RatMat& m) {
  json cols = json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    json c = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) c.push_back(enc(m(i, j)));
    cols.push_back(std::move(c));
  }
  return cols;
}

inline RatMat dec_columns(const json& j, std::size_t rows) {
  std::vector<std::vector<Rational>> cols;
  for (const auto& c : j) {
    std::vector<Rational> v;
    for (const auto& x : c) v.push_back(dec_rat(x));
    if (v.size() != rows) throw std::invalid_argument("basis vector has wrong length");
    cols.push_back(std::move(v));
  }
  return RatMat::from_columns(cols, rows);
}

inline json enc(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(enc(x));
  return a;
}

inline json enc(const Factorization& fz) {
  json fs = json::array();
  for (const auto& [f, e] : fz.factors) fs.push_back({{"factor", enc(f)}, {"exponent", e}});
  return {{"unit", enc(fz.unit)}, {"factors", fs}};
}

inline Factorization dec_factorization(const json& j) {
  Factorization fz;
  fz.unit = dec_rat(j.at("unit"));
  for (const auto& f : j.at("factors")) fz.factors.emplace_back(dec_poly(f.at("factor")), f.at("exponent").get<int>());
  return fz;
}

inline json enc(const WittQpClass& c) {
  auto part = [](const WittFpClass& f) { return json{{"rank_parity", f.rank_parity}, {"disc_square", f.disc_square}}; };
  return {{"even", part(c.even_part)}, {"odd", part(c.odd_part)}, {"order", c.order()}};
}

inline json enc(const WittQ2Class& c) { return {{"c1", c.c1}, {"c5", c.c5}, {"c2", c.c2}, {"order", c.order()}}; }

}  // namespace codec

// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Rational> mat_vec(const RatMat& a, const std::vector<Rational>& x) {
  std::vector<Rational> y(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) y[i] += a(i, j) * x[j];
  return y;
}

inline Rational bilinear(const RatMat& q, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const std::vector<Rational> qy = mat_vec(q, y);
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) s += x[i] * qy[i];
  return s;
}

inline RatMat append_column(const RatMat& m, const std::vector<Rational>& c) {
  return hconcat(m, RatMat::from_columns({c}, c.size()));
}

/// Extends the T-invariant isotropic subspace W inside the T-invariant
/// summand spanned by `comp` to a half-dimensional one, adding one cyclic
/// subspace span{T^j x} at a time for small integral combinations x of a
/// complement of W in W^perp. Returns nullopt when the budget runs out.
inline std::optional<RatMat> extend_to_metabolizer(const RatMat& q, const RatMat& t, const RatMat& comp,
                                                   RatMat w, std::size_t& budget) {
  const std::size_t n = q.rows(), m = comp.cols();
  if (m % 2 != 0) return std::nullopt;
  if (w.cols() == 0) w = RatMat(n, 0);
  while (2 * w.cols() < m) {
    // W^perp inside the summand, then a complement of W in it.
    RatMat perp = w.cols() == 0 ? comp : comp * kernel_basis(RatMat(w.transpose() * q * comp));
    std::vector<std::vector<Rational>> extra;
    RatMat acc = w;
    for (std::size_t j = 0; j < perp.cols(); ++j) {
      RatMat trial = append_column(acc, perp.column(j));
      if (rank(trial) > acc.cols()) {
        acc = trial;
        extra.push_back(perp.column(j));
      }
    }
    const std::size_t r = extra.size();
    bool grown = false;
    // Coefficient vectors in {-1, 0, 1}^r by increasing support, first nonzero = 1.
    for (std::size_t weight = 1; weight <= r && !grown; ++weight) {
      std::vector<int> c(r, 0);
      std::vector<std::size_t> support(weight);
      for (std::size_t i = 0; i < weight; ++i) support[i] = i;
      for (;;) {
        const std::size_t signs = std::size_t(1) << (weight - 1);
        for (std::size_t mask = 0; mask < signs && !grown; ++mask) {
          if (budget == 0) return std::nullopt;
          --budget;
          std::vector<Rational> x(n, Rational(0));
          for (std::size_t i = 0; i < weight; ++i) {
            const int s = (i == 0 || !((mask >> (i - 1)) & 1)) ? 1 : -1;
            for (std::size_t k = 0; k < n; ++k) x[k] += s * extra[support[i]][k];
          }
          if (bilinear(q, x, x) != 0) continue;
          // Cyclic subspace of x modulo W.
          RatMat cand = w;
          std::vector<std::vector<Rational>> krylov;
          std::vector<Rational> y = x;
          while (true) {
            RatMat trial = append_column(cand, y);
            if (rank(trial) == cand.cols()) break;
            cand = trial;
            krylov.push_back(y);
            y = mat_vec(t, y);
          }
          if (2 * cand.cols() > m) continue;
          bool iso = true;
          for (std::size_t j = 0; j < krylov.size() && iso; ++j) iso = bilinear(q, x, krylov[j]) == 0;
          if (!iso) continue;
          w = cand;
          grown = true;
        }
        if (grown) break;
        // Next support set (combinations in lexicographic order).
        std::size_t i = weight;
        while (i > 0 && support[i - 1] == r - weight + i - 1) --i;
        if (i == 0) break;
        ++support[i - 1];
        for (std::size_t k = i; k < weight; ++k) support[k] = support[k - 1] + 1;
      }
    }
    if (!grown) return std::nullopt;
  }
  return w;
}

inline Integer poly_value(const IntPoly& f, long x) { return f.eval(Integer(x)); }

inline std::vector<Integer> primes_3mod4(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& p : prime_divisors(abs(n)))
    if (p % 4 == 3) out.push_back(p);
  return out;
}

inline json local_factor_json(const std::vector<LocalFactor>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back({{"degree", f.degree}, {"valuation", codec::enc(f.valuation)}});
  return a;
}

inline bool odd_local_factor(const std::vector<LocalFactor>& fs) {
  for (const auto& f : fs) {
    const Rational dv = Rational(f.degree) * f.valuation;
    if (denominator(dv) != 1) throw std::logic_error("local factor: degree * valuation is not integral");
    if (numerator(dv) % 2 != 0) return true;
  }
  return false;
}

/// W(Q_p) class of a diagonal form as JSON together with its order.
inline std::pair<json, int> local_class(const DiagForm& f, const Integer& p) {
  if (p == 2) {
    WittQ2Class c = witt_q2(f);
    return {codec::enc(c), c.order()};
  }
  WittQpClass c = witt_qp(f, p);
  return {codec::enc(c), c.order()};
}

/// Primes at which an even-exponent summand can be locally nontrivial.
inline std::vector<Integer> even_case_primes(const IntMat& b, const IntPoly& delta) {
  IntPoly r = radical(delta);
  Integer disc = r.degree() >= 2 ? discriminant(r) : Integer(1);
  std::set<Integer> ps{Integer(2)};
  for (const auto& p : prime_divisors(abs(det(b)))) ps.insert(p);
  for (const auto& p : prime_divisors(abs(disc))) ps.insert(p);
  return {ps.begin(), ps.end()};
}

}  // namespace detail

/// Per-(p, g) analysis for the last order-4 stage: roots of the trace
/// polynomial of g near -2 grouped into Q_p-irreducible factors.
struct HenselAnalysis {
  bool resolved = true;
  bool order4 = false;
  std::string reason;
  json witness;
};

inline HenselAnalysis hensel_analysis(const IntPoly& g, const Integer& p, int max_precision) {
  HenselAnalysis out;
  const int k = starting_precision(g, p);
  out.witness = {{"p", codec::enc(p)}, {"g", codec::enc(g)}, {"precision", k}, {"max_precision", max_precision}};
  if (k > max_precision) {
    out.resolved = false;
    out.reason = "precision ceiling";
    return out;
  }
  if (g.lead() % p != 0) {
    json hs = json::array();
    for (const auto& h : hensel_factor(g, p, k)) hs.push_back(codec::enc(h.coeffs));
    out.witness["hensel_factors"] = hs;
  }
  const IntPoly P = trace_poly(g).P;
  LocalAnalysis la = local_factors_near(P, p, floor_mod(Integer(-2), p), max_precision);
  out.witness["trace_polynomial"] = codec::enc(P);
  if (!la.resolved) {
    out.resolved = false;
    out.reason = la.reason;
    return out;
  }
  out.witness["factors_near_minus_two"] = detail::local_factor_json(la.factors);
  out.order4 = detail::odd_local_factor(la.factors);
  out.witness["order4"] = out.order4;
  return out;
}

namespace detail {

inline CertificateStep reduction_step(const ReductionResult& red) {
  json steps = json::array();
  for (const auto& s : red.steps) steps.push_back({{"transform", codec::enc(s.transform)}, {"reduced", codec::enc(s.reduced)}});
  return {"LEVINE_REDUCTION", {{"steps", steps}, {"matrix", codec::enc(red.matrix)}}, true};
}

inline CertificateStep signature_step(const std::string& rule, const SignatureProfile& prof) {
  json samples = json::array(), values = json::array();
  for (const auto& c : prof.sample_points) samples.push_back(codec::enc(c));
  for (int s : prof.plateau_values) values.push_back(s);
  return {rule, {{"samples", samples}, {"values", values}, {"trace_polynomial", codec::enc(prof.trace_polynomial)}}, true};
}

}  // namespace detail

/// Classifies the algebraic concordance class of a Seifert matrix.
inline OrderVerdict classify(const IntMat& v, const ClassifyOptions& opt = {}) {
  OrderVerdict out;
  auto conclude = [&](Order o, CertificateStep step) {
    out.order = o;
    out.certificate.push_back(std::move(step));
    return out;
  };
  auto undetermined = [&](const std::string& reason, json w) {
    out.reason = reason;
    w["reason"] = reason;
    return conclude(Order::Undetermined, {"UNDETERMINED", std::move(w), true});
  };

  // (1) Levine reduction to a nonsingular matrix.
  const ReductionResult red = reduce_to_nonsingular(v);
  out.certificate.push_back(detail::reduction_step(red));
  const IntMat& b = red.matrix;
  if (b.rows() == 0) {
    out.order = Order::AlgebraicallySlice;
    return out;
  }

  // (2) Signature function.
  const InfiniteOrderWitness inf = is_infinite_order(b);
  if (inf.infinite)
    return conclude(Order::Infinite, {"SIGNATURE_NONZERO", {{"c", codec::enc(*inf.c)}, {"value", inf.value}}, true});
  out.certificate.push_back(detail::signature_step("SIGNATURE_ZERO", inf.profile));

  // (3) Factorization over Z.
  const IsometricStructure s = build_structure(b);
  const Factorization fz = factor_over_Z(s.alexander);
  std::vector<std::pair<IntPoly, int>> symmetric, odd_symmetric;
  for (const auto& fe : fz.factors) {
    if (!is_symmetric(fe.first)) continue;
    symmetric.push_back(fe);
    if (fe.second % 2 != 0) odd_symmetric.push_back(fe);
  }
  if (symmetric.empty()) return conclude(Order::AlgebraicallySlice, {"NO_SYMMETRIC_FACTOR", codec::enc(fz), true});
  out.certificate.push_back({"FACTORIZATION", codec::enc(fz), true});

  const Integer dm1 = s.alexander.eval(Integer(-1));

  if (!odd_symmetric.empty()) {
    // (4a)
    for (const auto& p : detail::primes_3mod4(dm1)) {
      const int e = valuation(dm1, p);
      if (e % 2 != 0)
        return conclude(Order::Order4,
                        {"THM_ODDEXP", {{"p", codec::enc(p)}, {"delta_at_minus_one", codec::enc(dm1)}, {"valuation", e}}, true});
    }
    // (4b)
    if (detail::primes_3mod4(dm1).empty())
      return conclude(Order::Order2, {"COR1_NO_P3MOD4", {{"delta_at_minus_one", codec::enc(dm1)}}, true});
    // (4c) surviving pairs (p, g)
    std::vector<std::pair<Integer, IntPoly>> pairs;
    json values = json::array();
    for (const auto& [g, e] : odd_symmetric) {
      const Integer gm1 = g.eval(Integer(-1));
      values.push_back({{"g", codec::enc(g)}, {"value", codec::enc(gm1)}});
      for (const auto& p : detail::primes_3mod4(gm1)) pairs.emplace_back(p, g);
    }
    if (pairs.empty()) return conclude(Order::Order2, {"COR2_FACTOR_SCREEN", {{"odd_factors", values}}, true});
    // (4d)
    if (opt.amphicheiral) return conclude(Order::Order2, {"AMPHICHEIRAL", json::object(), false});
    // (4e)
    json screens = json::array();
    std::vector<std::pair<Integer, IntPoly>> lift;
    for (const auto& [p, g] : pairs) {
      ScreenReport rep = screen_symmetric_factors(g, p);
      screens.push_back({{"p", codec::enc(p)},
                         {"g", codec::enc(g)},
                         {"verdict", rep.verdict == ScreenVerdict::Impossible ? "impossible" : "needs_lift"},
                         {"feasible_partitions", rep.feasible_partitions.size()}});
      if (rep.verdict == ScreenVerdict::NeedsLift) lift.emplace_back(p, g);
    }
    if (lift.empty()) return conclude(Order::Order2, {"MOD_P_SCREEN", {{"pairs", screens}}, true});
    out.certificate.push_back({"MOD_P_SCREEN", {{"pairs", screens}}, true});
    // (4f)
    json analyses = json::array();
    std::optional<std::string> blocked;
    json blocked_witness;
    for (const auto& [p, g] : lift) {
      HenselAnalysis ha = hensel_analysis(g, p, opt.max_precision);
      if (!ha.resolved) {
        if (!blocked) {
          blocked = ha.reason;
          blocked_witness = ha.witness;
        }
        continue;
      }
      analyses.push_back(ha.witness);
      if (ha.order4) return conclude(Order::Order4, {"HENSEL_ANALYSIS", {{"analyses", json::array({ha.witness})}}, true});
    }
    if (blocked) return undetermined(*blocked, blocked_witness);
    return conclude(Order::Order2, {"HENSEL_ANALYSIS", {{"analyses", analyses}}, true});
  }

  // (5) Every symmetric factor has even exponent: order 1 or 2.
  const PrimaryDecomposition pd = primary_decomposition(s, fz);
  const RatMat qr = to_rational(s.q);

  // (5b) A nontrivial local Witt class on any summand rules out a metabolizer,
  // so look for one before spending the search budget.
  const std::vector<Integer> primes = detail::even_case_primes(b, s.alexander);
  json prime_list = json::array();
  for (const auto& p : primes) prime_list.push_back(codec::enc(p));
  std::vector<DiagForm> forms;
  std::vector<json> class_lists;
  for (const auto& c : pd.components) {
    const DiagForm d = diagonalize_congruence(c.q_restricted).form;
    json classes = json::array();
    for (const auto& p : primes) {
      auto [cls, ord] = detail::local_class(d, p);
      if (ord > 1)
        return conclude(Order::Order2, {"EVEN_EXP_LOCAL_NONTRIVIAL",
                                        {{"p", codec::enc(p)},
                                         {"g", codec::enc(c.delta)},
                                         {"exponent", c.exponent},
                                         {"basis", codec::enc_columns(c.basis)},
                                         {"form", codec::enc(d.entries)},
                                         {"class", cls}},
                                        true});
      classes.push_back({{"p", codec::enc(p)}, {"class", cls}});
    }
    forms.push_back(d);
    class_lists.push_back(classes);
  }

  // (5a)
  std::size_t budget = opt.search_budget;
  RatMat total = pd.residual_metabolizer;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < pd.components.size(); ++i) {
    const auto& c = pd.components[i];
    std::optional<RatMat> met =
        detail::extend_to_metabolizer(qr, s.t, c.basis, component_metabolizer_candidate(s, c), budget);
    if (met) {
      total = hconcat(total, *met);
    } else {
      open.push_back(i);
    }
  }
  if (open.empty())
    return conclude(Order::AlgebraicallySlice, {"CYCLIC_SQUARE_METABOLIZER", {{"basis", codec::enc_columns(total)}}, true});

  json local = json::array();
  for (std::size_t i : open) {
    const PrimaryComponent* c = &pd.components[i];
    const DiagForm& d = forms[i];
    const json& classes = class_lists[i];
    // A trivial W(Q_p) class decides the summand only when g stays
    // irreducible (one trace-polynomial factor) over Q_p.
    const IntPoly P = trace_poly(c->delta).P;
    json degrees = json::array();
    for (const auto& p : primes) {
      if (P.degree() <= 1) {
        degrees.push_back({{"p", codec::enc(p)}, {"degrees", json::array({P.degree()})}});
        continue;
      }
      auto degs = local_factor_degrees(P, p, opt.max_precision);
      json w = {{"p", codec::enc(p)}, {"g", codec::enc(c->delta)}, {"max_precision", opt.max_precision}};
      if (!degs) return undetermined("Q_p factor degrees unresolved", w);
      if (degs->size() > 1) {
        w["degrees"] = *degs;
        return undetermined("several Q_p factors with trivial total Witt class", w);
      }
      degrees.push_back({{"p", codec::enc(p)}, {"degrees", *degs}});
    }
    local.push_back({{"g", codec::enc(c->delta)},
                     {"exponent", c->exponent},
                     {"basis", codec::enc_columns(c->basis)},
                     {"form", codec::enc(d.entries)},
                     {"classes", classes},
                     {"local_degrees", degrees}});
  }
  return conclude(Order::AlgebraicallySlice, {"EVEN_EXP_LOCAL_TRIVIAL",
                                              {{"primes", prime_list},
                                               {"max_precision", opt.max_precision},
                                               {"metabolizer", codec::enc_columns(total)},
                                               {"local", local}},
                                              true});
}

// ---------------------------------------------------------------------------
// Certificate replay.

namespace detail {

struct ReplayState {
  std::optional<IntMat> b;
  bool signature_zero = false;
  std::optional<Factorization> fz;
  std::optional<Order> conclusion;
  std::string reason;
};

inline bool replay_reduction(const IntMat& v, const json& w, ReplayState& st) {
  IntMat cur = v;
  for (const auto& step : w.at("steps")) {
    const IntMat p = codec::dec_intmat(step.at("transform"));
    const IntMat red = codec::dec_intmat(step.at("reduced"));
    const std::size_t n = cur.rows();
    if (n < 2 || p.rows() != n || !p.is_square()) return false;
    const Integer dp = det(p);
    if (dp != 1 && dp != -1) return false;
    if (IntMat(p.transpose() * cur * p) != red) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (red(n - 1, j) != 0) return false;
    for (std::size_t i = 0; i + 2 < n; ++i)
      if (red(i, n - 1) != 0) return false;
    if (red(n - 2, n - 1) != 1) return false;
    IntMat nb(n - 2, n - 2);
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = 0; j + 2 < n; ++j) nb(i, j) = red(i, j);
    cur = nb;
  }
  const json& mj = w.at("matrix");
  const IntMat m = mj.empty() ? IntMat(0, 0) : codec::dec_intmat(mj);
  if (m != cur) return false;
  if (m.rows() > 0 && det(m) == 0) return false;
  st.b = m;
  if (m.rows() == 0) st.conclusion = Order::AlgebraicallySlice;
  return true;
}

inline bool replay_factorization(const json& w, ReplayState& st, bool expect_symmetric) {
  const Factorization fz = codec::dec_factorization(w);
  const IsometricStructure s = build_structure(*st.b);
  if (fz.product() != to_rational(s.alexander)) return false;
  const Factorization again = factor_over_Z(s.alexander);
  if (again.factors != fz.factors) return false;
  bool any = false;
  for (const auto& [f, e] : fz.factors) any = any || is_symmetric(f);
  if (any != expect_symmetric) return false;
  st.fz = fz;
  return true;
}

inline bool has_odd_symmetric(const Factorization& fz) {
  for (const auto& [f, e] : fz.factors)
    if (is_symmetric(f) && e % 2 != 0) return true;
  return false;
}

/// Checks that basis spans exactly the g-primary summand: T-invariant,
/// killed by g(T)^e, of dimension e * deg g where g^e || Delta.
inline bool is_primary_summand(const IsometricStructure& s, const Factorization& fz, const IntPoly& g, int e,
                               const RatMat& basis) {
  bool listed = false;
  for (const auto& [f, k] : fz.factors) listed = listed || (f == g && k == e);
  if (!listed) return false;
  if (basis.cols() != static_cast<std::size_t>(e * g.degree())) return false;
  if (rank(basis) != basis.cols()) return false;
  if (!(poly_at(pow(g, static_cast<unsigned>(e)), s.t) * basis).is_zero()) return false;
  return rank(hconcat(basis, RatMat(s.t * basis))) == basis.cols();
}

inline bool replay_step(const IntMat& v, const CertificateStep& step, ReplayState& st) {
  const json& w = step.witnesses;
  const std::string& r = step.rule;
  if (r == "LEVINE_REDUCTION") return !st.b && replay_reduction(v, w, st);
  if (!st.b || st.b->rows() == 0 || st.conclusion) return false;
  const IntMat& b = *st.b;

  if (r == "SIGNATURE_NONZERO") {
    const Rational c = codec::dec_rat(w.at("c"));
    const int value = w.at("value").get<int>();
    if (value == 0 || tl_signature_at(b, c) != value) return false;
    // The same plateau seen on the unreduced matrix.
    if (tl_signature_at(v, c) != value) return false;
    st.conclusion = Order::Infinite;
    return true;
  }
  if (r == "SIGNATURE_ZERO") {
    const SignatureProfile prof = signature_profile(b);
    std::vector<Rational> samples;
    for (const auto& c : w.at("samples")) samples.push_back(codec::dec_rat(c));
    if (samples != prof.sample_points) return false;
    for (std::size_t i = 0; i < samples.size(); ++i)
      if (w.at("values").at(i).get<int>() != 0 || tl_signature_at(b, samples[i]) != 0) return false;
    st.signature_zero = true;
    return true;
  }
  if (r == "NO_SYMMETRIC_FACTOR") {
    if (!replay_factorization(w, st, false)) return false;
    st.conclusion = Order::AlgebraicallySlice;
    return true;
  }
  if (r == "FACTORIZATION") return replay_factorization(w, st, true);

  // Everything below needs finite order and a factorization with symmetric factors.
  if (!st.signature_zero || !st.fz) return false;
  const IntPoly delta = alexander_poly(b);
  const Integer dm1 = delta.eval(Integer(-1));
  const bool odd = has_odd_symmetric(*st.fz);

  if (r == "THM_ODDEXP") {
    const Integer p = codec::dec_int(w.at("p"));
    if (!odd || p % 4 != 3 || !is_probable_prime(p)) return false;
    if (codec::dec_int(w.at("delta_at_minus_one")) != dm1) return false;
    const int e = valuation(dm1, p);
    if (e != w.at("valuation").get<int>() || e % 2 == 0) return false;
    st.conclusion = Order::Order4;
    return true;
  }
  if (r == "COR1_NO_P3MOD4") {
    if (!odd || codec::dec_int(w.at("delta_at_minus_one")) != dm1) return false;
    for (const auto& [p, e] : factorize(abs(dm1)))
      if (p % 4 == 3) return false;
    st.conclusion = Order::Order2;
    return true;
  }
  if (r == "COR2_FACTOR_SCREEN") {
    if (!odd) return false;
    std::size_t n_odd = 0;
    for (const auto& [f, e] : st.fz->factors)
      if (is_symmetric(f) && e % 2 != 0) {
        ++n_odd;
        for (const auto& p : prime_divisors(abs(f.eval(Integer(-1)))))
          if (p % 4 == 3) return false;
      }
    if (w.at("odd_factors").size() != n_odd) return false;
    st.conclusion = Order::Order2;
    return true;
  }
  if (r == "AMPHICHEIRAL") {
    if (!odd) return false;
    st.conclusion = Order::Order2;
    return true;
  }
  if (r == "MOD_P_SCREEN") {
    if (!odd) return false;
    // Recompute the set of surviving pairs and each screen.
    std::set<std::pair<Integer, std::vector<Integer>>> expected, seen;
    for (const auto& [f, e] : st.fz->factors)
      if (is_symmetric(f) && e % 2 != 0)
        for (const auto& p : prime_divisors(abs(f.eval(Integer(-1)))))
          if (p % 4 == 3) expected.emplace(p, f.coeffs());
    bool all_impossible = true;
    for (const auto& pr : w.at("pairs")) {
      const Integer p = codec::dec_int(pr.at("p"));
      const IntPoly g = codec::dec_poly(pr.at("g"));
      if (!expected.count({p, g.coeffs()})) return false;
      seen.emplace(p, g.coeffs());
      ScreenReport rep = screen_symmetric_factors(g, p);
      const std::string vs = rep.verdict == ScreenVerdict::Impossible ? "impossible" : "needs_lift";
      if (pr.at("verdict").get<std::string>() != vs) return false;
      all_impossible = all_impossible && rep.verdict == ScreenVerdict::Impossible;
    }
    if (seen != expected) return false;
    if (all_impossible) st.conclusion = Order::Order2;
    return true;
  }
  if (r == "HENSEL_ANALYSIS") {
    if (!odd) return false;
    bool any4 = false;
    std::set<std::pair<Integer, std::vector<Integer>>> seen;
    for (const auto& a : w.at("analyses")) {
      const Integer p = codec::dec_int(a.at("p"));
      const IntPoly g = codec::dec_poly(a.at("g"));
      if (p % 4 != 3 || !is_probable_prime(p)) return false;
      bool listed = false;
      for (const auto& [f, e] : st.fz->factors) listed = listed || (f == g && e % 2 != 0 && is_symmetric(f));
      if (!listed || g.eval(Integer(-1)) % p != 0) return false;
      const int k = a.at("precision").get<int>();
      const int cap = a.at("max_precision").get<int>();
      if (k != starting_precision(g, p) || k > cap) return false;
      if (a.contains("hensel_factors")) {
        // Re-multiply the lifts: product = g / lc(g) mod p^k.
        const Integer pk = pow(p, static_cast<unsigned>(k));
        IntPoly prod = IntPoly::constant(1);
        for (const auto& h : a.at("hensel_factors")) prod = reduce_mod(prod * codec::dec_poly(h), pk);
        if (prod != monic_mod(g, pk)) return false;
      }
      const IntPoly P = trace_poly(g).P;
      if (codec::dec_poly(a.at("trace_polynomial")) != P) return false;
      LocalAnalysis la = local_factors_near(P, p, floor_mod(Integer(-2), p), cap);
      if (!la.resolved || local_factor_json(la.factors) != a.at("factors_near_minus_two")) return false;
      const bool o4 = odd_local_factor(la.factors);
      if (o4 != a.at("order4").get<bool>()) return false;
      any4 = any4 || o4;
      seen.emplace(p, g.coeffs());
    }
    if (any4) {
      st.conclusion = Order::Order4;
      return true;
    }
    // Order 2 needs every pair the screen could not exclude.
    for (const auto& [f, e] : st.fz->factors)
      if (is_symmetric(f) && e % 2 != 0)
        for (const auto& p : prime_divisors(abs(f.eval(Integer(-1)))))
          if (p % 4 == 3 && screen_symmetric_factors(f, p).verdict == ScreenVerdict::NeedsLift && !seen.count({p, f.coeffs()}))
            return false;
    st.conclusion = Order::Order2;
    return true;
  }

  if (r == "UNDETERMINED") {
    st.conclusion = Order::Undetermined;
    st.reason = w.at("reason").get<std::string>();
    if (w.contains("precision") && w.contains("max_precision")) {
      const Integer p = codec::dec_int(w.at("p"));
      const IntPoly g = codec::dec_poly(w.at("g"));
      const int k = starting_precision(g, p);
      if (k != w.at("precision").get<int>()) return false;
      if (st.reason == "precision ceiling" && k <= w.at("max_precision").get<int>()) {
        // The ceiling was hit inside the Newton polygon recentring instead.
        LocalAnalysis la = local_factors_near(trace_poly(g).P, p, floor_mod(Integer(-2), p), w.at("max_precision").get<int>());
        if (la.resolved) return false;
      }
    } else if (w.contains("g") && w.contains("max_precision")) {
      const Integer p = codec::dec_int(w.at("p"));
      const IntPoly P = trace_poly(codec::dec_poly(w.at("g"))).P;
      auto degs = local_factor_degrees(P, p, w.at("max_precision").get<int>());
      if (degs && degs->size() <= 1) return false;
    }
    return true;
  }

  // Even-exponent rules.
  if (odd) return false;
  const IsometricStructure s = build_structure(b);
  const RatMat qr = to_rational(s.q);
  const std::size_t n = b.rows();
  if (r == "CYCLIC_SQUARE_METABOLIZER") {
    if (!verify_metabolizer(qr, codec::dec_columns(w.at("basis"), n), &s.t)) return false;
    st.conclusion = Order::AlgebraicallySlice;
    return true;
  }
  if (r == "EVEN_EXP_LOCAL_NONTRIVIAL") {
    const Integer p = codec::dec_int(w.at("p"));
    const IntPoly g = codec::dec_poly(w.at("g"));
    const RatMat basis = codec::dec_columns(w.at("basis"), n);
    if (!is_probable_prime(p) || !is_primary_summand(s, *st.fz, g, w.at("exponent").get<int>(), basis)) return false;
    const DiagForm d = diagonalize_congruence(RatMat(basis.transpose() * qr * basis)).form;
    if (local_class(d, p).second <= 1) return false;
    st.conclusion = Order::Order2;
    return true;
  }
  if (r == "EVEN_EXP_LOCAL_TRIVIAL") {
    // Metabolized part: isotropic and T-invariant.
    const RatMat met = codec::dec_columns(w.at("metabolizer"), n);
    if (met.cols() > 0) {
      if (rank(met) != met.cols()) return false;
      if (!RatMat(met.transpose() * qr * met).is_zero()) return false;
      if (rank(hconcat(met, RatMat(s.t * met))) != met.cols()) return false;
    }
    const std::vector<Integer> primes = even_case_primes(b, delta);
    std::vector<Integer> listed;
    for (const auto& p : w.at("primes")) listed.push_back(codec::dec_int(p));
    if (listed != primes) return false;
    std::size_t local_dim = 0;
    for (const auto& c : w.at("local")) {
      const IntPoly g = codec::dec_poly(c.at("g"));
      const RatMat basis = codec::dec_columns(c.at("basis"), n);
      if (!is_primary_summand(s, *st.fz, g, c.at("exponent").get<int>(), basis)) return false;
      local_dim += basis.cols();
      const DiagForm d = diagonalize_congruence(RatMat(basis.transpose() * qr * basis)).form;
      const IntPoly P = trace_poly(g).P;
      for (const auto& p : primes) {
        if (local_class(d, p).second != 1) return false;
        if (P.degree() > 1) {
          auto degs = local_factor_degrees(P, p, w.at("max_precision").get<int>());
          if (!degs || degs->size() != 1) return false;
        }
      }
    }
    // The metabolized part and the locally trivial summands fill the space.
    if (2 * met.cols() + local_dim != n) return false;
    st.conclusion = Order::AlgebraicallySlice;
    return true;
  }
  return false;
}

}  // namespace detail

/// Replays every step with fresh computation and checks that the chain
/// entails the stated order. Never throws.
inline bool verify_certificate(const IntMat& v, const OrderVerdict& verdict) {
  try {
    detail::ReplayState st;
    for (const auto& step : verdict.certificate)
      if (!detail::replay_step(v, step, st)) return false;
    if (!st.conclusion || *st.conclusion != verdict.order) return false;
    if (verdict.order == Order::Undetermined && st.reason != verdict.reason) return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Batches.

struct BatchInput {
  std::string name;
  IntMat v;
  ClassifyOptions options;
};

struct BatchResult {
  std::string name;
  std::optional<OrderVerdict> verdict;
  std::string error;  ///< set when classification threw
  double seconds = 0;
};

/// Classifies independent items on up to `jobs` threads; results keep the
/// input order and a failing item only affects its own record.
inline std::vector<BatchResult> classify_batch(const std::vector<BatchInput>& items, unsigned jobs = 1) {
  std::vector<BatchResult> out(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      out[i].name = items[i].name;
      try {
        out[i].verdict = classify(items[i].v, items[i].options);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
      out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(items.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace algconc
