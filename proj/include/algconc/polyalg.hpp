#pragma once

// Polynomial algebra for Seifert matrices: Alexander and characteristic
// polynomials, symmetry, factorization over Z (Zassenhaus), resultants and
// discriminants, trace polynomials and Sturm root isolation.

#include "algconc/core.hpp"
#include "algconc/exact_linalg.hpp"
#include "algconc/hensel.hpp"
#include "algconc/matrix.hpp"
#include "algconc/poly.hpp"
#include "algconc/poly_modp.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace algconc {

/// Irreducible factorization: unit * prod factor^exponent. Factors are
/// primitive with positive leading coefficient, sorted by (degree, coefficients).
struct Factorization {
  Rational unit = 1;
  std::vector<std::pair<IntPoly, int>> factors;

  RatPoly product() const {
    RatPoly acc = RatPoly::constant(unit);
    for (const auto& [f, e] : factors) acc = acc * pow(to_rational(f), static_cast<unsigned>(e));
    return acc;
  }
};

/// det(V - t V^t), by evaluation at n+1 integer points and interpolation.
inline IntPoly alexander_poly(const IntMat& v) {
  if (!v.is_square()) throw std::invalid_argument("alexander_poly: matrix not square");
  const std::size_t n = v.rows();
  if (n == 0) return IntPoly::constant(1);
  const IntMat vt = v.transpose();
  // Newton divided differences at nodes 0..n.
  std::vector<Rational> xs, dd;
  for (std::size_t k = 0; k <= n; ++k) {
    Integer x = static_cast<long>(k);
    xs.emplace_back(x);
    dd.emplace_back(det(v - vt * x));
  }
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  RatPoly acc = RatPoly::constant(dd[n]);
  for (std::size_t i = n; i-- > 0;) acc = acc * RatPoly{-xs[i], Rational(1)} + RatPoly::constant(dd[i]);
  return acc.map<Integer>([](const Rational& c) {
    if (denominator(c) != 1) throw std::logic_error("alexander_poly: non-integral interpolation");
    return numerator(c);
  });
}

/// Characteristic polynomial of T = V^{-1} V^t, i.e. Delta_V / det(V) (monic).
inline RatPoly char_poly_T(const IntMat& v) {
  const Integer d = det(v);
  if (d == 0) throw std::domain_error("char_poly_T: singular Seifert matrix");
  return to_rational(alexander_poly(v)) * (Rational(1) / Rational(d));
}

/// True iff f(t) = +-t^deg f(1/t).
inline bool is_symmetric(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_symmetric: zero polynomial");
  IntPoly r = f.reciprocal();
  return r == f || r == -f;
}

/// f(t) = t^deg f(1/t) exactly (palindromic).
inline bool is_palindromic(const IntPoly& f) { return f.reciprocal() == f; }

/// Representative of f up to units +-t^k: nonzero constant term, positive lead.
inline IntPoly normalize_unit(const IntPoly& f) {
  if (f.is_zero()) return f;
  IntPoly g = f.strip_t_power();
  return g.lead() < 0 ? IntPoly(-g) : g;
}

/// Yun square-free decomposition over Q, returned as primitive integer
/// polynomials (a_i, i) with f = c * prod a_i^i.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
  std::vector<std::pair<IntPoly, int>> out;
  if (f.degree() <= 0) return out;
  RatPoly F = to_rational(f);
  RatPoly a0 = gcd(F, F.derivative());
  RatPoly b = divmod(F, a0).first;
  RatPoly c = divmod(F.derivative(), a0).first;
  RatPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPoly a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(primitive_part(a), i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Product of the distinct irreducible factors (primitive, positive lead).
inline IntPoly radical(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("radical: zero polynomial");
  if (f.degree() == 0) return IntPoly::constant(1);
  RatPoly F = to_rational(f);
  return primitive_part(divmod(F, gcd(F, F.derivative())).first);
}

/// Sylvester-matrix resultant Res(f, g) = lc(f)^m lc(g)^n prod (a_i - b_j).
inline Integer resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant: zero polynomial");
  const int n = f.degree(), m = g.degree();
  if (n == 0 && m == 0) return 1;
  if (n == 0) return pow(f.lead(), static_cast<unsigned>(m));
  if (m == 0) return pow(g.lead(), static_cast<unsigned>(n));
  const std::size_t N = static_cast<std::size_t>(n + m);
  IntMat s(N, N);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = f[static_cast<std::size_t>(n - j)];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j)
      s(static_cast<std::size_t>(m + i), static_cast<std::size_t>(i + j)) = g[static_cast<std::size_t>(m - j)];
  return det(s);
}

/// Disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
inline Integer discriminant(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1) throw std::invalid_argument("discriminant: degree must be at least 1");
  if (n == 1) return 1;
  Integer r = resultant(f, f.derivative());
  if (r % f.lead() != 0) throw std::logic_error("discriminant: inexact division");
  r /= f.lead();
  return (static_cast<long>(n) * (n - 1) / 2) % 2 ? Integer(-r) : r;
}

namespace detail {

inline Integer isqrt_ceil(const Integer& x) {
  Integer r = boost::multiprecision::sqrt(x);
  return r * r == x ? r : Integer(r + 1);
}

/// Factors a primitive square-free polynomial with positive leading coefficient.
inline std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  const int n = f.degree();
  if (n <= 1) return {f};
  // Choose a good prime with few modular factors.
  std::int64_t best_p = 0;
  ModFactorization best;
  int good = 0;
  for (std::int64_t p = 3; good < 4; p += 2) {
    if (!is_probable_prime(Integer(p))) continue;
    if (f.lead() % p == 0) continue;
    ModPoly fb = ModPoly::from_int(f, p);
    if (gcd(fb, fb.derivative()).degree() != 0) continue;
    ModFactorization mf = factor_mod_p(fb);
    ++good;
    if (best_p == 0 || mf.factors.size() < best.factors.size()) {
      best_p = p;
      best = mf;
    }
    if (best.factors.size() == 1) break;
  }
  if (best.factors.size() == 1) return {f};
  std::vector<ModPoly> parts;
  for (const auto& [g, e] : best.factors) parts.push_back(g);

  // Coefficient bound for factors of lc * f.
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Integer bound = isqrt_ceil(norm2) * pow(Integer(2), static_cast<unsigned>(n)) * abs(f.lead());
  const Integer p = best_p;
  int k = 1;
  Integer pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<IntPoly> lifted = hensel_lift(f, parts, p, k);

  std::vector<IntPoly> result;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  IntPoly fstar = f;
  std::size_t s = 1;
  while (2 * s <= remaining.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      IntPoly g = IntPoly::constant(fstar.lead());
      for (std::size_t i : idx) g = mul_mod(g, lifted[remaining[i]], pk);
      IntPoly cand = primitive_part(symmetric_reduce(g, pk));
      if (auto q = exact_divide(fstar, cand)) {
        result.push_back(cand);
        fstar = *q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(remaining[i]);
        remaining = std::move(keep);
        found = true;
        break;
      }
      // Next combination in lexicographic order.
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == remaining.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  result.push_back(primitive_part(fstar));
  return result;
}

}  // namespace detail

/// Irreducible factorization over Z; the content and sign are collected in
/// the unit, and a power of t (if any) appears as the factor t.
inline Factorization factor_over_Z(const IntPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("factor_over_Z: zero polynomial");
  Factorization out;
  std::vector<std::pair<IntPoly, int>> acc;
  std::size_t tpow = 0;
  while (f[tpow] == 0) ++tpow;
  if (tpow > 0) acc.emplace_back(IntPoly::x(), static_cast<int>(tpow));
  IntPoly g = f.strip_t_power();
  for (const auto& [a, e] : squarefree_decomposition(g))
    for (const auto& h : detail::zassenhaus(a)) acc.emplace_back(h, e);
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& item : acc) {
    if (!out.factors.empty() && out.factors.back().first == item.first) out.factors.back().second += item.second;
    else out.factors.push_back(std::move(item));
  }
  Integer lead = 1;
  for (const auto& [h, e] : out.factors) lead *= pow(h.lead(), static_cast<unsigned>(e));
  out.unit = Rational(f.lead()) / Rational(lead);
  return out;
}

/// P(x) with t^g P(t + 1/t) = f for a palindromic f of degree 2g.
struct TracePoly {
  IntPoly P;
  int g = 0;
};

inline TracePoly trace_poly(const IntPoly& f) {
  if (f.degree() < 0 || f.degree() % 2 != 0) throw std::invalid_argument("trace_poly: degree must be even");
  if (!is_palindromic(f)) throw std::invalid_argument("trace_poly: polynomial is not palindromic");
  const int g = f.degree() / 2;
  // C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}, with C_j(t + 1/t) = t^j + t^-j.
  IntPoly prev = IntPoly::constant(2), cur = IntPoly::x();
  IntPoly P = IntPoly::constant(f[static_cast<std::size_t>(g)]);
  for (int j = 1; j <= g; ++j) {
    P += cur * f[static_cast<std::size_t>(g + j)];
    IntPoly next = IntPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {P, g};
}

/// Open interval (lo, hi) with rational endpoints that are not roots.
struct RootInterval {
  Rational lo, hi;
};

namespace detail {

/// Scales by a positive rational so the result is integral and primitive,
/// keeping the sign pattern (required for Sturm chains).
inline IntPoly positive_primitive(const RatPoly& f) {
  if (f.is_zero()) return IntPoly();
  IntPoly g = primitive_part(f);
  return f.lead() < 0 ? IntPoly(-g) : g;
}

inline std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    RatPoly r = divmod(to_rational(chain[chain.size() - 2]), to_rational(chain.back())).second;
    if (r.is_zero()) break;
    chain.push_back(positive_primitive(-r));
  }
  return chain;
}

inline int sign_changes(const std::vector<IntPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

/// Isolating intervals, in increasing order, for the real roots of P strictly
/// inside (lo, hi). Endpoints lo and hi must not be roots.
inline std::vector<RootInterval> sturm_isolate(const IntPoly& P, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("sturm_isolate: empty interval");
  if (P.degree() <= 0) return {};
  IntPoly q = radical(P);
  if (sign_at(q, lo) == 0 || sign_at(q, hi) == 0) throw std::domain_error("sturm_isolate: endpoint is a root");
  const auto chain = detail::sturm_chain(q);
  std::vector<RootInterval> out;
  struct Job {
    Rational a, b;
    int va, vb;
  };
  std::vector<Job> stack{{lo, hi, detail::sign_changes(chain, lo), detail::sign_changes(chain, hi)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    const int count = j.va - j.vb;
    if (count == 0) continue;
    if (count == 1) {
      out.push_back({j.a, j.b});
      continue;
    }
    // Split at a non-root point near the midpoint.
    Rational m = (j.a + j.b) / 2;
    for (int k = 3; sign_at(q, m) == 0; ++k) m = j.a + (j.b - j.a) / k;
    int vm = detail::sign_changes(chain, m);
    stack.push_back({m, j.b, vm, j.vb});
    stack.push_back({j.a, m, j.va, vm});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

/// Number of distinct real roots of P in (lo, hi) (endpoints not roots).
inline int count_real_roots(const IntPoly& P, const Rational& lo, const Rational& hi) {
  if (P.degree() <= 0) return 0;
  IntPoly q = radical(P);
  const auto chain = detail::sturm_chain(q);
  return detail::sign_changes(chain, lo) - detail::sign_changes(chain, hi);
}

}  // namespace algconc
