#pragma once

// p-adic tools: square classes of Q_p*, Hensel factorization mod p^k, Newton
// lifting of simple roots, the mod-p screen for dangerous symmetric factors,
// and Newton-polygon bookkeeping of Q_p-irreducible factor degrees.

#include "algconc/core.hpp"
#include "algconc/hensel.hpp"
#include "algconc/poly.hpp"
#include "algconc/poly_modp.hpp"
#include "algconc/polyalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace algconc {

/// Class of a nonzero rational in Q_p* / (Q_p*)^2.
struct SquareClassQp {
  Integer p;
  int D = 0;           ///< valuation parity
  int unit_class = 1;  ///< odd p: 1 for a residue, -1 for a non-residue; p = 2: unit part mod 8

  /// Canonical integer representative: 1, u, p, up for odd p (u the least
  /// non-residue), or one of +-1, +-2, +-5, +-10 for p = 2.
  Integer representative() const {
    if (p == 2) {
      static const std::map<int, int> unit = {{1, 1}, {3, -5}, {5, 5}, {7, -1}};
      Integer u = unit.at(unit_class);
      return D ? Integer(2 * u) : u;
    }
    Integer u = 1;
    if (unit_class < 0) {
      u = 2;
      while (legendre(u, p) != -1) ++u;
    }
    return D ? Integer(u * p) : u;
  }

  /// "1", "u", "p", "up" for odd p; the signed representative for p = 2.
  std::string label() const {
    if (p == 2) return representative().str();
    std::string s = unit_class < 0 ? "u" : "";
    if (D) s += "p";
    return s.empty() ? "1" : s;
  }

  bool is_square() const { return D == 0 && unit_class == 1; }

  friend bool operator==(const SquareClassQp&, const SquareClassQp&) = default;
};

inline SquareClassQp square_class(const Rational& x, const Integer& p) {
  if (x == 0) throw std::domain_error("square_class: zero has no square class");
  SquareClassQp c;
  c.p = p;
  const int v = valuation(x, p);
  c.D = ((v % 2) + 2) % 2;
  // Unit part of numerator * denominator has the same square class as that of x.
  Integer u = unit_part(numerator(x), p) * unit_part(denominator(x), p);
  if (p == 2) c.unit_class = static_cast<int>(floor_mod(u, 8).convert_to<long>());
  else c.unit_class = legendre(u, p);
  return c;
}

inline SquareClassQp multiply(const SquareClassQp& a, const SquareClassQp& b) {
  if (a.p != b.p) throw std::invalid_argument("multiply: square classes at different primes");
  SquareClassQp c;
  c.p = a.p;
  c.D = a.D ^ b.D;
  c.unit_class = a.p == 2 ? (a.unit_class * b.unit_class) % 8 : a.unit_class * b.unit_class;
  return c;
}

enum class Certification {
  Certified,   ///< irreducible over Q_p: lifted from an irreducible factor mod p
  Structural,  ///< irreducible over Q_p by a structural test (Eisenstein, quadratic discriminant)
  Unresolved,  ///< a lifted cluster psi^m (m > 1) whose Q_p factorization is not decided here
};

inline const char* to_string(Certification c) {
  switch (c) {
    case Certification::Certified: return "certified";
    case Certification::Structural: return "structural";
    default: return "unresolved";
  }
}

/// Monic polynomial with coefficients mod p^k, lifted from the cluster
/// residue^multiplicity of a mod-p factorization.
struct PadicPoly {
  Integer p;
  int k = 1;
  IntPoly coeffs;  ///< in [0, p^k)
  ModPoly residue;
  int multiplicity = 1;
  Certification certification = Certification::Unresolved;

  bool claimed_irreducible() const { return certification != Certification::Unresolved; }
};

namespace detail {

/// Eisenstein criterion for f(t + r), r in [0, p), on a monic lift.
inline bool eisenstein_after_shift(const IntPoly& f, const Integer& p, const Integer& pk) {
  for (Integer r = 0; r < p; ++r) {
    IntPoly g = reduce_mod(f.shift(r), pk);
    bool ok = g.lead() % p != 0 && g[0] != 0 && g[0] % (p * p) != 0;
    for (int i = 0; ok && i < g.degree(); ++i) ok = g[static_cast<std::size_t>(i)] % p == 0;
    if (ok) return true;
  }
  return false;
}

inline Certification certify_cluster(const IntPoly& lift, int multiplicity, const Integer& p, int k) {
  if (multiplicity == 1) return Certification::Certified;
  const Integer pk = pow(p, static_cast<unsigned>(k));
  if (eisenstein_after_shift(lift, p, pk)) return Certification::Structural;
  if (lift.degree() == 2 && p != 2) {
    // Quadratic: irreducible iff the discriminant is a non-square, decidable
    // when its valuation is visible at this precision.
    Integer d = floor_mod(lift[1] * lift[1] - 4 * lift[0] * lift[2], pk);
    if (d != 0) {
      int v = valuation(d, p);
      if (v < k - 1) {
        if (v % 2 == 1 || legendre(unit_part(d, p), p) == -1) return Certification::Structural;
      }
    }
  }
  return Certification::Unresolved;
}

}  // namespace detail

/// Coprime factorization of f over Z_p to precision p^k: one monic lift per
/// distinct irreducible factor psi of f mod p, lifting psi^m. The leading
/// coefficient of f must be a p-adic unit; the product of the lifts equals
/// f / lc(f) mod p^k. Sorted by (degree, coefficients).
inline std::vector<PadicPoly> hensel_factor(const IntPoly& f, const Integer& p, int k) {
  if (f.degree() < 1) throw std::invalid_argument("hensel_factor: polynomial must be non-constant");
  if (f.lead() % p == 0) throw std::domain_error("hensel_factor: leading coefficient divisible by p");
  const std::int64_t pp = p.convert_to<std::int64_t>();
  ModFactorization mf = factor_mod_p(f, pp);
  std::vector<ModPoly> clusters;
  for (const auto& [g, e] : mf.factors) {
    ModPoly c = ModPoly::one(pp);
    for (int i = 0; i < e; ++i) c = c * g;
    clusters.push_back(c);
  }
  std::vector<IntPoly> lifts = hensel_lift(f, clusters, p, k);
  std::vector<PadicPoly> out;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    PadicPoly pp_{p, k, lifts[i], mf.factors[i].first, mf.factors[i].second, Certification::Unresolved};
    pp_.certification = detail::certify_cluster(lifts[i], pp_.multiplicity, p, k);
    out.push_back(std::move(pp_));
  }
  std::sort(out.begin(), out.end(), [](const PadicPoly& a, const PadicPoly& b) { return a.coeffs < b.coeffs; });
  return out;
}

/// Newton iteration lifting a simple root a0 of h mod p to the unique root mod p^k.
inline Integer lift_simple_root(const IntPoly& h, const Integer& p, const Integer& a0, int k) {
  if (h.eval(a0) % p != 0) throw std::domain_error("lift_simple_root: a0 is not a root mod p");
  const IntPoly dh = h.derivative();
  if (dh.eval(a0) % p == 0) throw std::domain_error("lift_simple_root: root is not simple");
  const Integer target = pow(p, static_cast<unsigned>(k));
  Integer a = floor_mod(a0, p), m = p;
  while (m < target) {
    m = std::min<Integer>(m * m, target);
    Integer inv = inverse_mod(dh.eval(a), m);
    a = floor_mod(a - h.eval(a) * inv, m);
  }
  return floor_mod(a, target);
}

// ---------------------------------------------------------------------------
// Screening mod p.

/// A candidate pair of disjoint sub-multisets of the mod-p factors, each
/// symmetric, of even degree and divisible by t - 1 or t + 1.
struct ScreenPartition {
  std::vector<int> block_a;  ///< multiplicity taken from each mod-p factor
  std::vector<int> block_b;
};

enum class ScreenVerdict { Impossible, NeedsLift };

struct ScreenReport {
  Integer p;
  std::vector<std::pair<ModPoly, int>> factors;  ///< mod-p factorization of f (monic)
  std::vector<ScreenPartition> feasible_partitions;
  ScreenVerdict verdict = ScreenVerdict::Impossible;
};

namespace detail {

/// Monic reciprocal t^deg psi(1/t) / psi(0).
inline ModPoly monic_reciprocal(const ModPoly& psi) { return psi.reciprocal().monic(); }

}  // namespace detail

/// Searches all pairs of disjoint sub-multisets of the irreducible factors of
/// f mod p for two "dangerous" blocks: symmetric under t -> 1/t, of even
/// degree, and vanishing at t = 1 or t = -1.
inline ScreenReport screen_symmetric_factors(const IntPoly& f, const Integer& p) {
  if (p == 2) throw std::invalid_argument("screen_symmetric_factors: p must be odd");
  const std::int64_t pp = p.convert_to<std::int64_t>();
  ScreenReport rep;
  rep.p = p;
  ModFactorization mf = factor_mod_p(f, pp);
  rep.factors = mf.factors;
  const std::size_t n = mf.factors.size();
  std::vector<std::size_t> partner(n);
  std::vector<bool> is_pm1(n);
  for (std::size_t i = 0; i < n; ++i) {
    ModPoly r = detail::monic_reciprocal(mf.factors[i].first);
    partner[i] = n;
    for (std::size_t j = 0; j < n; ++j)
      if (mf.factors[j].first == r) partner[i] = j;
    const ModPoly& g = mf.factors[i].first;
    is_pm1[i] = g.degree() == 1 && (g.eval(1) == 0 || g.eval(pp - 1) == 0);
  }
  auto dangerous = [&](const std::vector<int>& m) {
    int deg = 0;
    bool has_pm1 = false, any = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      any = true;
      deg += m[i] * mf.factors[i].first.degree();
      if (is_pm1[i]) has_pm1 = true;
      if (partner[i] == n || m[partner[i]] != m[i]) return false;
    }
    return any && has_pm1 && deg % 2 == 0;
  };
  // Enumerate block_a, then block_b from what remains, with a <= b in
  // lexicographic order to report unordered pairs once.
  std::vector<int> a(n, 0);
  for (;;) {
    if (dangerous(a)) {
      std::vector<int> b(n, 0);
      for (;;) {
        if (dangerous(b) && !(b < a)) rep.feasible_partitions.push_back({a, b});
        std::size_t i = 0;
        while (i < n && b[i] == mf.factors[i].second - a[i]) b[i++] = 0;
        if (i == n) break;
        ++b[i];
      }
    }
    std::size_t i = 0;
    while (i < n && a[i] == mf.factors[i].second) a[i++] = 0;
    if (i == n) break;
    ++a[i];
  }
  rep.verdict = rep.feasible_partitions.empty() ? ScreenVerdict::Impossible : ScreenVerdict::NeedsLift;
  return rep;
}

// ---------------------------------------------------------------------------
// Newton polygons and Q_p factor degrees.

/// One segment of a Newton polygon of P(x + center): `length` roots with
/// v_p(root - center) = slope, and the residual polynomial's factorization.
struct NewtonSegment {
  Integer center;
  Rational slope;
  int length = 0;
  std::vector<std::int64_t> residual;  ///< over F_p, constant term first
};

/// A Q_p-irreducible factor of P whose roots beta satisfy
/// v_p(beta - center) = valuation (> 0) for the top-level center.
struct LocalFactor {
  int degree = 0;
  Rational valuation;
};

struct LocalAnalysis {
  bool resolved = true;
  std::string reason;
  std::vector<LocalFactor> factors;
  std::vector<NewtonSegment> segments;  ///< every polygon segment examined, in order
};

namespace detail {

struct NewtonContext {
  Integer p;
  int max_shift = 64;  ///< recentring exponents must stay below this precision
  LocalAnalysis* out = nullptr;
};

/// Degrees of the Q_p-irreducible factors of P collecting the roots beta
/// with v(beta - c) > t. Returns false when the polygon data cannot decide.
inline bool cluster_degrees(const IntPoly& P, const Integer& c, const Rational& t, NewtonContext& ctx,
                            std::vector<std::pair<int, Rational>>& degrees) {
  const Integer& p = ctx.p;
  IntPoly Q = P.shift(c);
  int zeros = 0;
  while (Q[static_cast<std::size_t>(zeros)] == 0) ++zeros;
  // An exact root at c (P has a rational root); its valuation is restamped by the caller.
  for (int i = 0; i < zeros; ++i) degrees.emplace_back(1, t + 1);
  Q = Q.strip_t_power();
  struct Pt {
    int i;
    int v;
  };
  std::vector<Pt> pts;
  for (int i = 0; i <= Q.degree(); ++i)
    if (Q[static_cast<std::size_t>(i)] != 0) pts.push_back({i, valuation(Q[static_cast<std::size_t>(i)], p)});
  // Lower convex hull.
  std::vector<Pt> hull;
  for (const auto& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Remove b if it lies on or above segment a-q.
      if (static_cast<long>(b.v - a.v) * (q.i - a.i) >= static_cast<long>(q.v - a.v) * (b.i - a.i)) hull.pop_back();
      else break;
    }
    hull.push_back(q);
  }
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const Pt a = hull[s], b = hull[s + 1];
    Rational slope(Integer(a.v - b.v), Integer(b.i - a.i));
    if (!(slope > t)) continue;
    const long num = numerator(slope).convert_to<long>();
    const long den = denominator(slope).convert_to<long>();
    const int len = b.i - a.i;
    const int e = len / static_cast<int>(den);
    std::vector<std::int64_t> res(static_cast<std::size_t>(e + 1), 0);
    const std::int64_t pp = p.convert_to<std::int64_t>();
    for (int j = 0; j <= e; ++j) {
      const int i = a.i + j * static_cast<int>(den);
      const Integer& q = Q[static_cast<std::size_t>(i)];
      if (q == 0) continue;
      const long target = a.v - j * num;
      if (valuation(q, p) != target) continue;
      Integer u = q / pow(p, static_cast<unsigned>(target));
      res[static_cast<std::size_t>(j)] = floor_mod(u, p).convert_to<std::int64_t>();
    }
    ctx.out->segments.push_back({c, slope, len, res});
    ModFactorization rf = factor_mod_p(ModPoly(pp, res));
    for (const auto& [phi, m] : rf.factors) {
      if (phi.degree() == 1 && phi[0] == 0) continue;  // cannot occur: residual has nonzero constant term
      if (m == 1) {
        degrees.emplace_back(phi.degree() * static_cast<int>(den), slope);
        continue;
      }
      if (den != 1 || phi.degree() != 1) {
        ctx.out->reason = "residual polynomial has a repeated factor of degree " + std::to_string(phi.degree()) +
                          " on a segment of slope " + slope.str();
        return false;
      }
      if (num >= ctx.max_shift) {
        ctx.out->reason = "precision ceiling";
        return false;
      }
      // Recentre at c + r p^num, where r is the repeated residual root.
      Integer r = floor_mod(Integer(-phi[0]), p);
      Integer c2 = c + r * pow(p, static_cast<unsigned>(num));
      std::vector<std::pair<int, Rational>> sub;
      if (!cluster_degrees(P, c2, slope, ctx, sub)) return false;
      int total = 0;
      for (const auto& [d, v] : sub) {
        degrees.emplace_back(d, slope);
        total += d;
      }
      if (total != m) {
        ctx.out->reason = "inconsistent cluster size after recentring";
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// Q_p-irreducible factors of the square-free polynomial P having a root
/// beta with v_p(beta - center) > 0, together with that valuation.
inline LocalAnalysis local_factors_near(const IntPoly& P, const Integer& p, const Integer& center, int max_shift) {
  LocalAnalysis out;
  detail::NewtonContext ctx{p, max_shift, &out};
  std::vector<std::pair<int, Rational>> degrees;
  if (!detail::cluster_degrees(P, center, Rational(0), ctx, degrees)) {
    out.resolved = false;
    return out;
  }
  for (const auto& [d, v] : degrees) out.factors.push_back({d, v});
  return out;
}

/// Degrees of all Q_p-irreducible factors of a square-free P (nullopt when
/// the polygon data cannot decide).
inline std::optional<std::vector<int>> local_factor_degrees(const IntPoly& P, const Integer& p, int max_shift) {
  const std::int64_t pp = p.convert_to<std::int64_t>();
  std::vector<int> out;
  ModFactorization mf = factor_mod_p(ModPoly::from_int(P, pp));
  for (const auto& [psi, m] : mf.factors) {
    if (m == 1) {
      out.push_back(psi.degree());
      continue;
    }
    if (psi.degree() != 1) return std::nullopt;
    LocalAnalysis la = local_factors_near(P, p, floor_mod(Integer(-psi[0]), p), max_shift);
    if (!la.resolved) return std::nullopt;
    int total = 0;
    for (const auto& f : la.factors) {
      out.push_back(f.degree);
      total += f.degree;
    }
    if (total != m) return std::nullopt;
  }
  // Roots of negative valuation: roots near 0 of the reversed polynomial.
  const int missing = P.degree() - ModPoly::from_int(P, pp).degree();
  if (missing > 0) {
    LocalAnalysis la = local_factors_near(P.reciprocal(), p, Integer(0), max_shift);
    if (!la.resolved) return std::nullopt;
    int total = 0;
    for (const auto& f : la.factors) {
      out.push_back(f.degree);
      total += f.degree;
    }
    if (total != missing) return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Precision policy for p-adic work on f: max(8, 2 v_p(Disc(radical f)) + 2).
inline int starting_precision(const IntPoly& f, const Integer& p) {
  IntPoly r = radical(f);
  if (r.degree() < 2) return 8;
  Integer d = discriminant(r);
  return std::max(8, 2 * valuation(d, p) + 2);
}

}  // namespace algconc
