#pragma once

// Polynomial arithmetic over Z/M and quadratic Hensel lifting of coprime
// factorizations from F_p to Z/p^k.

#include "algconc/core.hpp"
#include "algconc/poly.hpp"
#include "algconc/poly_modp.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace algconc {

/// Coefficients reduced into [0, m).
inline IntPoly reduce_mod(const IntPoly& f, const Integer& m) {
  return f.map<Integer>([&](const Integer& c) { return floor_mod(c, m); });
}

/// Coefficients reduced into the symmetric range (-m/2, m/2].
inline IntPoly symmetric_reduce(const IntPoly& f, const Integer& m) {
  return f.map<Integer>([&](const Integer& c) { return symmetric_mod(c, m); });
}

/// Division with remainder by a polynomial whose leading coefficient is a
/// unit mod m; results reduced into [0, m).
inline std::pair<IntPoly, IntPoly> divmod_mod(const IntPoly& a, const IntPoly& b, const Integer& m) {
  IntPoly bb = reduce_mod(b, m);
  if (bb.is_zero()) throw std::domain_error("divmod_mod: divisor vanishes mod m");
  const Integer li = inverse_mod(bb.lead(), m);
  std::vector<Integer> r = reduce_mod(a, m).coeffs();
  const int db = bb.degree();
  const int da = static_cast<int>(r.size()) - 1;
  if (da < db) return {IntPoly(), IntPoly(std::move(r))};
  std::vector<Integer> q(static_cast<std::size_t>(da - db + 1), Integer(0));
  for (int k = da; k >= db; --k) {
    Integer f = floor_mod(r[static_cast<std::size_t>(k)] * li, m);
    q[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(k - db + j)];
      slot = floor_mod(slot - f * bb[static_cast<std::size_t>(j)], m);
    }
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

inline IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Integer& m) { return reduce_mod(a * b, m); }

/// Multiplies by the inverse of the leading coefficient mod m.
inline IntPoly monic_mod(const IntPoly& f, const Integer& m) {
  IntPoly g = reduce_mod(f, m);
  if (g.is_zero()) return g;
  return reduce_mod(g * inverse_mod(g.lead(), m), m);
}

namespace detail {

/// One quadratic Hensel step: from f = g h, s g + t h = 1 mod m (h monic)
/// to the same identities mod m^2.
struct HenselState {
  IntPoly g, h, s, t;
};

inline HenselState hensel_step(const IntPoly& f, const HenselState& st, const Integer& m) {
  const Integer m2 = m * m;
  IntPoly e = reduce_mod(f - st.g * st.h, m2);
  auto [q, r] = divmod_mod(st.s * e, st.h, m2);
  IntPoly g = reduce_mod(st.g + st.t * e + q * st.g, m2);
  IntPoly h = reduce_mod(st.h + r, m2);
  IntPoly b = reduce_mod(st.s * g + st.t * h - IntPoly::constant(1), m2);
  auto [c, d] = divmod_mod(st.s * b, h, m2);
  IntPoly s = reduce_mod(st.s - d, m2);
  IntPoly t = reduce_mod(st.t - st.t * b - c * g, m2);
  return {g, h, s, t};
}

inline void lift_tree(const IntPoly& f, const std::vector<ModPoly>& parts, std::size_t lo, std::size_t hi,
                      const Integer& p, const Integer& target, std::vector<IntPoly>& out) {
  if (hi - lo == 1) {
    out[lo] = monic_mod(f, target);
    return;
  }
  const std::int64_t pp = p.convert_to<std::int64_t>();
  const std::size_t mid = (lo + hi) / 2;
  ModPoly left = ModPoly::one(pp), right = ModPoly::one(pp);
  for (std::size_t i = lo; i < mid; ++i) left = left * parts[i];
  for (std::size_t i = mid; i < hi; ++i) right = right * parts[i];
  ModPoly fbar = ModPoly::from_int(f, pp);
  left = left.scaled(fbar.lead());
  auto [gg, ss, tt] = extended_gcd(left, right);
  if (gg.degree() != 0) throw std::domain_error("hensel_lift: factors not coprime mod p");
  HenselState st{left.to_int(), right.to_int(), ss.to_int(), tt.to_int()};
  Integer m = p;
  while (m < target) {
    st = hensel_step(f, st, m);
    m *= m;
  }
  lift_tree(reduce_mod(st.g, target), parts, lo, mid, p, target, out);
  lift_tree(reduce_mod(st.h, target), parts, mid, hi, p, target, out);
}

}  // namespace detail

/// Lifts f = lc(f) * prod(parts) mod p, with the parts monic and pairwise
/// coprime mod p, to monic polynomials whose product is lc(f)^-1 f mod p^k.
/// Requires p not dividing lc(f). Coefficients of the result lie in [0, p^k).
inline std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<ModPoly>& parts, const Integer& p, int k) {
  if (parts.empty()) throw std::invalid_argument("hensel_lift: no factors");
  if (k < 1) throw std::invalid_argument("hensel_lift: precision must be positive");
  if (f.lead() % p == 0) throw std::domain_error("hensel_lift: leading coefficient divisible by p");
  const Integer target = pow(p, static_cast<unsigned>(k));
  std::vector<IntPoly> out(parts.size());
  detail::lift_tree(reduce_mod(f, target), parts, 0, parts.size(), p, target, out);
  return out;
}

}  // namespace algconc
