#pragma once

// Tristram-Levine signatures of a Seifert matrix on the unit circle, computed
// exactly at omega = c + i sqrt(1 - c^2) for rational c, and the plateau
// profile along the upper semicircle from omega = 1 to omega = -1.

#include "algconc/core.hpp"
#include "algconc/exact_linalg.hpp"
#include "algconc/matrix.hpp"
#include "algconc/polyalg.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace algconc {

/// sqrt(1 - c^2) as an element of Q(sqrt d).
inline QuadExtScalar unit_circle_sine(const Rational& c) {
  const Rational r = 1 - c * c;
  // r = N / D^2 with N = (den^2 - num^2): sqrt(r) = sqrt(N) / den.
  const Integer num = numerator(c), den = denominator(c);
  const Integer N = den * den - num * num;
  const Integer d = squarefree_part(N);
  const Integer m = boost::multiprecision::sqrt(N / d);
  if (m * m * d != N) throw std::logic_error("unit_circle_sine: square-free split failed");
  const Rational coeff = Rational(m) / Rational(den);
  if (d == 1) return QuadExtScalar(coeff);
  return QuadExtScalar(Rational(0), coeff, d);
}

/// sign((1 - w) V + (1 - conj w) V^t) at w = c + i sqrt(1 - c^2), as half the
/// signature of the real symmetric doubling [[A, -B], [B, A]] of H = A + iB.
/// Throws domain_error when w is a root of the Alexander polynomial.
inline int tl_signature_at(const IntMat& v, const Rational& c) {
  if (!v.is_square()) throw std::invalid_argument("tl_signature_at: matrix must be square");
  if (!(c > -1 && c < 1)) throw std::invalid_argument("tl_signature_at: c must lie in (-1, 1)");
  const std::size_t n = v.rows();
  const QuadExtScalar s = unit_circle_sine(c);
  const IntMat vt = v.transpose();
  Matrix<QuadExtScalar> h(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const QuadExtScalar a((1 - c) * Rational(v(i, j) + vt(i, j)));
      const QuadExtScalar b = s * QuadExtScalar(Rational(vt(i, j) - v(i, j)));
      h(i, j) = a;
      h(i + n, j + n) = a;
      h(i, j + n) = QuadExtScalar(0) - b;
      h(i + n, j) = b;
    }
  }
  const int doubled = signature(h);
  if (doubled % 2 != 0) throw std::logic_error("tl_signature_at: doubled signature is odd");
  return doubled / 2;
}

struct SignatureProfile {
  /// Sample real parts c, in traversal order from omega = 1 towards omega = -1.
  std::vector<Rational> sample_points;
  std::vector<int> plateau_values;
  /// Isolating intervals in x = 2c for the unit-circle roots, in traversal order.
  std::vector<RootInterval> jump_locations;
  std::vector<int> jump_sizes;  ///< plateau_values[i + 1] - plateau_values[i]
  IntPoly trace_polynomial;

  bool all_zero() const {
    for (int s : plateau_values)
      if (s != 0) return false;
    return true;
  }
};

namespace detail {

/// The simplest rational (least denominator, then least absolute numerator)
/// accepted by cmp, where cmp(m) < 0 means m lies left of the target open
/// interval, > 0 right of it, 0 inside. Stern-Brocot descent with galloping.
inline Rational simplest_rational(const std::function<int(const Rational&)>& cmp) {
  if (cmp(Rational(0)) == 0) return Rational(0);
  const int side = cmp(Rational(0)) < 0 ? 1 : -1;  // target is positive or negative
  auto c2 = [&](const Integer& p, const Integer& q) { return side * cmp(Rational(side * p, q)); };
  const Integer limit = pow(Integer(2), 4096u);
  Integer a = 0, b = 1, c = 1, d = 0;  // left a/b, right c/d (1/0 is infinity)
  for (;;) {
    // Move left bound towards the right: mediants (a + k c) / (b + k d), k >= 1.
    auto left_k = [&](const Integer& k) { return c2(a + k * c, b + k * d); };
    if (left_k(1) < 0) {
      Integer hi = 2;
      while (left_k(hi) < 0) {
        hi *= 2;
        if (hi > limit) throw std::logic_error("simplest_rational: inconsistent comparison");
      }
      Integer lo = hi / 2;  // left_k(lo) < 0, left_k(hi) >= 0
      while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        (left_k(mid) < 0 ? lo : hi) = mid;
      }
      if (left_k(hi) == 0) return Rational(side * (a + hi * c), b + hi * d);
      Integer na = a + lo * c, nb = b + lo * d;
      c = a + hi * c, d = b + hi * d;
      a = na, b = nb;
      continue;
    }
    if (left_k(1) == 0) return Rational(side * (a + c), b + d);
    // Mediant is right of the target: move the right bound, (k a + c) / (k b + d).
    auto right_k = [&](const Integer& k) { return c2(k * a + c, k * b + d); };
    Integer hi = 2;
    while (right_k(hi) > 0) {
      hi *= 2;
      if (hi > limit) throw std::logic_error("simplest_rational: inconsistent comparison");
    }
    Integer lo = hi / 2;
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      (right_k(mid) > 0 ? lo : hi) = mid;
    }
    if (right_k(hi) == 0) return Rational(side * (hi * a + c), hi * b + d);
    Integer nc = lo * a + c, nd = lo * b + d;
    a = hi * a + c, b = hi * b + d;
    c = nc, d = nd;
  }
}

/// Square-free part of P with the factors x - 2 and x + 2 removed.
inline IntPoly open_interval_radical(const IntPoly& P) {
  IntPoly q = radical(P);
  for (const IntPoly& lin : {IntPoly{-2, 1}, IntPoly{2, 1}}) {
    if (auto div = exact_divide(q, lin)) q = *div;
  }
  return q;
}

}  // namespace detail

/// Plateau values of the signature function along the upper semicircle.
/// Samples are the simplest rationals x = 2c strictly between consecutive
/// unit-circle roots of the Alexander polynomial.
inline SignatureProfile signature_profile(const IntMat& v) {
  const IntPoly delta = alexander_poly(v);
  if (delta.is_zero()) throw std::domain_error("signature_profile: Alexander polynomial vanishes");
  SignatureProfile out;
  const IntPoly pal = delta.strip_t_power();
  out.trace_polynomial = trace_poly(pal).P;
  const IntPoly q = detail::open_interval_radical(out.trace_polynomial);
  const Rational lo(-2), hi(2);
  const std::vector<RootInterval> roots = q.degree() > 0 ? sturm_isolate(q, lo, hi) : std::vector<RootInterval>{};
  const int k = static_cast<int>(roots.size());
  // Gap j (0-based, ascending in x) lies between root j and root j+1.
  std::vector<Rational> xs;
  for (int j = 0; j <= k; ++j) {
    auto cmp = [&](const Rational& m) {
      if (m <= lo) return -1;
      if (m >= hi) return 1;
      const int below = q.degree() > 0 ? count_real_roots(q, lo, m) : 0;
      // Sturm counts roots in (lo, m], so a root m is root number `below`.
      if (q.degree() > 0 && sign_at(q, m) == 0) return below <= j ? -1 : 1;
      if (below < j) return -1;
      if (below > j) return 1;
      return 0;
    };
    xs.push_back(detail::simplest_rational(cmp));
  }
  for (int j = k; j >= 0; --j) {
    const Rational c = xs[static_cast<std::size_t>(j)] / 2;
    out.sample_points.push_back(c);
    out.plateau_values.push_back(tl_signature_at(v, c));
  }
  for (int j = k - 1; j >= 0; --j) out.jump_locations.push_back(roots[static_cast<std::size_t>(j)]);
  for (std::size_t i = 0; i + 1 < out.plateau_values.size(); ++i)
    out.jump_sizes.push_back(out.plateau_values[i + 1] - out.plateau_values[i]);
  return out;
}

struct InfiniteOrderWitness {
  bool infinite = false;
  std::optional<Rational> c;  ///< a sample with nonzero signature
  int value = 0;
  SignatureProfile profile;
};

/// Infinite order in the real part of the concordance group: some plateau
/// of the signature function is nonzero.
inline InfiniteOrderWitness is_infinite_order(const IntMat& v) {
  InfiniteOrderWitness w;
  w.profile = signature_profile(v);
  for (std::size_t i = 0; i < w.profile.plateau_values.size(); ++i) {
    if (w.profile.plateau_values[i] != 0) {
      w.infinite = true;
      w.c = w.profile.sample_points[i];
      w.value = w.profile.plateau_values[i];
      break;
    }
  }
  return w;
}

}  // namespace algconc
