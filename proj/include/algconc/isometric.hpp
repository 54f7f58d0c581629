#pragma once

// Seifert matrices as isometric structures (M, Q, T): reduction of singular
// matrices to Witt-equivalent nonsingular ones, Q = V + V^t, T = V^{-1} V^t,
// primary decomposition of M under T, and direct metabolizer checks.

#include "algconc/core.hpp"
#include "algconc/exact_linalg.hpp"
#include "algconc/matrix.hpp"
#include "algconc/poly.hpp"
#include "algconc/polyalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace algconc {

/// Throws invalid_argument unless v is square with det(V - V^t) = +-1.
inline void validate_seifert(const IntMat& v) {
  if (!v.is_square()) throw std::invalid_argument("Seifert matrix must be square");
  if (v.rows() % 2 != 0) throw std::invalid_argument("Seifert matrix must have even size");
  const Integer d = det(IntMat(v - v.transpose()));
  if (d != 1 && d != -1) throw std::invalid_argument("det(V - V^t) = " + d.str() + ", expected +-1");
}

namespace detail {

/// Unimodular U with U c = e_last for a primitive integer vector c.
inline IntMat unimodular_to_last(std::vector<Integer> c) {
  const std::size_t n = c.size();
  IntMat u = IntMat::identity(n);
  const std::size_t last = n - 1;
  auto row_op = [&](std::size_t i, const Integer& a11, const Integer& a12, const Integer& a21, const Integer& a22) {
    // rows (i, last) <- [[a11, a12], [a21, a22]] * rows (i, last)
    for (std::size_t j = 0; j < n; ++j) {
      Integer ri = u(i, j), rl = u(last, j);
      u(i, j) = a11 * ri + a12 * rl;
      u(last, j) = a21 * ri + a22 * rl;
    }
    Integer ci = c[i], cl = c[last];
    c[i] = a11 * ci + a12 * cl;
    c[last] = a21 * ci + a22 * cl;
  };
  for (std::size_t i = 0; i < last; ++i) {
    if (c[i] == 0) continue;
    const Integer a = c[i], b = c[last];
    auto [g, x, y] = extended_gcd(a, b);
    row_op(i, b / g, -a / g, x, y);
  }
  if (c[last] == -1) {
    for (std::size_t j = 0; j < n; ++j) u(last, j) = -u(last, j);
    c[last] = 1;
  }
  if (c[last] != 1) throw std::invalid_argument("unimodular_to_last: vector is not primitive");
  return u;
}

inline IntMat integral_inverse(const IntMat& u) {
  RatMat inv = inverse(to_rational(u));
  return inv.map<Integer>([](const Rational& x) {
    if (denominator(x) != 1) throw std::logic_error("integral_inverse: matrix is not unimodular");
    return numerator(x);
  });
}

inline std::vector<Integer> primitive_integral(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, denominator(x));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : v) {
    out.push_back(numerator(x * Rational(l)));
    g = gcd(g, out.back());
  }
  if (g == 0) throw std::invalid_argument("primitive_integral: zero vector");
  for (auto& x : out) x /= g;
  return out;
}

}  // namespace detail

/// One excision: P^t V P = [[B, b1, 0], [b2, b3, 1], [0, 0, 0]] and V ~ B.
struct ReductionStep {
  IntMat transform;  ///< unimodular P
  IntMat reduced;    ///< P^t V P in block form
};

struct ReductionResult {
  IntMat matrix;  ///< nonsingular (or empty) Seifert matrix Witt-equivalent to the input
  std::vector<ReductionStep> steps;
};

/// Repeatedly brings a singular Seifert matrix into block form by integral
/// congruence and drops the last two rows and columns.
inline ReductionResult reduce_to_nonsingular(const IntMat& v) {
  validate_seifert(v);
  ReductionResult res;
  IntMat cur = v;
  while (cur.rows() > 0 && det(cur) == 0) {
    const std::size_t n = cur.rows();
    // z with z^t V = 0: a left kernel vector, made primitive and integral.
    RatMat ker = kernel_basis(to_rational(cur.transpose()));
    std::vector<Rational> zr = ker.column(0);
    std::vector<Integer> z = detail::primitive_integral(zr);
    IntMat p1 = detail::integral_inverse(detail::unimodular_to_last(z));  // p1 e_last = z
    IntMat w = p1.transpose() * cur * p1;
    // Last row is zero; the last column c (c_last = 0) is primitive because
    // W - W^t is unimodular. Move it to e_{n-2} with a change of the first n-1 vectors.
    std::vector<Integer> c(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) c[i] = w(i, n - 1);
    IntMat u = detail::unimodular_to_last(c);  // u c = e_{n-2}
    IntMat p2 = IntMat::identity(n);
    IntMat ut = u.transpose();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) p2(i, j) = ut(i, j);
    IntMat p = p1 * p2;
    IntMat red = p.transpose() * cur * p;
    // Sanity: block shape.
    for (std::size_t j = 0; j < n; ++j)
      if (red(n - 1, j) != 0) throw std::logic_error("reduce_to_nonsingular: last row not cleared");
    for (std::size_t i = 0; i + 2 < n; ++i)
      if (red(i, n - 1) != 0) throw std::logic_error("reduce_to_nonsingular: last column not cleared");
    if (red(n - 2, n - 1) != 1) throw std::logic_error("reduce_to_nonsingular: pivot is not 1");
    IntMat b(n - 2, n - 2);
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = 0; j + 2 < n; ++j) b(i, j) = red(i, j);
    res.steps.push_back({p, red});
    cur = b;
  }
  res.matrix = cur;
  return res;
}

/// (M, Q, T) for a nonsingular Seifert matrix.
struct IsometricStructure {
  IntMat v;
  IntMat q;            ///< V + V^t
  RatMat t;            ///< V^{-1} V^t
  RatPoly charpoly;    ///< det(tI - T), monic; equals Delta_V / det V
  IntPoly alexander;   ///< Delta_V = det(V - t V^t)
};

inline IsometricStructure build_structure(const IntMat& v) {
  if (!v.is_square()) throw std::invalid_argument("build_structure: matrix must be square");
  if (det(v) == 0) throw std::domain_error("build_structure: singular Seifert matrix");
  IsometricStructure s;
  s.v = v;
  s.q = v + v.transpose();
  s.t = inverse(to_rational(v)) * to_rational(IntMat(v.transpose()));
  s.alexander = alexander_poly(v);
  s.charpoly = char_poly_T(v);
  const RatMat qr = to_rational(s.q);
  if (s.t.transpose() * qr * s.t != qr) throw std::logic_error("build_structure: T is not an isometry of Q");
  if (s.charpoly.eval(Rational(1)) == 0 || s.charpoly.eval(Rational(-1)) == 0)
    throw std::domain_error("build_structure: characteristic polynomial vanishes at +-1");
  return s;
}

/// f(T) by Horner's rule.
template <typename Coeff>
RatMat poly_at(const Poly<Coeff>& f, const RatMat& t) {
  const std::size_t n = t.rows();
  RatMat acc(n, n);
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * t;
    const Rational c(f[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < n; ++k) acc(k, k) += c;
  }
  return acc;
}

/// Coordinates of the columns of vecs with respect to the columns of basis.
inline RatMat coordinates_in(const RatMat& basis, const RatMat& vecs) {
  RatMat out(basis.cols(), vecs.cols());
  for (std::size_t j = 0; j < vecs.cols(); ++j) {
    auto sol = solve(basis, vecs.column(j));
    if (!sol) throw std::domain_error("coordinates_in: vector outside the span");
    for (std::size_t i = 0; i < basis.cols(); ++i) out(i, j) = (*sol)[i];
  }
  return out;
}

/// Matrix of T restricted to the T-invariant span of the columns of basis.
inline RatMat restrict_map(const RatMat& t, const RatMat& basis) {
  return coordinates_in(basis, t * basis);
}

/// Characteristic polynomial det(tI - A) of a rational matrix, by interpolation.
inline RatPoly char_poly(const RatMat& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> xs, dd;
  for (std::size_t k = 0; k <= n; ++k) {
    Rational x(static_cast<long>(k));
    xs.push_back(x);
    dd.push_back(det(RatMat(RatMat::identity(n) * x - a)));
  }
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  RatPoly acc = RatPoly::constant(dd[n]);
  for (std::size_t i = n; i-- > 0;) acc = acc * RatPoly{-xs[i], Rational(1)} + RatPoly::constant(dd[i]);
  return acc;
}

/// M^delta = ker delta(T)^k, the delta-primary summand.
struct PrimaryComponent {
  IntPoly delta;
  int exponent = 0;
  RatMat basis;        ///< columns span the summand
  RatMat q_restricted; ///< basis^t Q basis
  std::string field_tag = "Q";

  std::size_t dim() const { return basis.cols(); }
};

struct PrimaryDecomposition {
  std::vector<PrimaryComponent> components;  ///< one per symmetric irreducible factor
  /// Pairs (f, f*) of asymmetric factors: their summands together, and the
  /// summand of one factor from each pair (a metabolizer of the residual).
  RatMat residual_basis;
  RatMat residual_metabolizer;
  std::vector<std::pair<IntPoly, int>> asymmetric_factors;
};

namespace detail {

inline IntPoly monic_reciprocal_int(const IntPoly& f) { return normalize_unit(f.reciprocal()); }

}  // namespace detail

/// Splits M by the factorization of Delta_V. The summand of a factor f^e is
/// Im h(T) with h the complementary cofactor, which coincides with
/// Im(fhat^N(T)) for every N at least the largest exponent.
inline PrimaryDecomposition primary_decomposition(const IsometricStructure& s, const Factorization& fz) {
  const RatPoly prod = fz.product();
  if (prod != to_rational(s.alexander)) throw std::invalid_argument("primary_decomposition: factorization mismatch");
  PrimaryDecomposition out;
  const std::size_t n = s.q.rows();
  const RatMat qr = to_rational(s.q);
  auto cofactor_image = [&](auto keep) {
    IntPoly h = IntPoly::constant(1);
    for (const auto& [f, e] : fz.factors)
      if (!keep(f)) h = h * pow(f, static_cast<unsigned>(e));
    return image_basis(poly_at(h, s.t));
  };
  std::vector<bool> paired(fz.factors.size(), false);
  for (std::size_t i = 0; i < fz.factors.size(); ++i) {
    const auto& [f, e] = fz.factors[i];
    if (is_symmetric(f)) {
      PrimaryComponent c;
      c.delta = f;
      c.exponent = e;
      c.basis = cofactor_image([&](const IntPoly& g) { return g == f; });
      c.q_restricted = c.basis.transpose() * qr * c.basis;
      out.components.push_back(std::move(c));
      continue;
    }
    out.asymmetric_factors.push_back(fz.factors[i]);
  }
  // Residual summand and the metabolizer formed by one factor per pair.
  auto is_asym = [&](const IntPoly& g) { return !is_symmetric(g); };
  out.residual_basis = cofactor_image(is_asym);
  std::vector<IntPoly> chosen;
  for (const auto& [f, e] : out.asymmetric_factors) {
    const IntPoly r = detail::monic_reciprocal_int(f);
    bool partner_chosen = false;
    for (const auto& g : chosen)
      if (g == r) partner_chosen = true;
    if (!partner_chosen) chosen.push_back(normalize_unit(f));
  }
  auto in_chosen = [&](const IntPoly& g) {
    for (const auto& c : chosen)
      if (c == normalize_unit(g)) return true;
    return false;
  };
  out.residual_metabolizer = out.asymmetric_factors.empty() ? RatMat(n, 0) : cofactor_image(in_chosen);
  return out;
}

/// True iff the span of basis has half the dimension of Q, Q vanishes on it,
/// and (if t is given) it is T-invariant.
inline bool verify_metabolizer(const RatMat& q, const RatMat& basis, const RatMat* t = nullptr) {
  if (2 * basis.cols() != q.rows()) return false;
  if (basis.rows() != q.rows()) return false;
  if (rank(basis) != basis.cols()) return false;
  if (!(basis.transpose() * q * basis).is_zero()) return false;
  if (t) {
    if (rank(hconcat(basis, *t * basis)) != basis.cols()) return false;
  }
  return true;
}

/// g(T)^k applied to the g-primary summand when g has exponent 2k: always
/// T-invariant and Q-isotropic (g symmetric), half-dimensional exactly when
/// the summand is balanced. Returns its basis.
inline RatMat component_metabolizer_candidate(const IsometricStructure& s, const PrimaryComponent& c) {
  if (c.exponent % 2 != 0) throw std::invalid_argument("component_metabolizer_candidate: odd exponent");
  const RatMat gk = poly_at(pow(c.delta, static_cast<unsigned>(c.exponent / 2)), s.t);
  if (c.dim() == 0) return RatMat(s.q.rows(), 0);
  return image_basis(gk * c.basis);
}

struct CyclicSquareResult {
  bool slice = false;
  RatMat image;  ///< Im delta(T)
};

/// For Delta_T = delta^2 with delta irreducible: Im delta(T) checked directly.
inline CyclicSquareResult cyclic_square_slice_test(const IsometricStructure& s) {
  Factorization fz = factor_over_Z(s.alexander);
  if (fz.factors.size() != 1 || fz.factors[0].second != 2)
    throw std::invalid_argument("cyclic_square_slice_test: characteristic polynomial is not delta^2");
  CyclicSquareResult r;
  const RatMat img = poly_at(fz.factors[0].first, s.t);
  r.image = rank(img) == 0 ? RatMat(s.q.rows(), 0) : image_basis(img);
  r.slice = verify_metabolizer(to_rational(s.q), r.image, &s.t);
  return r;
}

}  // namespace algconc
