#pragma once

// Exact integer and rational linear algebra: Bareiss determinants, row
// reduction, congruence diagonalization of symmetric forms and signatures,
// including forms with entries in a real quadratic field Q(sqrt d).

#include "algconc/core.hpp"
#include "algconc/matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace algconc {

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer det(const IntMat& m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  int sgn = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && a(i, k) == 0) ++i;
      if (i == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(i, j));
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sgn * a(n - 1, n - 1);
}

inline Rational det(const RatMat& m) {
  if (!m.is_square()) throw std::invalid_argument("det: matrix is not square");
  const std::size_t n = m.rows();
  RatMat a = m;
  Rational d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
  RatMat reduced;
  std::vector<std::size_t> pivots;
};

inline RowEchelon row_echelon(const RatMat& m) {
  RowEchelon out{m, {}};
  RatMat& a = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(piv, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = 0; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

inline std::size_t rank(const RatMat& m) { return row_echelon(m).pivots.size(); }

/// Basis of the column space: the pivot columns of m.
inline RatMat image_basis(const RatMat& m) {
  auto ech = row_echelon(m);
  RatMat out(m.rows(), ech.pivots.size());
  for (std::size_t k = 0; k < ech.pivots.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, k) = m(i, ech.pivots[k]);
  return out;
}

/// Basis (as columns) of the null space {x : m x = 0}.
inline RatMat kernel_basis(const RatMat& m) {
  auto ech = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> cols;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    cols.push_back(std::move(v));
  }
  return RatMat::from_columns(cols, m.cols());
}

inline RatMat inverse(const RatMat& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  auto ech = row_echelon(hconcat(m, RatMat::identity(n)));
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
    throw std::domain_error("inverse: matrix is singular");
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

/// Solves m x = b for a single right-hand side; nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve(const RatMat& m, const std::vector<Rational>& b) {
  RatMat aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto ech = row_echelon(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, m.cols());
  return x;
}

/// An element a + b*sqrt(d) of the real quadratic field Q(sqrt d), d > 0 square-free.
/// d == 0 marks a plain rational that adopts the field of whatever it meets.
class QuadExtScalar {
 public:
  QuadExtScalar() = default;
  QuadExtScalar(int a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExtScalar(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExtScalar(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ <= 0) throw std::invalid_argument("QuadExtScalar: d must be positive");
    if (squarefree_part(d_) != d_) throw std::invalid_argument("QuadExtScalar: d must be square-free");
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
    if (b_ == 0) d_ = 0;
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }

  /// Exact sign of a + b sqrt(d), by comparing a^2 with b^2 d.
  int sign() const {
    const int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
    if (lhs > rhs) return sa;
    if (lhs < rhs) return sb;
    return 0;
  }

  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadExtScalar& operator+=(const QuadExtScalar& o) {
    adopt(o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
  }
  QuadExtScalar& operator-=(const QuadExtScalar& o) {
    adopt(o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
  }
  QuadExtScalar& operator*=(const QuadExtScalar& o) {
    Integer d = adopt(o);
    Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d);
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    normalize();
    return *this;
  }
  QuadExtScalar& operator/=(const QuadExtScalar& o) {
    if (o.is_zero()) throw std::domain_error("QuadExtScalar: division by zero");
    Integer d = adopt(o);
    Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(d);
    QuadExtScalar conj;
    conj.a_ = o.a_ / norm;
    conj.b_ = -o.b_ / norm;
    conj.d_ = o.d_;
    return *this *= conj;
  }

  friend QuadExtScalar operator+(QuadExtScalar x, const QuadExtScalar& y) { return x += y; }
  friend QuadExtScalar operator-(QuadExtScalar x, const QuadExtScalar& y) { return x -= y; }
  friend QuadExtScalar operator*(QuadExtScalar x, const QuadExtScalar& y) { return x *= y; }
  friend QuadExtScalar operator/(QuadExtScalar x, const QuadExtScalar& y) { return x /= y; }
  friend QuadExtScalar operator-(QuadExtScalar x) {
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
  }
  friend bool operator==(const QuadExtScalar& x, const QuadExtScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadExtScalar& x, const QuadExtScalar& y) { return !(x == y); }
  friend std::ostream& operator<<(std::ostream& os, const QuadExtScalar& x) {
    os << x.a_;
    if (x.b_ != 0) os << (x.b_ > 0 ? "+" : "") << x.b_ << "*sqrt(" << x.d_ << ")";
    return os;
  }

 private:
  Integer adopt(const QuadExtScalar& o) {
    if (d_ == 0) d_ = o.d_;
    else if (o.d_ != 0 && o.d_ != d_) throw std::invalid_argument("QuadExtScalar: mixed fields");
    return d_;
  }
  void normalize() {
    if (b_ == 0) d_ = 0;
  }

  Rational a_ = 0;
  Rational b_ = 0;
  Integer d_ = 0;
};

namespace detail {

inline bool scalar_is_zero(const Rational& x) { return x == 0; }
inline bool scalar_is_zero(const QuadExtScalar& x) { return x.is_zero(); }
inline int scalar_sign(const Rational& x) { return x.sign(); }
inline int scalar_sign(const QuadExtScalar& x) { return x.sign(); }

}  // namespace detail

/// Result of symmetric congruence reduction: basis^t * q * basis = diag(diagonal).
template <typename T>
struct SymmetricReduction {
  std::vector<T> diagonal;
  Matrix<T> basis;
  bool singular = false;
};

/// Congruence diagonalization over a field of characteristic 0.
/// Pivot rule: first nonzero diagonal entry at or after the current position;
/// when the remaining diagonal vanishes, add a partner row/column to create one.
template <typename T>
SymmetricReduction<T> reduce_symmetric(const Matrix<T>& q) {
  if (!q.is_symmetric()) throw std::invalid_argument("reduce_symmetric: matrix is not symmetric");
  const std::size_t n = q.rows();
  Matrix<T> a = q;
  Matrix<T> b = Matrix<T>::identity(n);
  SymmetricReduction<T> out;

  auto swap_index = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(i, j), a(k, j));
    for (std::size_t j = 0; j < n; ++j) std::swap(a(j, i), a(j, k));
    for (std::size_t j = 0; j < n; ++j) std::swap(b(j, i), b(j, k));
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && detail::scalar_is_zero(a(piv, piv))) ++piv;
    if (piv == n) {
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = k; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!detail::scalar_is_zero(a(i, j))) {
            off = {i, j};
            break;
          }
      if (!off) {
        for (std::size_t i = k; i < n; ++i) out.diagonal.push_back(T(0));
        out.singular = true;
        break;
      }
      auto [i, j] = *off;
      for (std::size_t c = 0; c < n; ++c) a(i, c) += a(j, c);
      for (std::size_t r = 0; r < n; ++r) a(r, i) += a(r, j);
      for (std::size_t r = 0; r < n; ++r) b(r, i) += b(r, j);
      piv = i;
    }
    swap_index(piv, k);
    const T pivot = a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (detail::scalar_is_zero(a(j, k))) continue;
      T f = a(j, k) / pivot;
      for (std::size_t c = 0; c < n; ++c) a(j, c) -= f * a(k, c);
      for (std::size_t r = 0; r < n; ++r) a(r, j) -= f * a(r, k);
      for (std::size_t r = 0; r < n; ++r) b(r, j) -= f * b(r, k);
    }
    out.diagonal.push_back(pivot);
  }
  out.basis = std::move(b);
  return out;
}

/// Diagonal form with square-free integer entries (each entry taken modulo
/// rational squares).
struct DiagForm {
  std::vector<Integer> entries;

  std::size_t rank() const { return entries.size(); }
  friend bool operator==(const DiagForm&, const DiagForm&) = default;
};

inline DiagForm direct_sum(const DiagForm& a, const DiagForm& b) {
  DiagForm out = a;
  out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
  return out;
}

inline DiagForm negate(DiagForm f) {
  for (auto& e : f.entries) e = -e;
  return f;
}

struct Diagonalization {
  DiagForm form;
  RatMat basis;  ///< primitive integral columns, first nonzero entry positive; basis^t q basis is diagonal
  std::vector<Rational> diagonal;
};

inline Diagonalization diagonalize_congruence(const RatMat& q) {
  if (!q.is_symmetric()) throw std::invalid_argument("diagonalize_congruence: matrix is not symmetric");
  auto red = reduce_symmetric(q);
  if (red.singular) throw std::domain_error("diagonalize_congruence: form is singular");
  const std::size_t n = q.rows();
  RatMat basis = red.basis;
  for (std::size_t j = 0; j < n; ++j) {
    Integer den = 1, num = 0;
    for (std::size_t i = 0; i < n; ++i) den = lcm(den, denominator(basis(i, j)));
    for (std::size_t i = 0; i < n; ++i) num = gcd(num, Integer(numerator(basis(i, j) * Rational(den))));
    Rational scale = Rational(den) / Rational(num);
    for (std::size_t i = 0; i < n; ++i)
      if (basis(i, j) != 0) {
        if (basis(i, j) < 0) scale = -scale;
        break;
      }
    for (std::size_t i = 0; i < n; ++i) basis(i, j) *= scale;
  }
  Diagonalization out;
  RatMat d = basis.transpose() * q * basis;
  for (std::size_t i = 0; i < n; ++i) {
    out.diagonal.push_back(d(i, i));
    out.form.entries.push_back(squarefree_part(d(i, i)));
  }
  out.basis = std::move(basis);
  return out;
}

inline DiagForm diag_form(const IntMat& q) { return diagonalize_congruence(to_rational(q)).form; }

/// Signature (positive minus negative count) of a nonsingular symmetric form.
template <typename T>
int signature(const Matrix<T>& q) {
  auto red = reduce_symmetric(q);
  if (red.singular) throw std::domain_error("signature: form is singular");
  int s = 0;
  for (const auto& x : red.diagonal) s += detail::scalar_sign(x);
  return s;
}

inline int signature(const IntMat& q) { return signature(to_rational(q)); }

}  // namespace algconc
