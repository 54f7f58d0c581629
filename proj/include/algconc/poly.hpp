#pragma once

// Dense univariate polynomials over exact coefficient rings.

#include "algconc/core.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <tuple>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace algconc {

/// Polynomial with coefficients stored constant term first. The zero
/// polynomial has no coefficients and degree -1.
template <typename T>
class Poly {
 public:
  using coeff_type = T;

  Poly() = default;
  Poly(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(const T& a, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& lead() const {
    if (c_.empty()) throw std::domain_error("lead of zero polynomial");
    return c_.back();
  }
  T trailing() const { return c_.empty() ? T(0) : c_.front(); }

  template <typename U>
  U eval(const U& x) const {
    U acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
    return Poly(std::move(d));
  }

  /// t^deg * f(1/t).
  Poly reciprocal() const {
    std::vector<T> r(c_.rbegin(), c_.rend());
    return Poly(std::move(r));
  }

  /// Removes the largest power of t dividing f.
  Poly strip_t_power() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return Poly(std::vector<T>(c_.begin() + static_cast<long>(k), c_.end()));
  }

  /// f(x + a).
  Poly shift(const T& a) const {
    std::vector<T> r = c_;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] += a * r[j];
    return Poly(std::move(r));
  }

  template <typename U, typename F>
  Poly<U> map(F f) const {
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f(x));
    return Poly<U>(std::move(out));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t k = a.c_.size(); k-- > 0;)
      if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
    return false;
  }

  /// Human-readable form, constant term first: "1 - 3*t + t^2".
  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      T a = c_[k];
      bool neg = a < 0;
      if (neg) a = -a;
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      if (k == 0 || a != 1) {
        os << a;
        if (k > 0) os << '*';
      }
      if (k >= 1) os << var;
      if (k >= 2) os << '^' << k;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

template <typename T>
Poly<T> pow(Poly<T> base, unsigned e) {
  Poly<T> acc = Poly<T>::constant(T(1));
  while (e) {
    if (e & 1U) acc *= base;
    base *= base;
    e >>= 1U;
  }
  return acc;
}

/// Division with remainder over a field.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    Rational f = r[static_cast<std::size_t>(k)] / b.lead();
    q[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

inline RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

inline RatPoly monic(const RatPoly& a) {
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.lead());
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Extended Euclid over Q: returns (g, s, t) with s a + t b = g, g monic.
inline std::tuple<RatPoly, RatPoly, RatPoly> extended_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0 = RatPoly::constant(1), s1, t0, t1 = RatPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  Rational inv = 1 / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

inline RatPoly to_rational(const IntPoly& f) {
  return f.map<Rational>([](const Integer& x) { return Rational(x); });
}

inline Integer content(const IntPoly& f) {
  Integer g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, c);
  return g;
}

/// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  Integer c = content(f);
  if (f.lead() < 0) c = -c;
  return f.map<Integer>([&](const Integer& x) { return Integer(x / c); });
}

/// Clears denominators and returns the primitive integral associate (positive lead).
inline IntPoly primitive_part(const RatPoly& f) {
  if (f.is_zero()) return IntPoly();
  Integer den = 1;
  for (const auto& c : f.coeffs()) den = lcm(den, denominator(c));
  IntPoly g = f.map<Integer>([&](const Rational& x) { return Integer(numerator(x * Rational(den))); });
  return primitive_part(g);
}

/// Exact division over Z; nullopt when b does not divide a in Z[t].
inline std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide by zero");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db + 1), Integer(0));
  for (int k = a.degree(); k >= db; --k) {
    const Integer& top = r[static_cast<std::size_t>(k)];
    if (top % b.lead() != 0) return std::nullopt;
    Integer f = top / b.lead();
    q[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  for (const auto& x : r)
    if (x != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

/// gcd in Z[t]: primitive, positive leading coefficient.
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  return primitive_part(gcd(to_rational(a), to_rational(b)));
}

/// Sign of f at a rational point.
inline int sign_at(const IntPoly& f, const Rational& x) { return f.eval<Rational>(x).sign(); }

/// Composition f(g).
template <typename T>
Poly<T> compose(const Poly<T>& f, const Poly<T>& g) {
  Poly<T> acc;
  for (int k = f.degree(); k >= 0; --k) acc = acc * g + Poly<T>::constant(f[static_cast<std::size_t>(k)]);
  return acc;
}

}  // namespace algconc
