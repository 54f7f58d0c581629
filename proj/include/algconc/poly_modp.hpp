#pragma once

// Polynomials over the prime field F_p (p < 2^31) and their factorization:
// square-free decomposition followed by Berlekamp's algorithm.

#include "algconc/core.hpp"
#include "algconc/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace algconc {

/// Polynomial over F_p, coefficients in [0, p), constant term first.
class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(std::int64_t p, std::vector<std::int64_t> c) : p_(p), c_(std::move(c)) {
    for (auto& x : c_) x = reduce(x);
    trim();
  }

  static ModPoly from_int(const IntPoly& f, std::int64_t p) {
    std::vector<std::int64_t> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(floor_mod(x, Integer(p)).convert_to<std::int64_t>());
    return ModPoly(p, std::move(c));
  }
  static ModPoly one(std::int64_t p) { return ModPoly(p, {1}); }
  static ModPoly x(std::int64_t p) { return ModPoly(p, {0, 1}); }

  std::int64_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  std::int64_t operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }

  /// Lift to Z with coefficients in [0, p).
  IntPoly to_int() const {
    std::vector<Integer> c;
    for (auto x : c_) c.emplace_back(x);
    return IntPoly(std::move(c));
  }

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p_);
  }
  std::int64_t inv(std::int64_t a) const {
    return inverse_mod(Integer(a), Integer(p_)).convert_to<std::int64_t>();
  }

  std::int64_t eval(std::int64_t x) const {
    std::int64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = reduce(mul(acc, reduce(x)) + *it);
    return acc;
  }

  ModPoly monic() const {
    if (c_.empty()) return *this;
    std::int64_t i = inv(lead());
    return scaled(i);
  }
  ModPoly scaled(std::int64_t s) const {
    std::vector<std::int64_t> c = c_;
    for (auto& x : c) x = mul(x, reduce(s));
    return ModPoly(p_, std::move(c));
  }

  ModPoly derivative() const {
    std::vector<std::int64_t> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(mul(c_[k], static_cast<std::int64_t>(k) % p_));
    return ModPoly(p_, std::move(d));
  }

  /// t^deg * f(1/t).
  ModPoly reciprocal() const { return ModPoly(p_, std::vector<std::int64_t>(c_.rbegin(), c_.rend())); }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    std::int64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a[k] + b[k]) % p;
    return ModPoly(p, std::move(c));
  }
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    std::int64_t p = a.p_ ? a.p_ : b.p_;
    std::vector<std::int64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = (a[k] - b[k] + p) % p;
    return ModPoly(p, std::move(c));
  }
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.p_ ? a.p_ : b.p_, {});
    std::vector<std::int64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + a.mul(a.c_[i], b.c_[j])) % a.p_;
    return ModPoly(a.p_, std::move(c));
  }
  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }
  friend bool operator<(const ModPoly& a, const ModPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t k = a.c_.size(); k-- > 0;)
      if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
    return false;
  }

  std::pair<ModPoly, ModPoly> divmod(const ModPoly& b) const {
    if (b.is_zero()) throw std::domain_error("ModPoly: division by zero");
    std::vector<std::int64_t> r = c_;
    const int db = b.degree();
    if (degree() < db) return {ModPoly(p_, {}), *this};
    std::vector<std::int64_t> q(static_cast<std::size_t>(degree() - db + 1), 0);
    const std::int64_t li = inv(b.lead());
    for (int k = degree(); k >= db; --k) {
      std::int64_t f = mul(r[static_cast<std::size_t>(k)], li);
      q[static_cast<std::size_t>(k - db)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= db; ++j) {
        auto& slot = r[static_cast<std::size_t>(k - db + j)];
        slot = reduce(slot - mul(f, b.c_[static_cast<std::size_t>(j)]));
      }
    }
    return {ModPoly(p_, std::move(q)), ModPoly(p_, std::move(r))};
  }
  friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return a.divmod(b).second; }
  friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return a.divmod(b).first; }

  std::string str(const std::string& var = "t") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      if (k == 0 || c_[k] != 1) s += std::to_string(c_[k]) + (k ? "*" : "");
      if (k >= 1) s += var;
      if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
  }

 private:
  std::int64_t reduce(std::int64_t x) const {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::int64_t p_ = 2;
  std::vector<std::int64_t> c_;
};

inline ModPoly gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// (g, s, t) with s a + t b = g monic.
inline std::tuple<ModPoly, ModPoly, ModPoly> extended_gcd(const ModPoly& a, const ModPoly& b) {
  const std::int64_t p = a.modulus();
  ModPoly r0 = a, r1 = b, s0 = ModPoly::one(p), s1(p, {}), t0(p, {}), t1 = ModPoly::one(p);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    ModPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::int64_t li = r0.inv(r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

inline ModPoly powmod(ModPoly base, Integer e, const ModPoly& m) {
  ModPoly acc = ModPoly::one(m.modulus()) % m;
  base = base % m;
  while (e > 0) {
    if (e % 2 == 1) acc = (acc * base) % m;
    base = (base * base) % m;
    e /= 2;
  }
  return acc;
}

/// Irreducible factorization over F_p: unit times monic irreducible factors
/// with multiplicities, sorted by (degree, coefficients).
struct ModFactorization {
  std::int64_t p = 2;
  std::int64_t unit = 1;
  std::vector<std::pair<ModPoly, int>> factors;

  ModPoly product() const {
    ModPoly acc(p, {unit});
    for (const auto& [f, e] : factors)
      for (int k = 0; k < e; ++k) acc = acc * f;
    return acc;
  }
};

namespace detail {

/// Square-free decomposition of a monic polynomial: list of (g_i, i) with
/// f = prod g_i^i and each g_i square-free.
inline std::vector<std::pair<ModPoly, int>> squarefree_decomposition(const ModPoly& f) {
  const std::int64_t p = f.modulus();
  std::vector<std::pair<ModPoly, int>> out;
  if (f.degree() <= 0) return out;
  ModPoly c = gcd(f, f.derivative());
  ModPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    ModPoly y = gcd(w, c);
    ModPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(z.monic(), i);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    // c is a polynomial in t^p; over F_p its p-th root has coefficients c_{kp}.
    std::vector<std::int64_t> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += static_cast<std::size_t>(p)) root.push_back(c.coeffs()[k]);
    for (auto& [g, e] : squarefree_decomposition(ModPoly(p, std::move(root)).monic()))
      out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

/// Berlekamp factorization of a monic square-free polynomial.
inline std::vector<ModPoly> berlekamp(const ModPoly& f) {
  const std::int64_t p = f.modulus();
  const int n = f.degree();
  if (n <= 1) return {f};
  // Row i holds t^(i p) mod f; null space of (Q - I)^T spans the Berlekamp algebra.
  std::vector<std::vector<std::int64_t>> q(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  ModPoly xp = powmod(ModPoly::x(p), Integer(p), f);
  ModPoly cur = ModPoly::one(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j)];
    cur = (cur * xp) % f;
  }
  // Solve v (Q - I) = 0: transpose to columns and row-reduce.
  std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::int64_t v = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1 : 0);
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ((v % p) + p) % p;
    }
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = row;
    while (piv < n && a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(row)]);
    std::int64_t iv = f.inv(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]);
    for (auto& x : a[static_cast<std::size_t>(row)]) x = f.mul(x, iv);
    for (int r = 0; r < n; ++r) {
      if (r == row) continue;
      std::int64_t fac = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (fac == 0) continue;
      for (int c = 0; c < n; ++c) {
        auto& slot = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        slot = ((slot - f.mul(fac, a[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)])) % p + p) % p;
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<ModPoly> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      v[static_cast<std::size_t>(pivot_col[r])] = (p - a[r][static_cast<std::size_t>(free)]) % p;
    basis.emplace_back(p, std::move(v));
  }
  const std::size_t r = basis.size();
  std::vector<ModPoly> factors{f};
  if (r == 1) return factors;

  auto split_with = [&](const ModPoly& g) {
    std::vector<ModPoly> next;
    bool changed = false;
    for (const auto& h : factors) {
      if (h.degree() <= 1) {
        next.push_back(h);
        continue;
      }
      ModPoly d = gcd(h, g % h);
      if (d.degree() > 0 && d.degree() < h.degree()) {
        next.push_back(d);
        next.push_back((h / d).monic());
        changed = true;
      } else {
        next.push_back(h);
      }
    }
    factors = std::move(next);
    return changed;
  };

  if (p <= 4096) {
    for (std::size_t b = 0; b < r && factors.size() < r; ++b) {
      if (basis[b].degree() <= 0) continue;
      for (std::int64_t s = 0; s < p && factors.size() < r; ++s) split_with(basis[b] - ModPoly(p, {s}));
    }
  } else {
    std::mt19937_64 rng(0xbe71e4a9ULL);
    while (factors.size() < r) {
      ModPoly w(p, {});
      for (const auto& b : basis) w = w + b.scaled(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p)));
      if (w.degree() <= 0) continue;
      std::vector<ModPoly> next;
      for (const auto& h : factors) {
        if (h.degree() <= 1) {
          next.push_back(h);
          continue;
        }
        ModPoly g = powmod(w % h, Integer((p - 1) / 2), h) - ModPoly::one(p);
        ModPoly d = gcd(h, g);
        if (d.degree() > 0 && d.degree() < h.degree()) {
          next.push_back(d);
          next.push_back((h / d).monic());
        } else {
          next.push_back(h);
        }
      }
      factors = std::move(next);
    }
  }
  return factors;
}

}  // namespace detail

/// Irreducible factorization of f over F_p.
inline ModFactorization factor_mod_p(const ModPoly& f) {
  if (f.is_zero()) throw std::domain_error("factor_mod_p: zero polynomial");
  ModFactorization out;
  out.p = f.modulus();
  out.unit = f.lead();
  std::vector<std::pair<ModPoly, int>> acc;
  for (const auto& [g, e] : detail::squarefree_decomposition(f.monic()))
    for (const auto& h : detail::berlekamp(g)) acc.emplace_back(h, e);
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& item : acc) {
    if (!out.factors.empty() && out.factors.back().first == item.first) out.factors.back().second += item.second;
    else out.factors.push_back(std::move(item));
  }
  return out;
}

inline ModFactorization factor_mod_p(const IntPoly& f, std::int64_t p) {
  return factor_mod_p(ModPoly::from_int(f, p));
}

}  // namespace algconc
