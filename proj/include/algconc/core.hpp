#pragma once

// Exact number types and small number-theory helpers shared by every module.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace algconc {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& x) { return x.sign(); }

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// (g, x, y) with g = gcd(a, b) >= 0 and x a + y b = g.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r, r = tmp;
    tmp = old_s - q * s;
    old_s = s, s = tmp;
    tmp = old_t - q * t;
    old_t = t, t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline Integer pow(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

/// Least non-negative residue of a modulo m (m > 0).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Residue of a modulo m in the symmetric range (-m/2, m/2].
inline Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = floor_mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer old_r = floor_mod(a, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("inverse_mod: element is not invertible");
  return floor_mod(old_s, m);
}

inline Integer pow_mod(Integer base, Integer exponent, const Integer& m) {
  return boost::multiprecision::powm(floor_mod(base, m), exponent, m);
}

/// p-adic valuation of a nonzero integer.
inline int valuation(Integer x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  return valuation(numerator(x), p) - valuation(denominator(x), p);
}

/// Strips every factor p from x (x != 0).
inline Integer unit_part(Integer x, const Integer& p) {
  if (x == 0) throw std::domain_error("unit_part of zero");
  while (x % p == 0) x /= p;
  return x;
}

inline bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int q : small) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  return boost::multiprecision::miller_rabin_test(n, 25);
}

namespace detail {

inline Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(0x5eedULL);
  for (;;) {
    Integer y = Integer(rng()) % n, c = Integer(rng()) % n, m = 64;
    Integer g = 1, r = 1, q = 1, x, ys;
    auto f = [&](const Integer& v) { return (v * v + c) % n; };
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = f(y);
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (Integer i = 0; i < m && i < r - k; ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(Integer n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0) as prime -> exponent.
inline std::map<Integer, int> factorize(Integer n) {
  if (n == 0) throw std::domain_error("factorize(0)");
  n = abs(n);
  std::map<Integer, int> out;
  for (int q = 2; q < 2000 && Integer(q) * q <= n; ++q) {
    while (n % q == 0) {
      ++out[Integer(q)];
      n /= q;
    }
  }
  if (n > 1) detail::factor_into(n, out);
  return out;
}

inline std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

/// Signed square-free part: n = s * k^2 with s square-free, sign(s) = sign(n).
inline Integer squarefree_part(const Integer& n) {
  if (n == 0) throw std::domain_error("squarefree_part(0)");
  Integer s = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n))
    if (e % 2 == 1) s *= p;
  return s;
}

/// Square-free representative of the square class of a nonzero rational a/b,
/// taken as the square-free part of a*b.
inline Integer squarefree_part(const Rational& r) {
  return squarefree_part(Integer(numerator(r) * denominator(r)));
}

/// Legendre symbol (a/p) for an odd prime p: 0, 1 or -1.
inline int legendre(const Integer& a, const Integer& p) {
  Integer r = floor_mod(a, p);
  if (r == 0) return 0;
  Integer e = pow_mod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

}  // namespace algconc
