#pragma once

// Witt classes of diagonal quadratic forms over F_p, Q_p (odd p, through the
// residue maps psi^e and psi^o) and Q_2 (through rank, discriminant and Hasse
// invariant), plus an exhaustive metabolizer search over small F_p forms.

#include "algconc/core.hpp"
#include "algconc/exact_linalg.hpp"
#include "algconc/padic.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace algconc {

/// Class in W(F_p). For odd p the rank parity and the residue character of
/// the discriminant (-1)^{r(r-1)/2} det are complete; for p = 2 only the rank
/// parity is kept.
struct WittFpClass {
  Integer p;
  int rank_parity = 0;
  bool disc_square = true;

  bool is_trivial() const { return rank_parity == 0 && (p == 2 || disc_square); }

  /// 1, 2 or 4.
  int order() const {
    if (is_trivial()) return 1;
    if (p != 2 && rank_parity == 1 && p % 4 == 3) return 4;
    return 2;
  }

  friend bool operator==(const WittFpClass&, const WittFpClass&) = default;
};

/// Witt class over F_p of the diagonal form with the given entries.
inline WittFpClass witt_fp(const std::vector<Integer>& entries, const Integer& p) {
  WittFpClass c;
  c.p = p;
  const std::size_t r = entries.size();
  c.rank_parity = static_cast<int>(r % 2);
  if (p == 2) return c;
  Integer disc = (r * (r - 1) / 2) % 2 ? -1 : 1;
  for (const auto& e : entries) {
    if (e % p == 0) throw std::domain_error("witt_fp: entry vanishes mod p");
    disc = floor_mod(disc * e, p);
  }
  c.disc_square = legendre(disc, p) == 1;
  return c;
}

inline WittFpClass witt_fp(const DiagForm& f, const Integer& p) { return witt_fp(f.entries, p); }

/// Residues of the p-unit entries (even part) and of the cofactors of the
/// entries divisible by p (odd part), reduced into [0, p).
struct PsiSplit {
  std::vector<Integer> even_residues;
  std::vector<Integer> odd_residues;
};

inline PsiSplit psi_split(const DiagForm& f, const Integer& p) {
  if (p == 2) throw std::invalid_argument("psi_split: p must be odd");
  PsiSplit out;
  for (const auto& e : f.entries) {
    if (e == 0) throw std::domain_error("psi_split: zero entry");
    Integer s = squarefree_part(e);
    if (s % p == 0) out.odd_residues.push_back(floor_mod(s / p, p));
    else out.even_residues.push_back(floor_mod(s, p));
  }
  return out;
}

/// Class in W(Q_p), p odd, as the pair (psi^e, psi^o) in W(F_p) x W(F_p).
struct WittQpClass {
  WittFpClass even_part;
  WittFpClass odd_part;

  bool is_trivial() const { return even_part.is_trivial() && odd_part.is_trivial(); }
  int order() const { return std::lcm(even_part.order(), odd_part.order()); }

  friend bool operator==(const WittQpClass&, const WittQpClass&) = default;
};

inline WittQpClass witt_qp(const DiagForm& f, const Integer& p) {
  PsiSplit s = psi_split(f, p);
  return {witt_fp(s.even_residues, p), witt_fp(s.odd_residues, p)};
}

/// For p = 3 mod 4: true iff v_p(detQ) is odd, i.e. the odd residue form has
/// odd rank and the class has order 4.
inline bool order4_local_test(const Rational& detQ, const Integer& p) {
  if (p % 4 != 3) throw std::invalid_argument("order4_local_test: requires p = 3 mod 4");
  if (detQ == 0) throw std::domain_error("order4_local_test: zero determinant");
  return valuation(detQ, p) % 2 != 0;
}

/// Hilbert symbol (a, b)_p for nonzero integers.
inline int hilbert_symbol(const Integer& a, const Integer& b, const Integer& p) {
  if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: zero argument");
  const int alpha = valuation(a, p), beta = valuation(b, p);
  const Integer u = a / pow(p, static_cast<unsigned>(alpha)), v = b / pow(p, static_cast<unsigned>(beta));
  if (p != 2) {
    int s = 1;
    if (alpha % 2 && beta % 2 && (p % 4 == 3)) s = -s;
    if (beta % 2) s *= legendre(u, p);
    if (alpha % 2) s *= legendre(v, p);
    return s;
  }
  auto eps = [](const Integer& x) { return static_cast<int>(floor_mod((x - 1) / 2, 2).convert_to<long>()); };
  auto omega = [](const Integer& x) {
    Integer r = floor_mod(x, 8);
    return static_cast<int>(floor_mod((r * r - 1) / 8, 2).convert_to<long>());
  };
  int e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
  return e % 2 ? -1 : 1;
}

/// Hasse invariant prod_{i<j} (a_i, a_j)_p.
inline int hasse_invariant(const std::vector<Integer>& entries, const Integer& p) {
  int s = 1;
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j) s *= hilbert_symbol(entries[i], entries[j], p);
  return s;
}

/// Complete Witt invariants over Q_p of a diagonal form: pad with hyperbolic
/// planes [1,-1] to rank 0 or 1 mod 8 (which fixes both invariants under
/// further padding by four planes), then record rank parity, the square class
/// of the determinant and the Hasse invariant.
struct LocalWittInvariants {
  int rank_parity = 0;
  Integer det_class;  ///< canonical square-class representative
  int hasse = 1;

  friend bool operator==(const LocalWittInvariants&, const LocalWittInvariants&) = default;
  friend bool operator<(const LocalWittInvariants& a, const LocalWittInvariants& b) {
    return std::tie(a.rank_parity, a.det_class, a.hasse) < std::tie(b.rank_parity, b.det_class, b.hasse);
  }
};

inline LocalWittInvariants local_witt_invariants(std::vector<Integer> entries, const Integer& p) {
  for (const auto& e : entries)
    if (e == 0) throw std::domain_error("local_witt_invariants: zero entry");
  const std::size_t target = entries.size() % 2 ? 1 : 0;
  while (entries.size() % 8 != target) {
    entries.push_back(1);
    entries.push_back(-1);
  }
  LocalWittInvariants w;
  w.rank_parity = static_cast<int>(target);
  Integer det = 1;
  for (const auto& e : entries) det *= e;
  w.det_class = square_class(Rational(det), p).representative();
  w.hasse = hasse_invariant(entries, p);
  return w;
}

/// Class in W(Q_2) = Z/8 + Z/2 + Z/2 with generators [1], [-1,5], [-1,2].
struct WittQ2Class {
  int c1 = 0;  ///< coefficient of [1], mod 8
  int c5 = 0;  ///< coefficient of [-1,5], mod 2
  int c2 = 0;  ///< coefficient of [-1,2], mod 2

  bool is_trivial() const { return c1 == 0 && c5 == 0 && c2 == 0; }
  int order() const {
    int o1 = 8 / std::gcd(c1, 8);
    return std::lcm(o1, (c5 || c2) ? 2 : 1);
  }
  friend bool operator==(const WittQ2Class&, const WittQ2Class&) = default;
};

/// Diagonal form c1 [1] + c5 [-1,5] + c2 [-1,2].
inline std::vector<Integer> witt_q2_representative(const WittQ2Class& c) {
  std::vector<Integer> e;
  for (int i = 0; i < c.c1; ++i) e.push_back(1);
  if (c.c5) e.insert(e.end(), {-1, 5});
  if (c.c2) e.insert(e.end(), {-1, 2});
  return e;
}

/// The conversion table from local invariants to generator coordinates,
/// built from direct sums of the generators. Throws if two combinations
/// share invariants (which would mean the generators are not independent).
inline const std::map<LocalWittInvariants, WittQ2Class>& witt_q2_table() {
  static const std::map<LocalWittInvariants, WittQ2Class> table = [] {
    std::map<LocalWittInvariants, WittQ2Class> t;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          WittQ2Class k{a, b, c};
          auto inv = local_witt_invariants(witt_q2_representative(k), Integer(2));
          if (!t.emplace(inv, k).second) throw std::logic_error("witt_q2_table: generator combinations collide");
        }
    return t;
  }();
  return table;
}

inline WittQ2Class witt_q2(const DiagForm& f) {
  auto inv = local_witt_invariants(f.entries, Integer(2));
  return witt_q2_table().at(inv);
}

/// Order of the class of a diagonal rational form in W(Q_p).
inline int local_witt_order(const DiagForm& f, const Integer& p) {
  return p == 2 ? witt_q2(f).order() : witt_qp(f, p).order();
}

// ---------------------------------------------------------------------------
// Exhaustive metabolizer search over F_p.

namespace detail {

inline bool metabolizer_search(const std::vector<std::int64_t>& d, std::int64_t p, std::size_t need,
                               std::vector<std::vector<std::int64_t>>& basis, std::size_t min_pivot) {
  if (basis.size() == need) return true;
  const std::size_t n = d.size();
  auto form = [&](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s = (s + d[i] * x[i] % p * y[i]) % p;
    return (s + p) % p;
  };
  for (std::size_t piv = min_pivot; piv < n; ++piv) {
    const std::size_t free = n - piv - 1;
    std::int64_t total = 1;
    for (std::size_t i = 0; i < free; ++i) total *= p;
    for (std::int64_t code = 0; code < total; ++code) {
      std::vector<std::int64_t> v(n, 0);
      v[piv] = 1;
      std::int64_t c = code;
      for (std::size_t i = piv + 1; i < n; ++i) {
        v[i] = c % p;
        c /= p;
      }
      if (form(v, v) != 0) continue;
      bool orth = true;
      for (const auto& b : basis)
        if (form(v, b) != 0) {
          orth = false;
          break;
        }
      if (!orth) continue;
      basis.push_back(v);
      if (metabolizer_search(d, p, need, basis, piv + 1)) return true;
      basis.pop_back();
    }
  }
  return false;
}

}  // namespace detail

/// A half-dimensional totally isotropic subspace of the diagonal form over
/// F_p (p odd, entries nonzero mod p), as echelon basis vectors; nullopt if
/// none exists. Exhaustive: intended for rank <= 6 and small p.
inline std::optional<std::vector<std::vector<std::int64_t>>> find_metabolizer(const std::vector<Integer>& entries,
                                                                              const Integer& p) {
  if (entries.size() % 2) throw std::invalid_argument("find_metabolizer: odd rank is never metabolic");
  const std::int64_t pp = p.convert_to<std::int64_t>();
  std::vector<std::int64_t> d;
  for (const auto& e : entries) {
    std::int64_t r = floor_mod(e, p).convert_to<std::int64_t>();
    if (r == 0) throw std::domain_error("find_metabolizer: entry vanishes mod p");
    d.push_back(r);
  }
  std::vector<std::vector<std::int64_t>> basis;
  if (detail::metabolizer_search(d, pp, d.size() / 2, basis, 0)) return basis;
  return std::nullopt;
}

inline bool brute_force_metabolizer(const std::vector<Integer>& entries, const Integer& p) {
  return find_metabolizer(entries, p).has_value();
}

/// Whether the given vectors span a half-dimensional subspace on which the
/// diagonal form vanishes mod p.
inline bool is_metabolizer_mod_p(const std::vector<Integer>& entries, const std::vector<std::vector<Integer>>& vecs,
                                 const Integer& p) {
  const std::size_t n = entries.size();
  if (2 * vecs.size() != n) return false;
  RatMat m(vecs.size(), n);
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    if (vecs[i].size() != n) return false;
    for (std::size_t j = i; j < vecs.size(); ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < n; ++k) s += entries[k] * vecs[i][k] * vecs[j][k];
      if (s % p != 0) return false;
    }
  }
  // Rank mod p by elimination over F_p.
  const std::int64_t pp = p.convert_to<std::int64_t>();
  std::vector<std::vector<std::int64_t>> a;
  for (const auto& v : vecs) {
    std::vector<std::int64_t> row;
    for (const auto& x : v) row.push_back(floor_mod(x, p).convert_to<std::int64_t>());
    a.push_back(row);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    std::int64_t inv = inverse_mod(Integer(a[rank][col]), p).convert_to<std::int64_t>();
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][col] == 0) continue;
      std::int64_t f = a[r][col] * inv % pp;
      for (std::size_t c = 0; c < n; ++c) a[r][c] = ((a[r][c] - f * a[rank][c]) % pp + pp) % pp;
    }
    ++rank;
  }
  return rank == vecs.size();
}

}  // namespace algconc
