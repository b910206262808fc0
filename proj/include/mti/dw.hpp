#pragma once

// Untwisted Z/p Dijkgraaf-Witten invariants of mapping tori, the mod-p
// conjugacy classification of SL(2, Z) elements, and the brute-force
// fixed-point counts that the closed formulas are checked against.

#include "mti/intmat.hpp"
#include "mti/modular.hpp"
#include "mti/sl2.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mti {

/// Value p^exponent of Z(M, Z/p) = |Hom(pi_1 M, Z/p)| / p.
struct DwValue {
  BigInt value;
  unsigned exponent = 0;
  std::int64_t p = 2;

  bool operator==(const DwValue&) const = default;
};

[[nodiscard]] inline DwValue make_dw_value(std::int64_t p, unsigned exponent) {
  BigInt v = boost::multiprecision::pow(BigInt(p), exponent);
  return {std::move(v), exponent, p};
}

enum class ClassKind { C1, C2, C3, C4, C5, C6, C7, C8 };

inline constexpr std::array<ClassKind, 8> kAllClassKinds = {ClassKind::C1, ClassKind::C2, ClassKind::C3,
                                                            ClassKind::C4, ClassKind::C5, ClassKind::C6,
                                                            ClassKind::C7, ClassKind::C8};

[[nodiscard]] constexpr std::string_view class_kind_name(ClassKind k) {
  constexpr std::array<std::string_view, 8> names = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"};
  return names[static_cast<std::size_t>(k)];
}

[[nodiscard]] inline ClassKind parse_class_kind(std::string_view name) {
  for (auto k : kAllClassKinds)
    if (class_kind_name(k) == name) return k;
  throw std::invalid_argument("unknown class label '" + std::string(name) + "'");
}

/// Conjugacy-class tag in SL(2, Z/p). For odd p the kinds follow the Frobenius
/// table (C1 identity, C2 minus identity, C3/C4 unipotent, C5/C6 minus
/// unipotent, C7 split semisimple, C8 nonsplit semisimple); for p = 2 only
/// C1 (identity), C2 (order 2) and C3 (order 3) occur.
struct ClassLabel {
  ClassKind kind = ClassKind::C1;
  std::int64_t p = 2;
  std::int64_t trace_mod_p = 0;
  /// For C3..C6: whether the unipotent invariant is a square. For C7/C8:
  /// whether trace^2 - 4 is a square. Absent otherwise.
  std::optional<bool> qr_flag;

  bool operator==(const ClassLabel&) const = default;
};

// ---------------------------------------------------------------------------
// Genus one

/// Smith invariants (A(1), A(2)) of A - Id. A(1) = gcd(a-1, b, c, d-1) and
/// A(2) = |Tr A - 2| / A(1); parabolic A != Id gives A(2) = 0, A = Id gives (0, 0).
template <Integer Int>
[[nodiscard]] std::pair<Int, Int> sl2_snf_entries(const Sl2Matrix<Int>& m) {
  Int a1 = gcd(gcd(Int(m.a() - 1), m.b()), gcd(m.c(), Int(m.d() - 1)));
  if (a1 == 0) return {Int(0), Int(0)};
  Int t2 = m.trace() - 2;
  if (t2 == 0) return {a1, Int(0)};
  Int a2 = abs_value(t2) / a1;
  return {std::move(a1), std::move(a2)};
}

template <Integer Int>
[[nodiscard]] AbelianGroup<Int> genus1_homology(const Sl2Matrix<Int>& m) {
  auto [a1, a2] = sl2_snf_entries(m);
  AbelianGroup<Int> h;
  if (m.is_identity()) {
    h.free_rank = 3;
    return h;
  }
  h.free_rank = (a2 == 0) ? 2 : 1;
  if (a1 > 1) h.torsion.push_back(a1);
  if (a2 > 1) h.torsion.push_back(a2);
  return h;
}

/// Z(M(A), Z/p): p^2 if A = Id mod p, p if A != Id and Tr A = 2 mod p, else 1.
template <Integer Int>
[[nodiscard]] DwValue dw_invariant_sl2(const Sl2Matrix<Int>& m, std::int64_t p) {
  require_prime(p);
  const Mat2Mod r = reduce_mod(m, p);
  if (r.is_identity()) return make_dw_value(p, 2);
  if (r.trace() == 2 % p) return make_dw_value(p, 1);
  return make_dw_value(p, 0);
}

/// Counts linear maps phi: F_p^2 -> F_p with phi(A x) = phi(x) for all x.
[[nodiscard]] inline std::int64_t fixed_point_count_bruteforce(const Mat2Mod& m) {
  const std::int64_t p = m.p;
  require_prime(p);
  if (m.det() != 1 % p) throw std::domain_error("residue matrix does not have determinant 1");
  std::int64_t count = 0;
  // phi = (u, v) as a row vector; phi o A = (u a + v c, u b + v d).
  for (std::int64_t u = 0; u < p; ++u)
    for (std::int64_t v = 0; v < p; ++v) {
      if ((u * m.a + v * m.c) % p == u && (u * m.b + v * m.d) % p == v) ++count;
    }
  return count;
}

namespace detail {

/// Square class of the unipotent N = A - Id (rank one, N^2 = 0): u = det(N e, e)
/// for the first standard basis vector e with N e != 0.
[[nodiscard]] inline std::int64_t unipotent_invariant(const Mat2Mod& m) {
  const std::int64_t p = m.p;
  const std::int64_t n00 = (m.a + p - 1) % p, n01 = m.b, n10 = m.c, n11 = (m.d + p - 1) % p;
  if (n00 != 0 || n10 != 0) return (p - n10) % p;  // e = (1, 0): det([[n00, 1], [n10, 0]]) = -n10
  (void)n11;
  return n01;  // e = (0, 1): det([[n01, 0], [n11, 1]]) = n01
}

}  // namespace detail

/// Odd-p classification of a residue matrix of determinant 1.
[[nodiscard]] inline ClassLabel classify_residue(const Mat2Mod& m) {
  const std::int64_t p = m.p;
  ClassLabel label;
  label.p = p;
  label.trace_mod_p = m.trace();

  if (m.is_identity()) {
    label.kind = ClassKind::C1;
    return label;
  }
  const Mat2Mod neg = m.negated();
  if (neg.is_identity()) {
    label.kind = ClassKind::C2;
    return label;
  }
  if (label.trace_mod_p == 2 % p) {
    const bool square = legendre(detail::unipotent_invariant(m), p) == 1;
    label.kind = square ? ClassKind::C3 : ClassKind::C4;
    label.qr_flag = square;
    return label;
  }
  if (label.trace_mod_p == p - 2) {
    // Anchor the C5/C6 split to the representative [[-1, 1], [0, -1]].
    const Mat2Mod rep{p - 1, 1, 0, p - 1, p};
    const std::int64_t u0 = detail::unipotent_invariant(rep.negated());
    const std::int64_t u = detail::unipotent_invariant(neg);
    const bool same_class = legendre(mulmod(u, u0, p), p) == 1;
    label.kind = same_class ? ClassKind::C5 : ClassKind::C6;
    label.qr_flag = legendre(u, p) == 1;
    return label;
  }
  const std::int64_t t = label.trace_mod_p;
  const std::int64_t disc = ((mulmod(t, t, p) - 4) % p + p) % p;
  const bool split = legendre(disc, p) == 1;
  label.kind = split ? ClassKind::C7 : ClassKind::C8;
  label.qr_flag = split;
  return label;
}

template <Integer Int>
[[nodiscard]] ClassLabel classify_mod_p(const Sl2Matrix<Int>& m, std::int64_t p) {
  require_prime(p);
  if (p == 2) throw std::invalid_argument("classify_mod_p expects an odd prime; use classify_mod_2");
  return classify_residue(reduce_mod(m, p));
}

/// SL(2, Z/2) ~ S_3: C1 = {Id}, C2 = {T, S, TST} (order 2), C3 = {TS, -ST^-1} (order 3).
[[nodiscard]] inline ClassLabel classify_residue_mod_2(const Mat2Mod& r) {
  ClassLabel label;
  label.p = 2;
  label.trace_mod_p = r.trace();
  if (r.is_identity()) label.kind = ClassKind::C1;
  else if (label.trace_mod_p == 0) label.kind = ClassKind::C2;
  else label.kind = ClassKind::C3;
  return label;
}

template <Integer Int>
[[nodiscard]] ClassLabel classify_mod_2(const Sl2Matrix<Int>& m) {
  return classify_residue_mod_2(reduce_mod(m, 2));
}

template <Integer Int>
[[nodiscard]] DwValue dw_invariant_sl2_p2(const Sl2Matrix<Int>& m) {
  switch (classify_mod_2(m).kind) {
    case ClassKind::C1:
      return make_dw_value(2, 2);
    case ClassKind::C2:
      return make_dw_value(2, 1);
    default:
      return make_dw_value(2, 0);
  }
}

/// Number of closed geodesics on X(2) lying over the geodesic of A on X(1).
template <Integer Int>
[[nodiscard]] int geodesic_pullback_splitting(const Sl2Matrix<Int>& m) {
  if (!m.is_hyperbolic()) throw std::domain_error("geodesic splitting needs |Tr A| > 2");
  switch (classify_mod_2(m).kind) {
    case ClassKind::C1:
      return 6;
    case ClassKind::C2:
      return 3;
    default:
      return 2;
  }
}

// ---------------------------------------------------------------------------
// Arbitrary genus

/// Z(M(f), Z/p) = p^(2g - rank_p(fhat - Id)).
template <Integer Int>
[[nodiscard]] DwValue dw_invariant_genus_g(const IntMatrix<Int>& fhat, std::int64_t p,
                                           SymplecticCheck check = SymplecticCheck::enforce) {
  const std::size_t g = require_symplectic(fhat, check);
  require_prime(p);
  const std::size_t rank = rank_mod_p(fhat - IntMatrix<Int>::identity(2 * g), p);
  return make_dw_value(p, static_cast<unsigned>(2 * g - rank));
}

/// Same invariant read off the Smith form: #{i : p | A(i)} + (2g - N), zeros counted as divisible.
template <Integer Int>
[[nodiscard]] DwValue dw_invariant_genus_g_via_snf(const IntMatrix<Int>& fhat, std::int64_t p,
                                                   SymplecticCheck check = SymplecticCheck::enforce) {
  const std::size_t g = require_symplectic(fhat, check);
  require_prime(p);
  unsigned exponent = 0;
  for (const auto& a : smith_normal_form(fhat - IntMatrix<Int>::identity(2 * g)).diag)
    if (a == 0 || a % p == 0) ++exponent;
  return make_dw_value(p, exponent);
}

inline constexpr std::int64_t kFixedPointLoopBound = 1'000'000;

/// Fixed points of fhat mod p acting on Hom((Z/p)^2g, Z/p) by precomposition,
/// i.e. the trace of the induced permutation representation.
template <Integer Int>
[[nodiscard]] std::int64_t fixed_point_count_genus_g(const IntMatrix<Int>& fhat, std::size_t g, std::int64_t p) {
  require_prime(p);
  const std::size_t n = 2 * g;
  if (fhat.rows() != n || fhat.cols() != n) throw std::invalid_argument("expected a 2g x 2g matrix");
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= p;
    if (total > kFixedPointLoopBound) throw std::invalid_argument("p^(2g) exceeds the exhaustive loop bound");
  }
  std::vector<std::int64_t> f(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f[i * n + j] = residue(fhat(i, j), p);

  std::vector<std::int64_t> phi(n, 0);
  std::int64_t count = 0;
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = rest % p;
      rest /= p;
    }
    bool fixed = true;
    for (std::size_t j = 0; j < n && fixed; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += phi[i] * f[i * n + j];
      fixed = (s % p) == phi[j];
    }
    if (fixed) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Census of SL(2, F_p)

struct ClassCensusRow {
  ClassKind kind = ClassKind::C1;
  std::size_t class_count = 0;
  std::size_t class_size = 0;
  std::size_t element_count = 0;
};

inline constexpr std::int64_t kClassCensusMaxPrime = 13;

/// Classifies every element of SL(2, F_p). Semisimple kinds are split into
/// classes by trace; the row records the (uniform) class size.
[[nodiscard]] inline std::vector<ClassCensusRow> slp_class_census(std::int64_t p) {
  if (p < 3 || p > kClassCensusMaxPrime || !is_prime(p))
    throw std::invalid_argument("slp_class_census expects an odd prime <= 13");

  std::array<std::map<std::int64_t, std::size_t>, 8> by_trace;
  auto record = [&](const Mat2Mod& m) {
    const ClassLabel label = classify_residue(m);
    ++by_trace[static_cast<std::size_t>(label.kind)][label.trace_mod_p];
  };
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      for (std::int64_t c = 0; c < p; ++c) {
        if (a != 0) {
          const std::int64_t d = mulmod((1 + b * c) % p, invmod(a, p), p);
          record({a, b, c, d, p});
        } else if ((b * c) % p == p - 1) {
          for (std::int64_t d = 0; d < p; ++d) record({a, b, c, d, p});
        }
      }

  std::vector<ClassCensusRow> rows;
  for (auto kind : kAllClassKinds) {
    const auto& traces = by_trace[static_cast<std::size_t>(kind)];
    ClassCensusRow row;
    row.kind = kind;
    const bool semisimple = kind == ClassKind::C7 || kind == ClassKind::C8;
    for (const auto& [trace, n] : traces) {
      row.element_count += n;
      if (row.class_size != 0 && semisimple && row.class_size != n)
        throw std::logic_error("non-uniform class sizes within a kind");
      if (semisimple) row.class_size = n;
    }
    if (semisimple) {
      row.class_count = traces.size();
    } else {
      row.class_count = row.element_count > 0 ? 1 : 0;
      row.class_size = row.element_count;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mti
