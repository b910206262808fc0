#pragma once

// Indefinite binary quadratic forms m x^2 + l x y + k y^2 and their
// correspondence with hyperbolic elements of SL(2, Z).
//
// The group acts on forms by substitution, (f . g)(v) = f(g v). Reduction
// follows Gauss: a form is reduced when 0 < l < sqrt(D) and
// sqrt(D) - l < 2|m| < sqrt(D) + l. All comparisons with sqrt(D) are done on
// s = floor(sqrt(D)), which is exact because D is never a square here.

#include "mti/integer.hpp"
#include "mti/sl2.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mti {

template <Integer Int = BigInt>
struct QuadForm {
  Int m = 0, l = 0, k = 0;

  [[nodiscard]] Int discriminant() const { return l * l - 4 * m * k; }
  [[nodiscard]] Int content() const { return gcd(gcd(m, l), k); }
  [[nodiscard]] Int eval(const Int& x, const Int& y) const { return m * x * x + l * x * y + k * y * y; }

  bool operator==(const QuadForm&) const = default;
  bool operator<(const QuadForm& o) const {
    if (m != o.m) return m < o.m;
    if (l != o.l) return l < o.l;
    return k < o.k;
  }

  template <Integer To>
  [[nodiscard]] QuadForm<To> as() const {
    return {convert<To>(m), convert<To>(l), convert<To>(k)};
  }

  [[nodiscard]] std::string str() const {
    return "(" + to_string(m) + ", " + to_string(l) + ", " + to_string(k) + ")";
  }
};

/// Q_A = b x^2 + (a - d) x y - c y^2, of discriminant Tr(A)^2 - 4.
template <Integer Int>
[[nodiscard]] QuadForm<Int> matrix_to_bqf(const Sl2Matrix<Int>& a) {
  if (!a.is_hyperbolic()) throw std::domain_error("matrix_to_bqf needs |Tr A| > 2, got " + a.str());
  return {a.b(), Int(a.a() - a.d()), Int(-a.c())};
}

/// Inverse correspondence [[(t - l)/2, k], [-m, (t + l)/2]]. Its form is
/// (k, -l, m) = f . S, so the round trip lands in the class of f.
template <Integer Int>
[[nodiscard]] Sl2Matrix<Int> bqf_to_matrix(const QuadForm<Int>& f, const Int& t) {
  if (f.discriminant() != t * t - 4)
    throw std::invalid_argument("discriminant of " + f.str() + " is not t^2 - 4 for t = " + to_string(t));
  // l^2 = t^2 - 4 + 4mk forces l = t mod 2; kept as an explicit check.
  if ((t - f.l) % 2 != 0) throw std::invalid_argument("parity of l differs from parity of t");
  return Sl2Matrix<Int>(Int((t - f.l) / 2), f.k, Int(-f.m), Int((t + f.l) / 2));
}

/// f . g, i.e. v -> f(g v).
template <Integer Int>
[[nodiscard]] QuadForm<Int> substitute(const QuadForm<Int>& f, const Sl2Matrix<Int>& g) {
  const Int &p = g.a(), &q = g.b(), &r = g.c(), &s = g.d();
  return {Int(f.m * p * p + f.l * p * r + f.k * r * r),
          Int(2 * f.m * p * q + f.l * (p * s + q * r) + 2 * f.k * r * s),
          Int(f.m * q * q + f.l * q * s + f.k * s * s)};
}

template <Integer Int>
void require_indefinite(const QuadForm<Int>& f) {
  const Int d = f.discriminant();
  if (d <= 0) throw std::domain_error("form " + f.str() + " is not indefinite");
  if (is_square(d)) throw std::domain_error("form " + f.str() + " has square discriminant");
}

namespace detail {

template <Integer Int>
[[nodiscard]] bool is_reduced_with_root(const QuadForm<Int>& f, const Int& s) {
  const Int am = abs_value(f.m);
  return f.l > 0 && f.l <= s && 2 * am + f.l > s && 2 * am - f.l <= s;
}

/// Normalizing offset r = -l mod 2|k|: in (-|k|, |k|] when |k| > sqrt(D),
/// otherwise the largest value below sqrt(D).
template <Integer Int>
[[nodiscard]] Int rho_offset(const QuadForm<Int>& f, const Int& s) {
  const Int two_c = 2 * abs_value(f.k);
  const Int ac = abs_value(f.k);
  if (ac > s) {
    Int r = mod_floor(Int(-f.l), two_c);
    if (r > ac) r -= two_c;
    return r;
  }
  Int r = mod_floor(Int(-f.l), two_c);
  r += floor_div(Int(s - r), two_c) * two_c;
  return r;
}

}  // namespace detail

template <Integer Int>
[[nodiscard]] bool is_reduced(const QuadForm<Int>& f) {
  require_indefinite(f);
  return detail::is_reduced_with_root(f, isqrt(f.discriminant()));
}

template <Integer Int>
struct RhoStep {
  QuadForm<Int> form;
  Sl2Matrix<Int> step;  // form = input . step
};

/// One Gauss neighbour step rho(m, l, k) = (k, r, (r^2 - D) / (4k)).
template <Integer Int>
[[nodiscard]] RhoStep<Int> rho_step(const QuadForm<Int>& f, const Int& s) {
  if (f.k == 0) throw std::domain_error("rho step on a form with k = 0");
  const Int d = f.discriminant();
  const Int r = detail::rho_offset(f, s);
  const Int shift = (r + f.l) / (2 * f.k);
  QuadForm<Int> next{f.k, r, Int((r * r - d) / (4 * f.k))};
  return {std::move(next), Sl2Matrix<Int>::unchecked(Int(0), Int(-1), Int(1), shift)};
}

template <Integer Int>
[[nodiscard]] QuadForm<Int> rho(const QuadForm<Int>& f) {
  require_indefinite(f);
  return rho_step(f, isqrt(f.discriminant())).form;
}

template <Integer Int>
struct Reduction {
  QuadForm<Int> form;
  Sl2Matrix<Int> witness;  // form = input . witness
};

/// Applies rho until the form is reduced; the witness certifies the equivalence.
template <Integer Int>
[[nodiscard]] Reduction<Int> reduce_with_witness(const QuadForm<Int>& f) {
  require_indefinite(f);
  const Int s = isqrt(f.discriminant());
  Reduction<Int> out{f, Sl2Matrix<Int>()};
  while (!detail::is_reduced_with_root(out.form, s)) {
    auto st = rho_step(out.form, s);
    out.form = std::move(st.form);
    out.witness = out.witness * st.step;
  }
  return out;
}

template <Integer Int>
[[nodiscard]] QuadForm<Int> reduce_indefinite(const QuadForm<Int>& f) {
  return reduce_with_witness(f).form;
}

/// Cycle of reduced forms through f, starting at f.
template <Integer Int>
[[nodiscard]] std::vector<QuadForm<Int>> reduction_cycle(const QuadForm<Int>& f) {
  require_indefinite(f);
  const Int s = isqrt(f.discriminant());
  if (!detail::is_reduced_with_root(f, s)) throw std::invalid_argument("form " + f.str() + " is not reduced");
  std::vector<QuadForm<Int>> cycle{f};
  for (QuadForm<Int> g = rho_step(f, s).form; g != f; g = rho_step(g, s).form) cycle.push_back(g);
  return cycle;
}

}  // namespace mti
