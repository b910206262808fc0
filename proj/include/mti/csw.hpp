#pragma once

// SU(2) Chern-Simons-Witten invariants of genus-one mapping tori at level k:
// the quadratic Gauss-sum formula and, independently, the trace of the level-k
// representation of SL(2, Z) built from the S and T matrices.
//
// Gauss-sum phases are exact: each exponent is reduced in integers modulo its
// denominator and then looked up in a table of roots of unity.

#include "mti/intmat.hpp"
#include "mti/sl2.hpp"

#include <Eigen/Dense>
#include <boost/math/constants/constants.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mti {

// ---------------------------------------------------------------------------
// Roots of unity and coset representatives

/// e^{2 pi i j / n} for 0 <= j < n.
class RootOfUnityTable {
 public:
  explicit RootOfUnityTable(std::int64_t n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("root of unity order must be positive");
    const long double two_pi = 2.0L * boost::math::constants::pi<long double>();
    roots_.reserve(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
      const long double angle = two_pi * static_cast<long double>(j) / static_cast<long double>(n);
      roots_.emplace_back(std::cos(angle), std::sin(angle));
    }
  }

  [[nodiscard]] std::int64_t order() const { return n_; }

  /// e^{2 pi i x / n} for any integer x.
  template <Integer Int>
  [[nodiscard]] std::complex<long double> operator()(const Int& x) const {
    return roots_[static_cast<std::size_t>(residue(x, n_))];
  }

 private:
  std::int64_t n_;
  std::vector<std::complex<long double>> roots_;
};

/// |det M| vectors, one in each class of Z^2 / M Z^2: P^-1 (i, j) with P M Q = diag(d1, d2).
template <Integer Int>
[[nodiscard]] std::vector<std::array<Int, 2>> coset_reps(const IntMatrix<Int>& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("coset_reps expects a 2 x 2 matrix");
  if (determinant(m) == 0) throw std::domain_error("coset_reps of a singular matrix");
  const auto snf = smith_normal_form(m);
  const auto& p = snf.left;
  // P is unimodular: P^-1 = adj(P) / det(P).
  const Int det_p = p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
  const Int i00 = p(1, 1) * det_p, i01 = -p(0, 1) * det_p, i10 = -p(1, 0) * det_p, i11 = p(0, 0) * det_p;
  std::vector<std::array<Int, 2>> reps;
  for (Int i = 0; i < snf.diag[0]; ++i)
    for (Int j = 0; j < snf.diag[1]; ++j) reps.push_back({Int(i00 * i + i01 * j), Int(i10 * i + i11 * j)});
  return reps;
}

// ---------------------------------------------------------------------------
// Gauss sums

/// Conventions for the Gauss-sum formula
///   sign(t)/2 [ |t-2|^{-1/2} sum_{Z^2/(A-Id)} e(r P(v)/(t-2)) + s |t+2|^{-1/2} sum_{Z^2/(-A-Id)} e(r P(v)/(t+2)) ].
struct GaussSumConvention {
  bool shift_level = true;            // r = k + 2, otherwise r = k
  bool coset_compatible_form = true;  // P(x, y) = Q_A(y, x), otherwise Q_A(x, y)
  int relative_sign = -1;             // s
};

/// The convention whose modulus equals |Tr rho_k(A)| and which is constant on cosets.
inline constexpr GaussSumConvention kModularDataConvention{true, true, -1};
/// Level k, Q_A(x, y) and a plus sign, taken literally.
inline constexpr GaussSumConvention kPrintedConvention{false, false, +1};

/// N(k) = 8(k + 2).
[[nodiscard]] constexpr std::int64_t csw_level_modulus(std::int64_t k) { return 8 * (k + 2); }

/// The quadratic form evaluated in the Gauss sum.
template <Integer Int>
[[nodiscard]] Int gauss_form(const Sl2Matrix<Int>& a, const Int& x, const Int& y, bool coset_compatible) {
  const Int& u = coset_compatible ? y : x;
  const Int& v = coset_compatible ? x : y;
  return a.b() * u * u + (a.a() - a.d()) * u * v - a.c() * v * v;
}

/// sum over Z^2 / (sign A - Id) of e(r P(v) / den), den = t - 2 sign.
template <Integer Int>
[[nodiscard]] std::complex<long double> gauss_partial_sum(const Sl2Matrix<Int>& a, int sign, const Int& r,
                                                          bool coset_compatible) {
  const Int den = a.trace() - 2 * sign;
  const Int n = abs_value(den);
  const RootOfUnityTable roots(to_i64(n));
  const Sl2Matrix<Int> sa = sign > 0 ? a : -a;
  std::complex<long double> sum = 0;
  for (const auto& v : coset_reps(sa.minus_identity())) {
    Int num = r * gauss_form(a, v[0], v[1], coset_compatible);
    if (den < 0) num = -num;
    sum += roots(mod_floor(num, n));
  }
  return sum;
}

template <Integer Int>
[[nodiscard]] std::complex<double> csw_invariant(const Sl2Matrix<Int>& a, std::int64_t k,
                                                 const GaussSumConvention& conv = kModularDataConvention) {
  if (!a.is_hyperbolic()) throw std::domain_error("csw_invariant needs |Tr A| > 2");
  if (k < 1) throw std::invalid_argument("level must be positive");
  const Int r = conv.shift_level ? Int(k + 2) : Int(k);
  const Int t = a.trace();
  const long double minus = std::sqrt(static_cast<long double>(to_i64(abs_value(Int(t - 2)))));
  const long double plus = std::sqrt(static_cast<long double>(to_i64(abs_value(Int(t + 2)))));
  const auto s1 = gauss_partial_sum(a, +1, r, conv.coset_compatible_form) / minus;
  const auto s2 = gauss_partial_sum(a, -1, r, conv.coset_compatible_form) / plus;
  const long double sgn = t > 0 ? 0.5L : -0.5L;
  const std::complex<long double> z = sgn * (s1 + static_cast<long double>(conv.relative_sign) * s2);
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// ---------------------------------------------------------------------------
// Modular data and words

struct ModularData {
  std::int64_t k = 1;
  Eigen::MatrixXcd s;
  Eigen::MatrixXcd t;  // diagonal
};

/// S_ab = sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2)), T_aa = exp(2 pi i ((a+1)^2 / (4(k+2)) - 1/8)).
[[nodiscard]] inline ModularData su2_modular_data(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("level must be positive");
  const std::int64_t n = k + 2, dim = k + 1;
  const RootOfUnityTable roots(csw_level_modulus(k));
  const double pi = boost::math::constants::pi<double>();
  ModularData md{k, Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim)};
  for (std::int64_t a = 0; a < dim; ++a) {
    for (std::int64_t b = 0; b < dim; ++b)
      md.s(a, b) = std::sqrt(2.0 / double(n)) * std::sin(pi * double((a + 1) * (b + 1)) / double(n));
    // (a+1)^2 / (4n) - 1/8 = (2 (a+1)^2 - n) / (8n)
    const auto z = roots((2 * (a + 1) * (a + 1) - n));
    md.t(a, a) = {static_cast<double>(z.real()), static_cast<double>(z.imag())};
  }
  return md;
}

enum class Generator { S, T };

template <Integer Int = BigInt>
struct WordLetter {
  Generator gen = Generator::T;
  Int power = 1;
  bool operator==(const WordLetter&) const = default;
};

/// A = product of the letters, left to right, with S = [[0, 1], [-1, 0]] and T = [[1, 1], [0, 1]].
template <Integer Int>
[[nodiscard]] std::vector<WordLetter<Int>> word_in_generators(Sl2Matrix<Int> a) {
  std::vector<WordLetter<Int>> word;
  const auto s_inv = generator_s<Int>().inverse();
  while (a.c() != 0) {
    const Int q = floor_div(a.a(), a.c());
    if (q != 0) {
      a = Sl2Matrix<Int>::unchecked(Int(a.a() - q * a.c()), Int(a.b() - q * a.d()), a.c(), a.d());
      word.push_back({Generator::T, q});
    }
    a = s_inv * a;
    word.push_back({Generator::S, Int(1)});
  }
  // a = +-T^n
  if (a.a() == -1) word.push_back({Generator::S, Int(2)});
  const Int n = a.a() * a.b();
  if (n != 0 || word.empty()) word.push_back({Generator::T, n});
  return word;
}

template <Integer Int>
[[nodiscard]] Sl2Matrix<Int> word_product(const std::vector<WordLetter<Int>>& word) {
  Sl2Matrix<Int> m;
  for (const auto& letter : word) {
    if (letter.gen == Generator::T) {
      m = m * Sl2Matrix<Int>::unchecked(Int(1), letter.power, Int(0), Int(1));
    } else {
      auto s = generator_s<Int>();
      Int e = mod_floor(letter.power, Int(4));
      for (; e > 0; --e) m = m * s;
    }
  }
  return m;
}

template <Integer Int>
[[nodiscard]] std::string word_string(const std::vector<WordLetter<Int>>& word) {
  std::string out;
  for (const auto& letter : word) {
    if (!out.empty()) out += ' ';
    out += letter.gen == Generator::S ? "S" : "T";
    if (letter.power != 1) out += "^" + to_string(letter.power);
  }
  return out;
}

/// rho_k(A) for the word of A.
template <Integer Int>
[[nodiscard]] Eigen::MatrixXcd rep_matrix(const Sl2Matrix<Int>& a, const ModularData& md) {
  const std::int64_t k = md.k, n = k + 2, dim = k + 1;
  const RootOfUnityTable roots(csw_level_modulus(k));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& letter : word_in_generators(a)) {
    if (letter.gen == Generator::T) {
      for (std::int64_t j = 0; j < dim; ++j) {
        const auto z = roots(Int(letter.power * Int(2 * (j + 1) * (j + 1) - n)));
        m.col(j) *= std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
      }
    } else {
      for (Int e = mod_floor(letter.power, Int(4)); e > 0; --e) m = m * md.s;
    }
  }
  return m;
}

template <Integer Int>
[[nodiscard]] std::complex<double> rep_trace(const Sl2Matrix<Int>& a, std::int64_t k) {
  if (!a.is_hyperbolic()) throw std::domain_error("rep_trace needs |Tr A| > 2");
  return rep_matrix(a, su2_modular_data(k)).trace();
}

/// Hyperbolic matrices congruent to A modulo n: A + n E with small E and
/// determinant one, then A [[1, n], [0, 1]] and [[1, 0], [n, 1]] A.
template <Integer Int>
[[nodiscard]] std::vector<Sl2Matrix<Int>> congruent_partners(const Sl2Matrix<Int>& a, std::int64_t n,
                                                             std::size_t limit = 4) {
  std::vector<Sl2Matrix<Int>> out;
  for (int e0 = -2; e0 <= 2 && out.size() < limit; ++e0)
    for (int e1 = -2; e1 <= 2 && out.size() < limit; ++e1)
      for (int e2 = -2; e2 <= 2 && out.size() < limit; ++e2)
        for (int e3 = -2; e3 <= 2 && out.size() < limit; ++e3) {
          if (e0 == 0 && e1 == 0 && e2 == 0 && e3 == 0) continue;
          const Int p = a.a() + n * e0, q = a.b() + n * e1, r = a.c() + n * e2, s = a.d() + n * e3;
          if (p * s - q * r != 1) continue;
          auto b = Sl2Matrix<Int>::unchecked(p, q, r, s);
          if (b.is_hyperbolic()) out.push_back(b);
        }
  const auto tn = Sl2Matrix<Int>::unchecked(Int(1), Int(n), Int(0), Int(1));
  const auto ln = Sl2Matrix<Int>::unchecked(Int(1), Int(0), Int(n), Int(1));
  for (const auto& b : {a * tn, ln * a})
    if (b.is_hyperbolic() && out.size() < limit + 2) out.push_back(b);
  return out;
}

}  // namespace mti
