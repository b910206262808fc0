#pragma once

// The modular lambda function lambda = theta_2^4 / theta_3^4, its behaviour
// under SL(2, Z) through the anharmonic group, and the lambda-based formula
// for Z(M(A), Z/2) evaluated at zeta_3.

#include "mti/dw.hpp"
#include "mti/sl2.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mti {

using Complex = std::complex<double>;

/// Point of the upper half plane.
class UpperHalfPoint {
 public:
  UpperHalfPoint(double re, double im) : z_(re, im) {
    if (!(im > 0.0)) throw std::domain_error("point is not in the upper half plane");
  }
  explicit UpperHalfPoint(Complex z) : UpperHalfPoint(z.real(), z.imag()) {}

  [[nodiscard]] Complex z() const { return z_; }
  [[nodiscard]] double re() const { return z_.real(); }
  [[nodiscard]] double im() const { return z_.imag(); }

 private:
  Complex z_;
};

/// zeta_3 = e^{2 pi i / 3}.
[[nodiscard]] inline UpperHalfPoint zeta3() { return {-0.5, std::sqrt(3.0) / 2.0}; }

template <class Real>
struct ComplexOf {
  using type = std::complex<Real>;
};
template <>
struct ComplexOf<boost::multiprecision::cpp_bin_float_quad> {
  using type = boost::multiprecision::cpp_complex_quad;
};

template <class Real>
struct ThetaConstants {
  using C = typename ComplexOf<Real>::type;
  C theta2, theta3, theta4;
};

inline constexpr double kThetaMinImaginary = 0.05;
inline constexpr double kThetaTermCutoff = 1e-30;

/// theta_2, theta_3, theta_4 at nome q = e^{i pi tau}.
template <class Real = double>
[[nodiscard]] ThetaConstants<Real> theta_constants(const Real& re, const Real& im) {
  using C = typename ComplexOf<Real>::type;
  using std::abs;
  using std::exp;
  if (!(im >= Real(kThetaMinImaginary))) throw std::domain_error("theta constants need Im(tau) >= 0.05");
  const Real pi = boost::math::constants::pi<Real>();
  const C tau(re, im);
  const C ipi(Real(0), pi);
  const C q = exp(ipi * tau);
  const C q2 = q * q;
  const Real cutoff(kThetaTermCutoff);

  // q^(n^2) for n >= 1, stepping by q^(2n+1).
  C sum3(Real(1)), sum4(Real(1));
  C term = q, step = q * q2;
  for (int n = 1; abs(term) >= cutoff; ++n) {
    sum3 += Real(2) * term;
    sum4 += (n % 2 == 0 ? Real(2) : Real(-2)) * term;
    term *= step;
    step *= q2;
  }
  // q^(1/4) sum_{n >= 0} q^(n(n+1)), stepping by q^(2(n+1)).
  C sum2(Real(0));
  term = C(Real(1));
  step = q2;
  while (abs(term) >= cutoff) {
    sum2 += term;
    term *= step;
    step *= q2;
  }
  const C quarter = exp(ipi * tau / Real(4));
  return {Real(2) * quarter * sum2, sum3, sum4};
}

[[nodiscard]] inline ThetaConstants<double> theta_constants(const UpperHalfPoint& tau) {
  return theta_constants<double>(tau.re(), tau.im());
}

// ---------------------------------------------------------------------------
// SL(2, Z) action and the anharmonic group

template <Integer Int>
[[nodiscard]] double to_double(const Int& x) {
  if constexpr (std::same_as<Int, std::int64_t>) return static_cast<double>(x);
  else return x.template convert_to<double>();
}

/// (a tau + b) / (c tau + d).
template <Integer Int>
[[nodiscard]] UpperHalfPoint mobius(const Sl2Matrix<Int>& g, const UpperHalfPoint& tau) {
  const Complex z = tau.z();
  const Complex num = to_double(g.a()) * z + to_double(g.b());
  const Complex den = to_double(g.c()) * z + to_double(g.d());
  return UpperHalfPoint(num / den);
}

/// The six elements of SL(2, Z/2), named by the words that represent them.
enum class AnharmonicLabel { Id, T, S, TS, TST, MinusSTinv };

inline constexpr std::array<AnharmonicLabel, 6> kAnharmonicLabels = {
    AnharmonicLabel::Id, AnharmonicLabel::T, AnharmonicLabel::S,
    AnharmonicLabel::TS, AnharmonicLabel::TST, AnharmonicLabel::MinusSTinv};

[[nodiscard]] constexpr std::string_view anharmonic_name(AnharmonicLabel g) {
  constexpr std::array<std::string_view, 6> names = {"Id", "T", "S", "T.S", "T.S.T", "-S.T^-1"};
  return names[static_cast<std::size_t>(g)];
}

/// Word for each label in SL(2, Z).
template <Integer Int = std::int64_t>
[[nodiscard]] Sl2Matrix<Int> anharmonic_word(AnharmonicLabel g) {
  const auto t = generator_t<Int>(), s = generator_s<Int>();
  switch (g) {
    case AnharmonicLabel::Id: return Sl2Matrix<Int>();
    case AnharmonicLabel::T: return t;
    case AnharmonicLabel::S: return s;
    case AnharmonicLabel::TS: return t * s;
    case AnharmonicLabel::TST: return t * s * t;
    case AnharmonicLabel::MinusSTinv: return -(s * t.inverse());
  }
  throw std::logic_error("unknown anharmonic label");
}

[[nodiscard]] inline AnharmonicLabel anharmonic_label_mod_2(const Mat2Mod& r) {
  for (auto g : kAnharmonicLabels)
    if (reduce_mod(anharmonic_word(g), 2) == r) return g;
  throw std::domain_error("matrix is not invertible mod 2");
}

/// Image of lambda under the element labelled g, so that lambda(g tau) = apply(g, lambda(tau)).
[[nodiscard]] inline Complex apply_anharmonic(AnharmonicLabel g, Complex x) {
  switch (g) {
    case AnharmonicLabel::Id: return x;
    case AnharmonicLabel::T: return x / (x - 1.0);
    case AnharmonicLabel::S: return 1.0 - x;
    case AnharmonicLabel::TS: return (x - 1.0) / x;
    case AnharmonicLabel::TST: return 1.0 / x;
    case AnharmonicLabel::MinusSTinv: return 1.0 / (1.0 - x);
  }
  throw std::logic_error("unknown anharmonic label");
}

struct AnharmonicEntry {
  AnharmonicLabel label;
  Complex value;
};

[[nodiscard]] inline std::array<AnharmonicEntry, 6> anharmonic_orbit(Complex lambda) {
  if (lambda == Complex(0.0) || lambda == Complex(1.0))
    throw std::domain_error("anharmonic orbit of a degenerate value");
  std::array<AnharmonicEntry, 6> out{};
  for (std::size_t i = 0; i < kAnharmonicLabels.size(); ++i)
    out[i] = {kAnharmonicLabels[i], apply_anharmonic(kAnharmonicLabels[i], lambda)};
  return out;
}

// ---------------------------------------------------------------------------
// lambda

/// theta_2^4 / theta_3^4 without moving tau.
[[nodiscard]] inline Complex lambda_series(const UpperHalfPoint& tau) {
  const auto th = theta_constants(tau);
  const Complex r = th.theta2 / th.theta3;
  return (r * r) * (r * r);
}

/// lambda(tau) for any tau in the upper half plane: tau is moved into the
/// standard fundamental domain by g and lambda(tau) = apply(g^-1, lambda(g tau)).
[[nodiscard]] inline Complex lambda(const UpperHalfPoint& tau) {
  Complex z = tau.z();
  Mat2Mod g{1, 0, 0, 1, 2};
  const Mat2Mod s{0, 1, 1, 0, 2}, t{1, 1, 0, 1, 2};
  for (int guard = 0; guard < 10'000; ++guard) {
    const double n = std::round(z.real());
    if (n != 0.0) {
      z -= n;
      if (std::fmod(std::abs(n), 2.0) == 1.0) g = t * g;  // T^-n = T^n mod 2
    }
    if (std::norm(z) < 1.0 - 1e-15) {
      z = -1.0 / z;
      g = s * g;
    } else {
      const Mat2Mod g_inv{g.d, g.b, g.c, g.a, 2};
      return apply_anharmonic(anharmonic_label_mod_2(g_inv), lambda_series(UpperHalfPoint(z)));
    }
  }
  throw std::domain_error("reduction to the fundamental domain did not terminate");
}

/// Values of lambda at g(zeta_3) as printed to six digits.
struct LambdaReference {
  AnharmonicLabel label;
  Complex value;
};

inline const std::array<LambdaReference, 6> kLambdaReferenceValues = {{
    {AnharmonicLabel::Id, {0.5, -0.866025}},
    {AnharmonicLabel::T, {0.5, 0.866025}},
    {AnharmonicLabel::S, {0.5, 0.866025}},
    {AnharmonicLabel::TS, {0.5, -0.866025}},
    {AnharmonicLabel::TST, {0.5, 0.866025}},
    {AnharmonicLabel::MinusSTinv, {0.5, -0.866025}},
}};

// ---------------------------------------------------------------------------
// Z(M(A), Z/2) from lambda

/// Branch of log used in |3 log(lambda(A zeta_3)) / (2 pi i)|^-1.
enum class LogBranch { principal, nonnegative };  // arg in (-pi, pi] or [0, 2 pi)

inline constexpr LogBranch kZ2FormulaBranch = LogBranch::principal;

template <Integer Int>
[[nodiscard]] double z2_formula_value(const Sl2Matrix<Int>& a, LogBranch branch = kZ2FormulaBranch) {
  if (classify_mod_2(a).kind == ClassKind::C1)
    throw std::domain_error("formula excludes A = Id mod 2, where Z(M(A), Z/2) = 4");
  const Complex l = lambda(mobius(a, zeta3()));
  double arg = std::arg(l);
  if (branch == LogBranch::nonnegative && arg < 0.0) arg += 2.0 * boost::math::constants::pi<double>();
  const Complex log_l(std::log(std::abs(l)), arg);
  const Complex i(0.0, 1.0);
  return 1.0 / std::abs(3.0 * log_l / (2.0 * boost::math::constants::pi<double>() * i));
}

struct Z2FormulaRow {
  AnharmonicLabel label;
  ClassKind class_mod_2;
  std::int64_t dw = 0;
  double principal = 0.0;
  double nonnegative = 0.0;

  bool operator==(const Z2FormulaRow&) const = default;
};

/// Formula values next to Z(M(A), Z/2) for the five non-identity elements of SL(2, Z/2).
[[nodiscard]] inline std::vector<Z2FormulaRow> z2_formula_table() {
  std::vector<Z2FormulaRow> rows;
  for (auto g : kAnharmonicLabels) {
    if (g == AnharmonicLabel::Id) continue;
    const auto a = anharmonic_word<std::int64_t>(g);
    rows.push_back({g, classify_mod_2(a).kind, static_cast<std::int64_t>(dw_invariant_sl2_p2(a).value),
                    z2_formula_value(a, LogBranch::principal), z2_formula_value(a, LogBranch::nonnegative)});
  }
  return rows;
}

}  // namespace mti
