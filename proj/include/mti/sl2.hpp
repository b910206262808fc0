#pragma once

#include "mti/intmat.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mti {

/// Element [[a, b], [c, d]] of SL(2, Z); the determinant is checked on construction.
template <Integer Int = BigInt>
class Sl2Matrix {
 public:
  Sl2Matrix() : a_(1), b_(0), c_(0), d_(1) {}
  Sl2Matrix(Int a, Int b, Int c, Int d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_ * d_ - b_ * c_ != 1)
      throw std::domain_error("matrix " + str() + " does not have determinant 1");
  }

  static Sl2Matrix from_matrix(const IntMatrix<Int>& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("expected a 2 x 2 matrix");
    return Sl2Matrix(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  }

  [[nodiscard]] const Int& a() const { return a_; }
  [[nodiscard]] const Int& b() const { return b_; }
  [[nodiscard]] const Int& c() const { return c_; }
  [[nodiscard]] const Int& d() const { return d_; }

  [[nodiscard]] Int trace() const { return a_ + d_; }
  [[nodiscard]] bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }
  [[nodiscard]] bool is_hyperbolic() const { return abs_value(Int(a_ + d_)) > 2; }

  [[nodiscard]] Sl2Matrix inverse() const { return unchecked(d_, Int(-b_), Int(-c_), a_); }
  [[nodiscard]] Sl2Matrix operator-() const { return unchecked(Int(-a_), Int(-b_), Int(-c_), Int(-d_)); }

  friend Sl2Matrix operator*(const Sl2Matrix& x, const Sl2Matrix& y) {
    return unchecked(Int(x.a_ * y.a_ + x.b_ * y.c_), Int(x.a_ * y.b_ + x.b_ * y.d_),
                     Int(x.c_ * y.a_ + x.d_ * y.c_), Int(x.c_ * y.b_ + x.d_ * y.d_));
  }

  bool operator==(const Sl2Matrix&) const = default;

  [[nodiscard]] IntMatrix<Int> to_matrix() const { return IntMatrix<Int>{{a_, b_}, {c_, d_}}; }
  [[nodiscard]] IntMatrix<Int> minus_identity() const {
    return IntMatrix<Int>{{Int(a_ - 1), b_}, {c_, Int(d_ - 1)}};
  }

  template <Integer To>
  [[nodiscard]] Sl2Matrix<To> as() const {
    return Sl2Matrix<To>::unchecked(convert<To>(a_), convert<To>(b_), convert<To>(c_), convert<To>(d_));
  }

  [[nodiscard]] std::string str() const {
    return "[[" + to_string(a_) + ", " + to_string(b_) + "], [" + to_string(c_) + ", " + to_string(d_) + "]]";
  }

  /// Skips the determinant check; callers guarantee ad - bc = 1.
  static Sl2Matrix unchecked(Int a, Int b, Int c, Int d) {
    Sl2Matrix m;
    m.a_ = std::move(a);
    m.b_ = std::move(b);
    m.c_ = std::move(c);
    m.d_ = std::move(d);
    return m;
  }

 private:
  Int a_, b_, c_, d_;
};

/// T = [[1, 1], [0, 1]].
template <Integer Int = BigInt>
[[nodiscard]] Sl2Matrix<Int> generator_t() {
  return Sl2Matrix<Int>::unchecked(Int(1), Int(1), Int(0), Int(1));
}

/// S = [[0, 1], [-1, 0]] (the convention used throughout: S acts as tau -> -1/tau).
template <Integer Int = BigInt>
[[nodiscard]] Sl2Matrix<Int> generator_s() {
  return Sl2Matrix<Int>::unchecked(Int(0), Int(1), Int(-1), Int(0));
}

template <Integer Int>
[[nodiscard]] Sl2Matrix<Int> power(Sl2Matrix<Int> base, unsigned exponent) {
  Sl2Matrix<Int> result;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

/// A 2 x 2 matrix of residues modulo p (not necessarily prime here).
struct Mat2Mod {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::int64_t p = 2;

  [[nodiscard]] std::int64_t det() const {
    std::int64_t v = (mulmod(a, d, p) - mulmod(b, c, p)) % p;
    return v < 0 ? v + p : v;
  }
  [[nodiscard]] std::int64_t trace() const { return (a + d) % p; }
  [[nodiscard]] bool is_identity() const { return a == 1 % p && b == 0 && c == 0 && d == 1 % p; }
  [[nodiscard]] Mat2Mod negated() const {
    return {(p - a) % p, (p - b) % p, (p - c) % p, (p - d) % p, p};
  }
  friend Mat2Mod operator*(const Mat2Mod& x, const Mat2Mod& y) {
    const std::int64_t p = x.p;
    return {(mulmod(x.a, y.a, p) + mulmod(x.b, y.c, p)) % p, (mulmod(x.a, y.b, p) + mulmod(x.b, y.d, p)) % p,
            (mulmod(x.c, y.a, p) + mulmod(x.d, y.c, p)) % p, (mulmod(x.c, y.b, p) + mulmod(x.d, y.d, p)) % p, p};
  }
  bool operator==(const Mat2Mod&) const = default;
};

template <Integer Int>
[[nodiscard]] Mat2Mod reduce_mod(const Sl2Matrix<Int>& m, std::int64_t p) {
  return {residue(m.a(), p), residue(m.b(), p), residue(m.c(), p), residue(m.d(), p), p};
}

}  // namespace mti
