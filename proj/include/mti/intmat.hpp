#pragma once

// Exact integer linear algebra: Smith normal form with certificates, the
// minor-gcd route to the invariant factors, rank over F_p, cokernels and the
// first homology of mapping tori.

#include "mti/integer.hpp"
#include "mti/modular.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mti {

template <Integer Int = BigInt>
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match shape");
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] std::span<const Int> entries() const { return data_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const IntMatrix&) const = default;

  [[nodiscard]] IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  friend IntMatrix operator+(IntMatrix x, const IntMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] += y.data_[i];
    return x;
  }

  friend IntMatrix operator-(IntMatrix x, const IntMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] -= y.data_[i];
    return x;
  }

  // Elementary operations used by the elimination routines.
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
  }
  /// col[dst] += factor * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      out << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << to_string((*this)(i, j));
      out << ']';
    }
    out << ']';
    return out.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

template <Integer To, Integer From>
[[nodiscard]] IntMatrix<To> convert_matrix(const IntMatrix<From>& m) {
  std::vector<To> e;
  e.reserve(m.rows() * m.cols());
  for (const auto& x : m.entries()) e.push_back(convert<To>(x));
  return IntMatrix<To>(m.rows(), m.cols(), std::move(e));
}

/// Fraction-free (Bareiss) determinant.
template <Integer Int>
[[nodiscard]] Int determinant(IntMatrix<Int> m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Int(1);
  int sign = 1;
  Int prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return Int(0);
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

/// P * M * Q == diag(diag), P and Q unimodular.
template <Integer Int = BigInt>
struct SnfResult {
  std::vector<Int> diag;
  IntMatrix<Int> left;
  IntMatrix<Int> right;

  bool operator==(const SnfResult&) const = default;
};

/// Z^free_rank (+) Z/t_1 (+) ... with t_1 | t_2 | ... and every t_i >= 2.
template <Integer Int = BigInt>
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const AbelianGroup&) const = default;

  [[nodiscard]] std::string str() const {
    std::string out;
    auto append = [&out](const std::string& term) {
      if (!out.empty()) out += " + ";
      out += term;
    };
    if (free_rank == 1) append("Z");
    else if (free_rank > 1) append("Z^" + std::to_string(free_rank));
    for (const auto& t : torsion) append("Z/" + to_string(t));
    return out.empty() ? "0" : out;
  }
};

namespace detail {

template <Integer Int>
bool find_min_pivot(const IntMatrix<Int>& d, std::size_t s, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best{};
  for (std::size_t i = s; i < d.rows(); ++i)
    for (std::size_t j = s; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int v = abs_value(d(i, j));
      if (!found || v < best) {
        best = std::move(v);
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

/// Smith normal form by alternating row/column Euclidean elimination. The
/// pivot is always the entry of least absolute value in the trailing block,
/// and a pivot that fails to divide the trailing block is repaired by folding
/// the offending row into the pivot row, so the returned diagonal already
/// satisfies the divisibility chain.
template <Integer Int>
[[nodiscard]] SnfResult<Int> smith_normal_form(const IntMatrix<Int>& m) {
  IntMatrix<Int> d = m;
  IntMatrix<Int> p = IntMatrix<Int>::identity(m.rows());
  IntMatrix<Int> q = IntMatrix<Int>::identity(m.cols());
  const std::size_t rank_bound = std::min(m.rows(), m.cols());

  for (std::size_t s = 0; s < rank_bound; ++s) {
    bool nonzero_block = true;
    for (;;) {
      std::size_t pi = s, pj = s;
      if (!detail::find_min_pivot(d, s, pi, pj)) {
        nonzero_block = false;
        break;
      }
      d.swap_rows(s, pi);
      p.swap_rows(s, pi);
      d.swap_cols(s, pj);
      q.swap_cols(s, pj);

      bool clean = true;
      for (std::size_t i = s + 1; i < d.rows(); ++i) {
        if (d(i, s) == 0) continue;
        Int f = -floor_div(d(i, s), d(s, s));
        d.add_row(i, s, f);
        p.add_row(i, s, f);
        if (d(i, s) != 0) clean = false;
      }
      for (std::size_t j = s + 1; j < d.cols(); ++j) {
        if (d(s, j) == 0) continue;
        Int f = -floor_div(d(s, j), d(s, s));
        d.add_col(j, s, f);
        q.add_col(j, s, f);
        if (d(s, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides_block = true;
      for (std::size_t i = s + 1; i < d.rows() && divides_block; ++i)
        for (std::size_t j = s + 1; j < d.cols(); ++j) {
          if (d(i, j) % d(s, s) != 0) {
            d.add_row(s, i, Int(1));
            p.add_row(s, i, Int(1));
            divides_block = false;
            break;
          }
        }
      if (divides_block) break;
    }
    if (!nonzero_block) break;
    if (d(s, s) < 0) {
      d.negate_row(s);
      p.negate_row(s);
    }
  }

  SnfResult<Int> result;
  result.diag.reserve(rank_bound);
  for (std::size_t i = 0; i < rank_bound; ++i) result.diag.push_back(d(i, i));
  result.left = std::move(p);
  result.right = std::move(q);
  return result;
}

inline constexpr std::size_t kMinorGcdDimensionLimit = 6;

/// Invariant factors A(i) = D(i) / D(i-1), D(i) the gcd of all i x i minors,
/// with D(0) = 1. Once some D(i) vanishes the remaining factors are 0.
template <Integer Int>
[[nodiscard]] std::vector<Int> snf_via_minor_gcds(const IntMatrix<Int>& m) {
  if (m.rows() > kMinorGcdDimensionLimit || m.cols() > kMinorGcdDimensionLimit)
    throw std::invalid_argument("minor-gcd route is limited to 6 x 6 matrices");

  const std::size_t n = std::min(m.rows(), m.cols());
  std::vector<Int> factors;
  factors.reserve(n);
  Int prev(1);
  bool vanished = false;

  for (std::size_t order = 1; order <= n; ++order) {
    if (vanished) {
      factors.push_back(Int(0));
      continue;
    }
    Int g(0);
    // Iterate over all row and column subsets of size `order` as bit masks.
    for (unsigned rmask = 0; rmask < (1u << m.rows()); ++rmask) {
      if (static_cast<std::size_t>(__builtin_popcount(rmask)) != order) continue;
      for (unsigned cmask = 0; cmask < (1u << m.cols()); ++cmask) {
        if (static_cast<std::size_t>(__builtin_popcount(cmask)) != order) continue;
        IntMatrix<Int> sub(order, order);
        std::size_t si = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
          if (!(rmask >> i & 1u)) continue;
          std::size_t sj = 0;
          for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!(cmask >> j & 1u)) continue;
            sub(si, sj++) = m(i, j);
          }
          ++si;
        }
        g = gcd(g, determinant(std::move(sub)));
      }
    }
    if (g == 0) {
      vanished = true;
      factors.push_back(Int(0));
    } else {
      factors.push_back(g / prev);
      prev = std::move(g);
    }
  }
  return factors;
}

/// Rank over F_p by Gaussian elimination on reduced entries.
template <Integer Int>
[[nodiscard]] std::size_t rank_mod_p(const IntMatrix<Int>& m, std::int64_t p) {
  require_prime(p);
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::int64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = residue(m(i, j), p);

  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
    const std::int64_t inv = invmod(a[rank * cols + col], p);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const std::int64_t f = mulmod(a[i * cols + col], inv, p);
      if (f == 0) continue;
      for (std::size_t j = col; j < cols; ++j) {
        a[i * cols + j] = (a[i * cols + j] - mulmod(f, a[rank * cols + j], p)) % p;
        if (a[i * cols + j] < 0) a[i * cols + j] += p;
      }
    }
    ++rank;
  }
  return rank;
}

template <Integer Int>
[[nodiscard]] AbelianGroup<Int> cokernel(const IntMatrix<Int>& m) {
  if (!m.is_square()) throw std::invalid_argument("cokernel expects a square matrix");
  AbelianGroup<Int> group;
  for (auto& a : smith_normal_form(m).diag) {
    if (a == 0) ++group.free_rank;
    else if (a > 1) group.torsion.push_back(std::move(a));
  }
  return group;
}

/// J = [[0, I_g], [-I_g, 0]].
template <Integer Int>
[[nodiscard]] IntMatrix<Int> standard_symplectic_form(std::size_t g) {
  IntMatrix<Int> j(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    j(i, g + i) = 1;
    j(g + i, i) = -1;
  }
  return j;
}

template <Integer Int>
[[nodiscard]] bool is_symplectic(const IntMatrix<Int>& m, std::size_t g) {
  if (g == 0 || m.rows() != 2 * g || m.cols() != 2 * g)
    throw std::invalid_argument("is_symplectic: matrix must be 2g x 2g");
  const auto j = standard_symplectic_form<Int>(g);
  return m.transpose() * j * m == j;
}

/// `skip` accepts a 2g x 2g matrix whose basis does not match J, as when a
/// monodromy is copied from a source that uses another convention.
enum class SymplecticCheck { enforce, skip };

/// Genus of a square even-dimensional matrix, validating symplecticity.
template <Integer Int>
std::size_t require_symplectic(const IntMatrix<Int>& fhat, SymplecticCheck check = SymplecticCheck::enforce) {
  if (!fhat.is_square() || fhat.rows() == 0 || fhat.rows() % 2 != 0)
    throw std::invalid_argument("expected a 2g x 2g matrix");
  const std::size_t g = fhat.rows() / 2;
  if (check == SymplecticCheck::enforce && !is_symplectic(fhat, g))
    throw std::domain_error("matrix is not symplectic");
  return g;
}

/// H_1(M(f), Z) = Z (+) Coker(fhat - Id).
template <Integer Int>
[[nodiscard]] AbelianGroup<Int> mapping_torus_homology(const IntMatrix<Int>& fhat,
                                                       SymplecticCheck check = SymplecticCheck::enforce) {
  require_symplectic(fhat, check);
  auto group = cokernel(fhat - IntMatrix<Int>::identity(fhat.rows()));
  ++group.free_rank;
  return group;
}

}  // namespace mti
