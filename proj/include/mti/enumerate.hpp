#pragma once

// Hyperbolic conjugacy classes of SL(2, Z) with a given trace t, one per
// cycle of reduced forms of discriminant t^2 - 4 (imprimitive forms included).

#include "mti/bqf.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mti {

template <Integer Int = BigInt>
struct ClassRep {
  Sl2Matrix<Int> matrix;
  Int trace;
  QuadForm<Int> form;  // lexicographically smallest member of the cycle
  Int primitive_content;
  std::size_t cycle_length = 0;

  bool operator==(const ClassRep&) const = default;
};

/// Primes up to a fixed limit; divisor lists fall back to odd trial division
/// past the table.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t limit = 1 << 12) {
    limit = std::max<std::int64_t>(limit, 3);
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }

  [[nodiscard]] const std::vector<std::int64_t>& primes() const { return primes_; }

  /// Positive divisors of n > 0, unsorted.
  template <Integer Int>
  [[nodiscard]] std::vector<Int> divisors(Int n) const {
    std::vector<Int> divs{Int(1)};
    auto absorb = [&](const Int& prime, int multiplicity) {
      const std::size_t base = divs.size();
      Int power = 1;
      for (int e = 0; e < multiplicity; ++e) {
        power *= prime;
        for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
      }
    };
    auto strip = [&](const Int& q) {
      int e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      if (e > 0) absorb(q, e);
    };
    Int q = 2;
    for (std::int64_t p : primes_) {
      q = p;
      if (q * q > n) break;
      strip(q);
    }
    if (q * q <= n) {
      for (q = primes_.back() + 2; q * q <= n; q += 2) strip(q);
    }
    if (n > 1) absorb(n, 1);
    return divs;
  }

 private:
  std::vector<std::int64_t> primes_;
};

/// All reduced forms of discriminant t^2 - 4, sorted.
template <Integer Int>
[[nodiscard]] std::vector<QuadForm<Int>> reduced_forms_with_trace(const Int& t, const PrimeTable& primes) {
  if (abs_value(t) <= 2) throw std::domain_error("trace must satisfy |t| > 2");
  const Int d = t * t - 4;
  const Int s = isqrt(d);
  std::vector<QuadForm<Int>> forms;
  Int l = (abs_value(t) % 2 == 0) ? Int(2) : Int(1);
  for (; l <= s; l += 2) {
    const Int n = (d - l * l) / 4;  // m k = -n
    for (const Int& dv : primes.divisors(n)) {
      if (2 * dv + l <= s || 2 * dv - l > s) continue;
      const Int other = n / dv;
      forms.push_back({dv, l, Int(-other)});
      forms.push_back({Int(-dv), l, other});
    }
  }
  std::sort(forms.begin(), forms.end());
  return forms;
}

/// Classes of trace t (|t| > 2), one per reduction cycle, ordered by canonical form.
template <Integer Int>
[[nodiscard]] std::vector<ClassRep<Int>> classes_with_trace(const Int& t, const PrimeTable& primes) {
  const std::vector<QuadForm<Int>> forms = reduced_forms_with_trace(t, primes);
  const Int s = isqrt(Int(t * t - 4));
  std::vector<bool> seen(forms.size(), false);
  std::vector<ClassRep<Int>> classes;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (seen[i]) continue;
    // forms is sorted, so the first unseen member is the cycle minimum.
    std::size_t length = 0;
    QuadForm<Int> g = forms[i];
    do {
      auto it = std::lower_bound(forms.begin(), forms.end(), g);
      if (it == forms.end() || *it != g) throw std::logic_error("rho left the set of reduced forms at " + g.str());
      seen[static_cast<std::size_t>(it - forms.begin())] = true;
      ++length;
      g = rho_step(g, s).form;
    } while (g != forms[i]);
    ClassRep<Int> rep{bqf_to_matrix(forms[i], t), t, forms[i], forms[i].content(), length};
    classes.push_back(std::move(rep));
  }
  return classes;
}

template <Integer Int>
[[nodiscard]] std::vector<ClassRep<Int>> classes_with_trace(const Int& t) {
  return classes_with_trace(t, PrimeTable());
}

/// Calls visit(rep) for every class with 3 <= |trace| < T: traces t then -t,
/// in increasing |t|.
template <Integer Int>
void for_each_class_below(const Int& tmax, const std::function<void(const ClassRep<Int>&)>& visit) {
  if (tmax < 4) throw std::invalid_argument("hyperbolic_classes_below needs T >= 4");
  const PrimeTable primes;
  for (Int t = 3; t < tmax; ++t) {
    for (const auto& rep : classes_with_trace(t, primes)) visit(rep);
    for (const auto& rep : classes_with_trace(Int(-t), primes)) visit(rep);
  }
}

template <Integer Int>
[[nodiscard]] std::vector<ClassRep<Int>> hyperbolic_classes_below(const Int& tmax) {
  std::vector<ClassRep<Int>> out;
  for_each_class_below<Int>(tmax, [&](const ClassRep<Int>& rep) { out.push_back(rep); });
  return out;
}

/// Index of the class (as returned by classes_with_trace) containing A, or -1.
template <Integer Int>
[[nodiscard]] std::ptrdiff_t locate_class(const Sl2Matrix<Int>& a, const std::vector<ClassRep<Int>>& classes) {
  const QuadForm<Int> reduced = reduce_indefinite(matrix_to_bqf(a));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].trace != a.trace()) continue;
    for (const auto& g : reduction_cycle(classes[i].form))
      if (g == reduced) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace mti
