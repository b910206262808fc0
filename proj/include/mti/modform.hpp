#pragma once

// Coefficients a_p of the weight-one form attached to Q(d^(1/3), zeta_3),
// read off from how p splits: a_p is the trace of Frobenius in the
// two-dimensional representation of S_3.

#include "mti/dw.hpp"
#include "mti/modular.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace mti {

/// Factorization shape of p in the ring of integers of Q(d^(1/3), zeta_3).
enum class SplitPattern { split6, split2, split3 };

[[nodiscard]] constexpr std::string_view split_pattern_name(SplitPattern s) {
  switch (s) {
    case SplitPattern::split6: return "split6";
    case SplitPattern::split2: return "split2";
    case SplitPattern::split3: return "split3";
  }
  return "?";
}

[[nodiscard]] inline bool is_cube_free(std::int64_t d) {
  if (d < 0) d = -d;
  if (d == 0) return false;
  for (std::int64_t q = 2; q * q * q <= d; ++q)
    if (d % (q * q * q) == 0) return false;
  return true;
}

[[nodiscard]] inline bool is_cube_mod_p(std::int64_t d, std::int64_t p) {
  require_prime(p);
  if (p == 3) throw std::invalid_argument("p = 3 is ramified");
  const std::int64_t r = ((d % p) + p) % p;
  if (r == 0) throw std::invalid_argument("p divides d");
  if (p % 3 == 2 || p == 2) return true;
  return powmod(r, (p - 1) / 3, p) == 1;
}

struct CubicSplit {
  std::int64_t d = 2;
  std::int64_t p = 5;
  SplitPattern pattern = SplitPattern::split3;

  bool operator==(const CubicSplit&) const = default;
};

[[nodiscard]] inline CubicSplit cubic_split(std::int64_t d, std::int64_t p) {
  if (d <= 1 || !is_cube_free(d)) throw std::invalid_argument("d must be a cube-free integer > 1");
  require_prime(p);
  if (p == 3 || d % p == 0) throw std::invalid_argument("p is ramified (divides 3d)");
  SplitPattern s = SplitPattern::split3;
  if (p % 3 == 1) s = is_cube_mod_p(d, p) ? SplitPattern::split6 : SplitPattern::split2;
  return {d, p, s};
}

/// 2, -1 or 0 for the patterns split6, split2, split3.
[[nodiscard]] inline int frobenius_trace(std::int64_t d, std::int64_t p) {
  switch (cubic_split(d, p).pattern) {
    case SplitPattern::split6: return 2;
    case SplitPattern::split2: return -1;
    case SplitPattern::split3: return 0;
  }
  return 0;
}

[[nodiscard]] inline int ap_coefficient(std::int64_t d, std::int64_t p) { return frobenius_trace(d, p); }

/// Class of [A] mod 2 paired with each splitting pattern.
[[nodiscard]] constexpr ClassKind paired_class_for(SplitPattern s) {
  switch (s) {
    case SplitPattern::split6: return ClassKind::C1;
    case SplitPattern::split2: return ClassKind::C2;
    case SplitPattern::split3: return ClassKind::C3;
  }
  return ClassKind::C1;
}

[[nodiscard]] constexpr int dw_mod_2_of(ClassKind k) {
  return k == ClassKind::C1 ? 4 : (k == ClassKind::C2 ? 2 : 1);
}

/// Coefficients of q^p, p < 100, p != 2, 3, in the d = 2 expansion
/// q - q^7 - q^13 - q^19 + q^25 + 2q^31 - q^37 + 2q^43 - q^61 - q^67 - q^73 - q^79 + q^91 - q^97.
[[nodiscard]] inline std::map<std::int64_t, int> lmfdb_d2_coefficients() {
  std::map<std::int64_t, int> table;
  for (std::int64_t p = 5; p < 100; ++p)
    if (is_prime(p)) table[p] = 0;
  for (std::int64_t p : {7, 13, 19, 37, 61, 67, 73, 79, 97}) table[p] = -1;
  for (std::int64_t p : {31, 43}) table[p] = 2;
  return table;
}

struct QExpansionRow {
  std::int64_t p = 0;
  int expected = 0;
  int computed = 0;
  SplitPattern pattern = SplitPattern::split3;
  ClassKind paired_class = ClassKind::C1;
  int paired_dw = 0;  // Z(M(A), Z/2) for the paired class; a_p = Z + 2 is reported, not asserted

  [[nodiscard]] bool matches() const { return expected == computed; }
  bool operator==(const QExpansionRow&) const = default;
};

struct QExpansionReport {
  std::vector<QExpansionRow> rows;
  std::vector<std::int64_t> mismatches;

  bool operator==(const QExpansionReport&) const = default;
};

/// Compares a_p(2, p) for primes 5 <= p < pmax with the tabulated coefficients.
[[nodiscard]] inline QExpansionReport qexpansion_check(std::int64_t pmax,
                                                       const std::map<std::int64_t, int>& table = lmfdb_d2_coefficients()) {
  QExpansionReport report;
  for (const auto& [p, expected] : table) {
    if (p >= pmax) break;
    const CubicSplit split = cubic_split(2, p);
    QExpansionRow row{p, expected, ap_coefficient(2, p), split.pattern, paired_class_for(split.pattern), 0};
    row.paired_dw = dw_mod_2_of(row.paired_class);
    if (!row.matches()) report.mismatches.push_back(p);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace mti
