#pragma once

// Counts of hyperbolic SL(2, Z) classes with |Tr| < T by mod-p class, summed
// Dijkgraaf-Witten invariants and Smith-form divisibility categories, compared
// against the Chebotarev densities |C| / |G| times li(T^2).
//
// Every class is counted, including proper powers and both signs of the trace.

#include "mti/dw.hpp"
#include "mti/enumerate.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mti {

/// li(x) = int_2^x dt / log t, integrated in u = log t.
[[nodiscard]] inline double log_integral(double x) {
  if (!(x >= 2.0)) throw std::domain_error("log_integral needs x >= 2");
  if (x == 2.0) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  auto f = [](long double u) { return std::exp(u) / u; };
  const long double a = std::log(2.0L), b = std::log(static_cast<long double>(x));
  return static_cast<double>(gauss_kronrod<long double, 61>::integrate(f, a, b, 20, 1e-16L));
}

/// Cumulative counts over classes with |Tr| < bound.
struct CensusSnapshot {
  std::int64_t bound = 0;
  std::int64_t total = 0;
  std::array<std::int64_t, 8> per_label{};
  std::int64_t unipotent = 0;  // C3 + C4 for odd p; C2 for p = 2
  std::int64_t dw_sum = 0;
  std::int64_t snf_id = 0;     // p | A1 and p | A2
  std::int64_t snf_unip = 0;   // p does not divide A1, p | A2
  std::int64_t snf_rest = 0;   // p divides neither
  std::int64_t snf_off_chain = 0;  // p | A1 but not A2; impossible since A1 | A2
  double li_T2 = 0.0;

  [[nodiscard]] std::int64_t count(ClassKind k) const { return per_label[static_cast<std::size_t>(k)]; }
  [[nodiscard]] std::int64_t rest() const { return total - count(ClassKind::C1) - unipotent; }

  CensusSnapshot& operator+=(const CensusSnapshot& o) {
    total += o.total;
    for (std::size_t i = 0; i < per_label.size(); ++i) per_label[i] += o.per_label[i];
    unipotent += o.unipotent;
    dw_sum += o.dw_sum;
    snf_id += o.snf_id;
    snf_unip += o.snf_unip;
    snf_rest += o.snf_rest;
    snf_off_chain += o.snf_off_chain;
    return *this;
  }
  bool operator==(const CensusSnapshot&) const = default;
};

struct CensusReport {
  std::int64_t p = 3;
  std::int64_t tmax = 0;
  CensusSnapshot final;
  std::vector<CensusSnapshot> checkpoints;  // ascending bounds T >> k, ending with T

  bool operator==(const CensusReport&) const = default;
};

inline constexpr std::int64_t kCensusMaxPrime = 1 << 20;

namespace detail {

/// Contribution of all classes with trace t and -t.
[[nodiscard]] inline CensusSnapshot census_trace(std::int64_t t, std::int64_t p, const PrimeTable& primes) {
  CensusSnapshot s;
  for (std::int64_t sign : {1, -1}) {
    for (const auto& rep : classes_with_trace<std::int64_t>(sign * t, primes)) {
      const Mat2Mod r = reduce_mod(rep.matrix, p);
      const ClassLabel label = (p == 2) ? classify_residue_mod_2(r) : classify_residue(r);
      ++s.total;
      ++s.per_label[static_cast<std::size_t>(label.kind)];
      const bool identity = r.is_identity();
      const bool unipotent = !identity && r.trace() == 2 % p;
      if (unipotent) ++s.unipotent;
      s.dw_sum += identity ? p * p : (unipotent ? p : 1);

      const auto [a1, a2] = sl2_snf_entries(rep.matrix);
      const bool d1 = a1 % p == 0, d2 = a2 % p == 0;
      if (d1 && d2) ++s.snf_id;
      else if (d2) ++s.snf_unip;
      else if (!d1) ++s.snf_rest;
      else ++s.snf_off_chain;
    }
  }
  return s;
}

}  // namespace detail

/// Census over 3 <= |t| < tmax. Traces are sharded over `threads` workers and
/// merged in trace order, so the result does not depend on the thread count.
[[nodiscard]] inline CensusReport census(std::int64_t p, std::int64_t tmax, unsigned threads = 1) {
  require_prime(p);
  if (p > kCensusMaxPrime) throw std::invalid_argument("census prime is too large");
  if (tmax < 10) throw std::invalid_argument("census needs T >= 10");
  if (tmax > 3'000'000'000LL) throw std::invalid_argument("census bound is too large");
  threads = std::max(1u, threads);

  const PrimeTable primes(std::max<std::int64_t>(1 << 12, static_cast<std::int64_t>(std::sqrt(double(tmax))) + 2));
  std::vector<CensusSnapshot> per_trace(static_cast<std::size_t>(tmax));
  std::atomic<std::int64_t> next{3};
  auto worker = [&] {
    for (std::int64_t t = next++; t < tmax; t = next++) per_trace[t] = detail::census_trace(t, p, primes);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<std::int64_t> bounds;
  for (std::int64_t b = tmax; b >= 4; b >>= 1) bounds.push_back(b);
  std::reverse(bounds.begin(), bounds.end());

  CensusReport report;
  report.p = p;
  report.tmax = tmax;
  CensusSnapshot running;
  std::size_t next_bound = 0;
  for (std::int64_t t = 3; t <= tmax; ++t) {
    // running covers 3 <= |trace| < t here
    while (next_bound < bounds.size() && bounds[next_bound] == t) {
      CensusSnapshot snap = running;
      snap.bound = t;
      snap.li_T2 = log_integral(double(t) * double(t));
      report.checkpoints.push_back(snap);
      ++next_bound;
    }
    if (t < tmax) running += per_trace[t];
  }
  report.final = report.checkpoints.back();
  return report;
}

struct DensityRow {
  std::string label;  // a class kind or one of the groups "identity", "unipotent", "rest"
  std::int64_t bound = 0;
  std::int64_t count = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double deviation = 0.0;  // (empirical - predicted) / predicted

  bool operator==(const DensityRow&) const = default;
};

/// Number of elements of SL(2, F_p) in each class kind.
[[nodiscard]] inline std::array<std::int64_t, 8> class_kind_sizes(std::int64_t p) {
  require_prime(p);
  if (p == 2) return {1, 3, 2, 0, 0, 0, 0, 0};
  const std::int64_t half = (p * p - 1) / 2;
  return {1, 1, half, half, half, half, (p - 3) / 2 * p * (p + 1), (p - 1) / 2 * p * (p - 1)};
}

[[nodiscard]] inline std::int64_t group_order(std::int64_t p) { return p * p * p - p; }

/// Predicted frequencies of the groups identity / unipotent / rest: (1, p^2 - 1, p^3 - p^2 - p) / (p^3 - p).
[[nodiscard]] inline std::array<double, 3> predicted_group_frequencies(std::int64_t p) {
  const auto sizes = class_kind_sizes(p);
  const double g = double(group_order(p));
  const double unip = (p == 2) ? double(sizes[1]) : double(sizes[2] + sizes[3]);
  return {1.0 / g, unip / g, (g - 1.0 - unip) / g};
}

[[nodiscard]] inline std::vector<DensityRow> density_report(const CensusSnapshot& s, std::int64_t p) {
  if (s.total <= 0) throw std::domain_error("density report of an empty census");
  std::vector<DensityRow> rows;
  const double total = double(s.total);
  auto add = [&](std::string label, std::int64_t count, double predicted) {
    const double emp = double(count) / total;
    rows.push_back({std::move(label), s.bound, count, emp, predicted, (emp - predicted) / predicted});
  };
  const auto groups = predicted_group_frequencies(p);
  add("identity", s.count(ClassKind::C1), groups[0]);
  add("unipotent", s.unipotent, groups[1]);
  add("rest", s.rest(), groups[2]);
  const auto sizes = class_kind_sizes(p);
  const std::size_t kinds = (p == 2) ? 3 : 8;
  for (std::size_t i = 0; i < kinds; ++i) {
    if (sizes[i] == 0) continue;
    add(std::string(class_kind_name(kAllClassKinds[i])), s.per_label[i], double(sizes[i]) / double(group_order(p)));
  }
  return rows;
}

[[nodiscard]] inline std::vector<DensityRow> density_report(const CensusReport& r) {
  return density_report(r.final, r.p);
}

struct TheoremConstants {
  double dw_constant = 0.0;
  std::array<double, 3> snf_constants{};
  double claimed_dw = 0.0;
  std::array<double, 3> claimed_snf{};
  double derived_dw = 0.0;
  std::array<double, 3> derived_snf{};

  bool operator==(const TheoremConstants&) const = default;
};

[[nodiscard]] inline TheoremConstants theorem_constants(const CensusSnapshot& s, std::int64_t p) {
  TheoremConstants c;
  const double li = s.li_T2;
  c.dw_constant = double(s.dw_sum) / li;
  c.snf_constants = {double(s.snf_id) / li, double(s.snf_unip) / li, double(s.snf_rest) / li};

  const double g = double(group_order(p));
  const double pd = double(p);
  c.claimed_dw = (2 * pd * pd * pd - 2 * pd + 1) / g;
  c.claimed_snf = {1.0 / g, (pd * pd - 1) / g, (pd * pd * pd - pd * pd - pd - 1) / g};

  const auto groups = predicted_group_frequencies(p);
  c.derived_snf = groups;
  c.derived_dw = pd * pd * groups[0] + pd * groups[1] + groups[2];
  return c;
}

[[nodiscard]] inline TheoremConstants theorem_constants(const CensusReport& r) {
  return theorem_constants(r.final, r.p);
}

}  // namespace mti
