#pragma once

// JSON encodings of inputs and results. Integers that may exceed 64 bits are
// written as decimal strings; every document emitted by the CLI carries
// "schema": 1.

#include "mti/census.hpp"
#include "mti/csw.hpp"
#include "mti/dw.hpp"
#include "mti/enumerate.hpp"
#include "mti/lambda.hpp"
#include "mti/modform.hpp"

#include <json.hpp>

#include <complex>
#include <string>

namespace mti {

using Json = nlohmann::json;

inline constexpr int kJsonSchema = 1;

template <Integer Int>
[[nodiscard]] Int integer_from_json(const Json& j) {
  if (j.is_string()) return convert<Int>(parse_bigint(j.get<std::string>()));
  if (j.is_number_integer()) return convert<Int>(BigInt(j.get<std::int64_t>()));
  throw std::invalid_argument("expected an integer or a decimal string, got " + j.dump());
}

template <Integer Int>
[[nodiscard]] Json integer_to_json(const Int& x) {
  return to_string(x);
}

template <Integer Int>
void to_json(Json& j, const IntMatrix<Int>& m) {
  j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(i, c)));
    j.push_back(std::move(row));
  }
}

template <Integer Int>
void from_json(const Json& j, IntMatrix<Int>& m) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be a JSON array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j[0].size();
  std::vector<Int> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw std::invalid_argument("matrix rows must be arrays of equal length");
    for (const auto& x : row) entries.push_back(integer_from_json<Int>(x));
  }
  m = IntMatrix<Int>(rows, cols, std::move(entries));
}

template <Integer Int>
void to_json(Json& j, const Sl2Matrix<Int>& a) {
  j = a.to_matrix();
}

template <Integer Int>
void from_json(const Json& j, Sl2Matrix<Int>& a) {
  a = Sl2Matrix<Int>::from_matrix(j.get<IntMatrix<Int>>());
}

template <Integer Int>
void to_json(Json& j, const SnfResult<Int>& r) {
  Json diag = Json::array();
  for (const auto& d : r.diag) diag.push_back(integer_to_json(d));
  j = Json{{"diag", diag}, {"left", r.left}, {"right", r.right}};
}

template <Integer Int>
void from_json(const Json& j, SnfResult<Int>& r) {
  r.diag.clear();
  for (const auto& d : j.at("diag")) r.diag.push_back(integer_from_json<Int>(d));
  r.left = j.at("left").get<IntMatrix<Int>>();
  r.right = j.at("right").get<IntMatrix<Int>>();
}

template <Integer Int>
void to_json(Json& j, const AbelianGroup<Int>& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion) torsion.push_back(integer_to_json(t));
  j = Json{{"free_rank", g.free_rank}, {"torsion", torsion}, {"text", g.str()}};
}

template <Integer Int>
void from_json(const Json& j, AbelianGroup<Int>& g) {
  g.free_rank = j.at("free_rank").get<std::size_t>();
  g.torsion.clear();
  for (const auto& t : j.at("torsion")) g.torsion.push_back(integer_from_json<Int>(t));
}

inline void to_json(Json& j, const DwValue& v) {
  j = Json{{"p", v.p}, {"exponent", v.exponent}, {"value", integer_to_json(v.value)}};
}

inline void from_json(const Json& j, DwValue& v) {
  v.p = j.at("p").get<std::int64_t>();
  v.exponent = j.at("exponent").get<unsigned>();
  v.value = integer_from_json<BigInt>(j.at("value"));
}

inline void to_json(Json& j, const ClassLabel& c) {
  j = Json{{"kind", std::string(class_kind_name(c.kind))}, {"p", c.p}, {"trace_mod_p", c.trace_mod_p}};
  j["qr_flag"] = c.qr_flag ? Json(*c.qr_flag) : Json(nullptr);
}

inline void from_json(const Json& j, ClassLabel& c) {
  c.kind = parse_class_kind(j.at("kind").get<std::string>());
  c.p = j.at("p").get<std::int64_t>();
  c.trace_mod_p = j.at("trace_mod_p").get<std::int64_t>();
  const auto& q = j.at("qr_flag");
  c.qr_flag = q.is_null() ? std::nullopt : std::optional<bool>(q.get<bool>());
}

template <Integer Int>
void to_json(Json& j, const QuadForm<Int>& f) {
  j = Json{{"m", integer_to_json(f.m)},
           {"l", integer_to_json(f.l)},
           {"k", integer_to_json(f.k)},
           {"discriminant", integer_to_json(f.discriminant())}};
}

template <Integer Int>
void from_json(const Json& j, QuadForm<Int>& f) {
  f.m = integer_from_json<Int>(j.at("m"));
  f.l = integer_from_json<Int>(j.at("l"));
  f.k = integer_from_json<Int>(j.at("k"));
}

template <Integer Int>
void to_json(Json& j, const ClassRep<Int>& c) {
  j = Json{{"matrix", c.matrix},
           {"trace", integer_to_json(c.trace)},
           {"form", c.form},
           {"primitive_content", integer_to_json(c.primitive_content)},
           {"cycle_length", c.cycle_length}};
}

template <Integer Int>
void from_json(const Json& j, ClassRep<Int>& c) {
  c.matrix = j.at("matrix").get<Sl2Matrix<Int>>();
  c.trace = integer_from_json<Int>(j.at("trace"));
  c.form = j.at("form").get<QuadForm<Int>>();
  c.primitive_content = integer_from_json<Int>(j.at("primitive_content"));
  c.cycle_length = j.at("cycle_length").get<std::size_t>();
}

inline void to_json(Json& j, const CensusSnapshot& s) {
  Json labels = Json::object();
  for (auto k : kAllClassKinds) labels[std::string(class_kind_name(k))] = s.count(k);
  j = Json{{"T", s.bound},           {"total", s.total},       {"per_label", labels},
           {"unipotent", s.unipotent}, {"rest", s.rest()},     {"dw_sum", s.dw_sum},
           {"snf_id", s.snf_id},     {"snf_unip", s.snf_unip}, {"snf_rest", s.snf_rest},
           {"snf_off_chain", s.snf_off_chain}, {"li_T2", s.li_T2}};
}

inline void from_json(const Json& j, CensusSnapshot& s) {
  s.bound = j.at("T").get<std::int64_t>();
  s.total = j.at("total").get<std::int64_t>();
  for (auto k : kAllClassKinds)
    s.per_label[static_cast<std::size_t>(k)] = j.at("per_label").at(std::string(class_kind_name(k))).get<std::int64_t>();
  s.unipotent = j.at("unipotent").get<std::int64_t>();
  s.dw_sum = j.at("dw_sum").get<std::int64_t>();
  s.snf_id = j.at("snf_id").get<std::int64_t>();
  s.snf_unip = j.at("snf_unip").get<std::int64_t>();
  s.snf_rest = j.at("snf_rest").get<std::int64_t>();
  s.snf_off_chain = j.at("snf_off_chain").get<std::int64_t>();
  s.li_T2 = j.at("li_T2").get<double>();
}

inline void to_json(Json& j, const CensusReport& r) {
  j = Json{{"p", r.p}, {"tmax", r.tmax}, {"final", r.final}, {"checkpoints", r.checkpoints}};
}

inline void from_json(const Json& j, CensusReport& r) {
  r.p = j.at("p").get<std::int64_t>();
  r.tmax = j.at("tmax").get<std::int64_t>();
  r.final = j.at("final").get<CensusSnapshot>();
  r.checkpoints = j.at("checkpoints").get<std::vector<CensusSnapshot>>();
}

inline void to_json(Json& j, const DensityRow& r) {
  j = Json{{"label", r.label},         {"T", r.bound},           {"count", r.count},
           {"empirical", r.empirical}, {"predicted", r.predicted}, {"deviation", r.deviation}};
}

inline void from_json(const Json& j, DensityRow& r) {
  r.label = j.at("label").get<std::string>();
  r.bound = j.at("T").get<std::int64_t>();
  r.count = j.at("count").get<std::int64_t>();
  r.empirical = j.at("empirical").get<double>();
  r.predicted = j.at("predicted").get<double>();
  r.deviation = j.at("deviation").get<double>();
}

inline void to_json(Json& j, const TheoremConstants& c) {
  j = Json{{"dw_constant", c.dw_constant}, {"snf_constants", c.snf_constants},
           {"claimed_dw", c.claimed_dw},   {"claimed_snf", c.claimed_snf},
           {"derived_dw", c.derived_dw},   {"derived_snf", c.derived_snf}};
}

inline void from_json(const Json& j, TheoremConstants& c) {
  c.dw_constant = j.at("dw_constant").get<double>();
  c.snf_constants = j.at("snf_constants").get<std::array<double, 3>>();
  c.claimed_dw = j.at("claimed_dw").get<double>();
  c.claimed_snf = j.at("claimed_snf").get<std::array<double, 3>>();
  c.derived_dw = j.at("derived_dw").get<double>();
  c.derived_snf = j.at("derived_snf").get<std::array<double, 3>>();
}

[[nodiscard]] inline Json complex_to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

[[nodiscard]] inline std::complex<double> complex_from_json(const Json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

[[nodiscard]] inline AnharmonicLabel parse_anharmonic_label(const std::string& name) {
  for (auto g : kAnharmonicLabels)
    if (anharmonic_name(g) == name) return g;
  throw std::invalid_argument("unknown anharmonic label '" + name + "'");
}

inline void to_json(Json& j, const Z2FormulaRow& r) {
  j = Json{{"element", std::string(anharmonic_name(r.label))},
           {"class_mod_2", std::string(class_kind_name(r.class_mod_2))},
           {"dw", r.dw},
           {"principal", r.principal},
           {"nonnegative", r.nonnegative}};
}

inline void from_json(const Json& j, Z2FormulaRow& r) {
  r.label = parse_anharmonic_label(j.at("element").get<std::string>());
  r.class_mod_2 = parse_class_kind(j.at("class_mod_2").get<std::string>());
  r.dw = j.at("dw").get<std::int64_t>();
  r.principal = j.at("principal").get<double>();
  r.nonnegative = j.at("nonnegative").get<double>();
}

[[nodiscard]] inline SplitPattern parse_split_pattern(const std::string& name) {
  for (auto s : {SplitPattern::split6, SplitPattern::split2, SplitPattern::split3})
    if (split_pattern_name(s) == name) return s;
  throw std::invalid_argument("unknown split pattern '" + name + "'");
}

inline void to_json(Json& j, const QExpansionRow& r) {
  j = Json{{"p", r.p},
           {"expected", r.expected},
           {"computed", r.computed},
           {"pattern", std::string(split_pattern_name(r.pattern))},
           {"paired_class", std::string(class_kind_name(r.paired_class))},
           {"paired_dw", r.paired_dw}};
}

inline void from_json(const Json& j, QExpansionRow& r) {
  r.p = j.at("p").get<std::int64_t>();
  r.expected = j.at("expected").get<int>();
  r.computed = j.at("computed").get<int>();
  r.pattern = parse_split_pattern(j.at("pattern").get<std::string>());
  r.paired_class = parse_class_kind(j.at("paired_class").get<std::string>());
  r.paired_dw = j.at("paired_dw").get<int>();
}

inline void to_json(Json& j, const QExpansionReport& r) {
  j = Json{{"rows", r.rows}, {"mismatches", r.mismatches}};
}

inline void from_json(const Json& j, QExpansionReport& r) {
  r.rows = j.at("rows").get<std::vector<QExpansionRow>>();
  r.mismatches = j.at("mismatches").get<std::vector<std::int64_t>>();
}

/// {"schema": 1, "command": ..., "result": ...}
[[nodiscard]] inline Json envelope(const std::string& command, Json result) {
  return Json{{"schema", kJsonSchema}, {"command", command}, {"result", std::move(result)}};
}

}  // namespace mti
