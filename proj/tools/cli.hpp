#pragma once

// Command-line front end. run() is kept separate from main() so the tests
// can drive it with captured streams.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include "mti/json_io.hpp"
#include "mti/mti.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mti::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

enum class Format { text, json };

struct Config {
  std::string subcommand;
  std::string matrix;
  std::int64_t prime = 0;
  std::string trace;
  std::int64_t tmax = 0;
  std::int64_t level = 0;
  std::int64_t d = 2;
  std::int64_t pmax = 100;
  Format format = Format::text;
  std::string csv_path;
  std::string json_path;
  unsigned threads = 1;
  bool subtract_identity = false;
  bool skip_symplectic_check = false;
  bool count_only = false;
  bool oracle = false;
};

/// Inline JSON if the argument starts with '[', otherwise a path to a JSON file.
[[nodiscard]] inline IntMatrix<BigInt> read_matrix(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text = arg;
  if (first == std::string::npos || arg[first] != '[') {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("--matrix is neither inline JSON nor a readable file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed matrix JSON: ") + e.what());
  }
  return j.get<IntMatrix<BigInt>>();
}

[[nodiscard]] inline Sl2Matrix<BigInt> read_sl2(const std::string& arg) {
  return Sl2Matrix<BigInt>::from_matrix(read_matrix(arg));
}

[[nodiscard]] inline SymplecticCheck symplectic_check(const Config& cfg) {
  return cfg.skip_symplectic_check ? SymplecticCheck::skip : SymplecticCheck::enforce;
}

[[nodiscard]] inline std::string format_complex(std::complex<double> z, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

inline void emit_json(std::ostream& out, const std::string& command, Json result) {
  out << envelope(command, std::move(result)).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_snf(const Config& cfg, std::ostream& out) {
  IntMatrix<BigInt> m = read_matrix(cfg.matrix);
  if (cfg.subtract_identity) {
    if (!m.is_square()) throw std::invalid_argument("--subtract-identity needs a square matrix");
    m = m - IntMatrix<BigInt>::identity(m.rows());
  }
  const auto snf = smith_normal_form(m);
  if (cfg.format == Format::json) {
    emit_json(out, "snf", snf);
    return kExitOk;
  }
  out << "diag [";
  for (std::size_t i = 0; i < snf.diag.size(); ++i) out << (i ? ", " : "") << to_string(snf.diag[i]);
  out << "]\nleft " << snf.left.str() << "\nright " << snf.right.str() << '\n';
  return kExitOk;
}

inline int cmd_dw(const Config& cfg, std::ostream& out) {
  const IntMatrix<BigInt> m = read_matrix(cfg.matrix);
  require_prime(cfg.prime);
  const DwValue v = (m.rows() == 2 && m.cols() == 2)
                        ? dw_invariant_sl2(Sl2Matrix<BigInt>::from_matrix(m), cfg.prime)
                        : dw_invariant_genus_g(m, cfg.prime, symplectic_check(cfg));
  if (cfg.format == Format::json) emit_json(out, "dw", v);
  else out << to_string(v.value) << '\n';
  return kExitOk;
}

inline int cmd_classify(const Config& cfg, std::ostream& out) {
  const auto a = read_sl2(cfg.matrix);
  require_prime(cfg.prime);
  const ClassLabel label = cfg.prime == 2 ? classify_mod_2(a) : classify_mod_p(a, cfg.prime);
  if (cfg.format == Format::json) {
    emit_json(out, "classify", label);
    return kExitOk;
  }
  out << class_kind_name(label.kind) << " p=" << label.p << " trace=" << label.trace_mod_p;
  if (label.qr_flag) out << " qr=" << (*label.qr_flag ? "yes" : "no");
  out << '\n';
  return kExitOk;
}

inline int cmd_homology(const Config& cfg, std::ostream& out) {
  const IntMatrix<BigInt> m = read_matrix(cfg.matrix);
  const AbelianGroup<BigInt> h = (m.rows() == 2 && m.cols() == 2)
                                     ? genus1_homology(Sl2Matrix<BigInt>::from_matrix(m))
                                     : mapping_torus_homology(m, symplectic_check(cfg));
  if (cfg.format == Format::json) emit_json(out, "homology", h);
  else out << h.str() << '\n';
  return kExitOk;
}

inline int cmd_classes(const Config& cfg, std::ostream& out) {
  if (!cfg.trace.empty()) {
    const BigInt t = parse_bigint(cfg.trace);
    const Json reps = classes_with_trace(t);
    if (cfg.format == Format::json) emit_json(out, "classes", reps);
    else out << reps.dump(2) << '\n';
    return kExitOk;
  }
  if (cfg.tmax < 4) throw std::invalid_argument("classes needs --trace t or --tmax T with T >= 4");
  const PrimeTable primes;
  if (cfg.count_only) {
    Json rows = Json::array();
    if (cfg.format == Format::text) out << "trace classes(t) classes(-t)\n";
    for (std::int64_t t = 3; t < cfg.tmax; ++t) {
      const auto pos = classes_with_trace<std::int64_t>(t, primes).size();
      const auto neg = classes_with_trace<std::int64_t>(-t, primes).size();
      if (cfg.format == Format::text) out << t << ' ' << pos << ' ' << neg << '\n';
      rows.push_back(Json{{"trace", t}, {"classes", pos}, {"classes_negative", neg}});
    }
    if (cfg.format == Format::json) emit_json(out, "classes", rows);
    return kExitOk;
  }
  Json reps = Json::array();
  for_each_class_below<std::int64_t>(cfg.tmax, [&](const ClassRep<std::int64_t>& r) { reps.push_back(r); });
  if (cfg.format == Format::json) emit_json(out, "classes", reps);
  else out << reps.dump(2) << '\n';
  return kExitOk;
}

inline constexpr const char* kCensusCsvHeader = "T,total,c1,c2,unipotent,rest,dw_sum,snf_id,snf_unip,snf_rest,li_T2";

inline void write_census_csv(const CensusReport& report, std::ostream& out) {
  out << kCensusCsvHeader << '\n';
  for (const auto& s : report.checkpoints) {
    out << s.bound << ',' << s.total << ',' << s.count(ClassKind::C1) << ',' << s.count(ClassKind::C2) << ','
        << s.unipotent << ',' << s.rest() << ',' << s.dw_sum << ',' << s.snf_id << ',' << s.snf_unip << ','
        << s.snf_rest << ',' << std::fixed << std::setprecision(6) << s.li_T2 << std::defaultfloat << '\n';
  }
}

[[nodiscard]] inline Json census_json(const CensusReport& report) {
  return Json{{"report", report},
              {"density", density_report(report)},
              {"constants", theorem_constants(report)}};
}

inline void write_census_text(const CensusReport& report, std::ostream& out) {
  const auto& s = report.final;
  out << "p=" << report.p << " T=" << report.tmax << " classes=" << s.total << " li(T^2)=" << std::fixed
      << std::setprecision(3) << s.li_T2 << '\n';
  out << std::left << std::setw(10) << "label" << std::right << std::setw(10) << "count" << std::setw(12)
      << "empirical" << std::setw(12) << "predicted" << std::setw(12) << "deviation" << '\n';
  for (const auto& r : density_report(report)) {
    out << std::left << std::setw(10) << r.label << std::right << std::setw(10) << r.count << std::setprecision(6)
        << std::setw(12) << r.empirical << std::setw(12) << r.predicted << std::setw(12) << r.deviation << '\n';
  }
  const auto c = theorem_constants(report);
  out << std::setprecision(6) << "dw constant: empirical " << c.dw_constant << ", printed " << c.claimed_dw
      << ", table-derived " << c.derived_dw << '\n';
  const char* names[3] = {"snf (p|A1, p|A2)", "snf (p!|A1, p|A2)", "snf (p!|A1, p!|A2)"};
  for (std::size_t i = 0; i < 3; ++i)
    out << names[i] << ": empirical " << c.snf_constants[i] << ", printed " << c.claimed_snf[i] << ", table-derived "
        << c.derived_snf[i] << '\n';
  out << "off-chain (p|A1, p!|A2) count: " << s.snf_off_chain << '\n' << std::defaultfloat;
}

inline int cmd_census(const Config& cfg, std::ostream& out) {
  if (cfg.tmax < 10) throw std::invalid_argument("census needs --tmax >= 10");
  if (cfg.threads < 1) throw std::invalid_argument("--threads must be positive");
  if (cfg.csv_path == "-" && cfg.json_path == "-")
    throw std::invalid_argument("--csv - and --json - cannot both write to stdout");
  const CensusReport report = census(cfg.prime, cfg.tmax, cfg.threads);
  bool wrote_stdout = false;
  if (!cfg.csv_path.empty()) {
    if (cfg.csv_path == "-") {
      write_census_csv(report, out);
      wrote_stdout = true;
    } else {
      std::ofstream f(cfg.csv_path);
      if (!f) throw std::invalid_argument("cannot open " + cfg.csv_path);
      write_census_csv(report, f);
    }
  }
  if (!cfg.json_path.empty()) {
    if (cfg.json_path == "-") {
      emit_json(out, "census", census_json(report));
      wrote_stdout = true;
    } else {
      std::ofstream f(cfg.json_path);
      if (!f) throw std::invalid_argument("cannot open " + cfg.json_path);
      emit_json(f, "census", census_json(report));
    }
  }
  if (!wrote_stdout) {
    if (cfg.format == Format::json) emit_json(out, "census", census_json(report));
    else write_census_text(report, out);
  }
  return kExitOk;
}

inline constexpr double kLambdaPrintedTolerance = 1e-5;
inline constexpr double kZ2FormulaAgreement = 1e-8;

inline int cmd_lambda_check(const Config& cfg, std::ostream& out) {
  Json values = Json::array();
  for (const auto& ref : kLambdaReferenceValues) {
    const Complex got = lambda(mobius(anharmonic_word(ref.label), zeta3()));
    const double diff = std::abs(got - ref.value);
    values.push_back(Json{{"element", std::string(anharmonic_name(ref.label))},
                          {"printed", complex_to_json(ref.value)},
                          {"computed", complex_to_json(got)},
                          {"difference", diff},
                          {"pass", diff <= kLambdaPrintedTolerance}});
  }
  Json formula = Json::array();
  for (const auto& row : z2_formula_table()) {
    Json j = row;
    j["agrees"] = std::abs(row.principal - double(row.dw)) <= kZ2FormulaAgreement;
    formula.push_back(j);
  }
  if (cfg.format == Format::json) {
    emit_json(out, "lambda-check",
              Json{{"values", values}, {"z2_formula", formula}, {"branch", "principal"},
                   {"tolerance", kLambdaPrintedTolerance}});
    return kExitOk;
  }
  out << std::left << std::setw(10) << "g" << std::setw(24) << "printed lambda(g zeta3)" << std::setw(34)
      << "computed" << std::setw(12) << "|diff|" << "status\n";
  for (const auto& v : values) {
    const Complex printed = complex_from_json(v["printed"]), got = complex_from_json(v["computed"]);
    out << std::setw(10) << v["element"].get<std::string>() << std::setw(24) << format_complex(printed, 6)
        << std::setw(34) << format_complex(got, 12) << std::setw(12) << std::setprecision(3)
        << v["difference"].get<double>() << (v["pass"].get<bool>() ? "pass" : "FAIL") << '\n';
  }
  out << "\nZ/2 formula |3 log(lambda(A zeta3)) / (2 pi i)|^-1 against Z(M(A), Z/2)\n";
  out << std::setw(10) << "A" << std::setw(8) << "class" << std::setw(6) << "Z" << std::setw(14) << "principal"
      << std::setw(14) << "[0, 2pi)" << "status\n";
  for (const auto& row : z2_formula_table()) {
    const bool agrees = std::abs(row.principal - double(row.dw)) <= kZ2FormulaAgreement;
    out << std::setw(10) << anharmonic_name(row.label) << std::setw(8) << class_kind_name(row.class_mod_2)
        << std::setw(6) << row.dw << std::setprecision(8) << std::setw(14) << row.principal << std::setw(14)
        << row.nonnegative << (agrees ? "agree" : "FLAG") << '\n';
  }
  out << std::right;
  return kExitOk;
}

inline int cmd_csw(const Config& cfg, std::ostream& out) {
  const auto a = read_sl2(cfg.matrix);
  if (cfg.level < 1) throw std::invalid_argument("--level must be positive");
  const auto z = csw_invariant(a, cfg.level);
  const auto printed = csw_invariant(a, cfg.level, kPrintedConvention);
  Json j{{"level", cfg.level},
         {"modulus_N", csw_level_modulus(cfg.level)},
         {"gauss_sum", complex_to_json(z)},
         {"printed_convention", complex_to_json(printed)}};
  std::optional<std::complex<double>> rt;
  if (cfg.oracle) {
    rt = rep_trace(a, cfg.level);
    j["rep_trace"] = complex_to_json(*rt);
    j["modulus_difference"] = std::abs(std::abs(z) - std::abs(*rt));
    j["phase_difference"] = std::abs(*rt) > 1e-12 && std::abs(z) > 1e-12 ? Json(std::arg(z / *rt)) : Json(nullptr);
  }
  if (cfg.format == Format::json) {
    emit_json(out, "csw", j);
    return kExitOk;
  }
  out << "gauss sum (level k+2, Q_A(y,x), minus sign): " << format_complex(z) << '\n';
  out << "printed convention (level k, Q_A(x,y), plus sign): " << format_complex(printed) << '\n';
  if (rt) {
    out << "rep trace: " << format_complex(*rt) << '\n';
    out << "modulus difference: " << j["modulus_difference"].get<double>() << '\n';
    if (j["phase_difference"].is_null()) out << "phase difference: undefined (zero value)\n";
    else out << "phase difference: " << j["phase_difference"].get<double>() << " rad\n";
  }
  return kExitOk;
}

inline int cmd_modform(const Config& cfg, std::ostream& out) {
  if (cfg.d <= 1 || !is_cube_free(cfg.d)) throw std::invalid_argument("--d must be a cube-free integer > 1");
  Json rows = Json::array();
  std::vector<std::int64_t> mismatches;
  if (cfg.d == 2) {
    const auto report = qexpansion_check(cfg.pmax);
    rows = report.rows;
    mismatches = report.mismatches;
  } else {
    for (std::int64_t p = 2; p < cfg.pmax; ++p) {
      if (!is_prime(p) || p == 3 || cfg.d % p == 0) continue;
      const auto split = cubic_split(cfg.d, p);
      rows.push_back(Json{{"p", p},
                          {"computed", ap_coefficient(cfg.d, p)},
                          {"pattern", std::string(split_pattern_name(split.pattern))},
                          {"paired_class", std::string(class_kind_name(paired_class_for(split.pattern)))},
                          {"paired_dw", dw_mod_2_of(paired_class_for(split.pattern))}});
    }
  }
  if (cfg.format == Format::json) {
    emit_json(out, "modform", Json{{"d", cfg.d}, {"rows", rows}, {"mismatches", mismatches}});
    return kExitOk;
  }
  out << std::setw(5) << "p" << std::setw(9) << "pattern" << std::setw(6) << "a_p" << std::setw(10) << "expected"
      << std::setw(7) << "class" << std::setw(4) << "Z" << std::setw(6) << "Z+2" << '\n';
  for (const auto& r : rows) {
    out << std::setw(5) << r["p"].get<std::int64_t>() << std::setw(9) << r["pattern"].get<std::string>()
        << std::setw(6) << r["computed"].get<int>() << std::setw(10)
        << (r.contains("expected") ? std::to_string(r["expected"].get<int>()) : std::string("-")) << std::setw(7)
        << r["paired_class"].get<std::string>() << std::setw(4) << r["paired_dw"].get<int>() << std::setw(6)
        << r["paired_dw"].get<int>() + 2 << '\n';
  }
  if (cfg.d == 2) out << (mismatches.empty() ? "all tabulated coefficients match\n" : "MISMATCH\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Dijkgraaf-Witten invariants of mapping tori, SL(2, Z) class census and related checks", "mti"};
  app.require_subcommand(1, 1);
  std::string format = "text";
  app.add_option("--format", format, "Output format: text or json")->check(CLI::IsMember({"text", "json"}));

  auto* snf = app.add_subcommand("snf", "Smith normal form with certificates");
  snf->add_option("--matrix", cfg.matrix, "Matrix as JSON (array of rows of decimal strings) or a file")->required();
  snf->add_flag("--subtract-identity", cfg.subtract_identity, "Use M - Id");

  auto add_symplectic_flag = [&](CLI::App* sub) {
    sub->add_flag("--no-symplectic-check", cfg.skip_symplectic_check, "Accept 2g x 2g input that is not symplectic");
  };

  auto* dw = app.add_subcommand("dw", "Z(M(A), Z/p)");
  dw->add_option("--matrix", cfg.matrix, "SL(2, Z) or symplectic 2g x 2g matrix")->required();
  dw->add_option("--prime", cfg.prime, "Prime p")->required();
  add_symplectic_flag(dw);

  auto* classify = app.add_subcommand("classify", "Conjugacy class of A mod p");
  classify->add_option("--matrix", cfg.matrix, "SL(2, Z) matrix")->required();
  classify->add_option("--prime", cfg.prime, "Prime p")->required();

  auto* homology = app.add_subcommand("homology", "H_1 of the mapping torus");
  homology->add_option("--matrix", cfg.matrix, "SL(2, Z) or symplectic 2g x 2g matrix")->required();
  add_symplectic_flag(homology);

  auto* classes = app.add_subcommand("classes", "Hyperbolic conjugacy classes by trace");
  auto* trace_opt = classes->add_option("--trace", cfg.trace, "Trace t with |t| > 2");
  auto* tmax_opt = classes->add_option("--tmax", cfg.tmax, "All classes with 3 <= |t| < T");
  classes->add_flag("--count-only", cfg.count_only, "Per-trace class counts only")->needs(tmax_opt);
  trace_opt->excludes(tmax_opt);

  auto* cen = app.add_subcommand("census", "Class census and density report");
  cen->add_option("--prime", cfg.prime, "Prime p")->required();
  cen->add_option("--tmax", cfg.tmax, "Trace bound T >= 10")->required();
  cen->add_option("--csv", cfg.csv_path, "Checkpoint CSV to a file or - for stdout");
  cen->add_option("--json", cfg.json_path, "JSON report to a file or - for stdout");
  cen->add_option("--threads", cfg.threads, "Worker threads")->envname("MTI_THREADS")->check(CLI::PositiveNumber);

  auto* lam = app.add_subcommand("lambda-check", "Lambda values at g(zeta_3) and the Z/2 formula");

  auto* csw = app.add_subcommand("csw", "SU(2) level-k Gauss sum");
  csw->add_option("--matrix", cfg.matrix, "Hyperbolic SL(2, Z) matrix")->required();
  csw->add_option("--level", cfg.level, "Level k >= 1")->required();
  csw->add_flag("--oracle", cfg.oracle, "Also evaluate the modular-data trace");

  auto* mod = app.add_subcommand("modform", "Weight-one coefficients a_p");
  mod->add_option("--d", cfg.d, "Cube-free d > 1");
  mod->add_option("--pmax", cfg.pmax, "Primes below this bound");

  // Global options may also follow the subcommand.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  cfg.format = format == "json" ? Format::json : Format::text;

  try {
    if (snf->parsed()) return cmd_snf(cfg, out);
    if (dw->parsed()) return cmd_dw(cfg, out);
    if (classify->parsed()) return cmd_classify(cfg, out);
    if (homology->parsed()) return cmd_homology(cfg, out);
    if (classes->parsed()) return cmd_classes(cfg, out);
    if (cen->parsed()) return cmd_census(cfg, out);
    if (lam->parsed()) return cmd_lambda_check(cfg, out);
    if (csw->parsed()) return cmd_csw(cfg, out);
    if (mod->parsed()) return cmd_modform(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << app.help();
  return kExitUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"mti"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace mti::cli
