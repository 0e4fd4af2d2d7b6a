#pragma once

// pcclone subcommands. Each *_document builder returns the data of one
// command; run() parses arguments, emits the document and returns the exit
// code, so the whole CLI can be driven in-process.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "output.hpp"
#include "pcclone/pcclone.hpp"

namespace pcclone::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;

inline constexpr int max_table_m = 64;

// Binary entropy in bits.
inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct Bb84Report {
  double fidelity = 0.0;
  double disturbance = 0.0;
  double mutual_info_ab = 0.0;
};

// Eve clones each BB84 qubit with the optimal symmetric 1 -> 2 cloner and
// forwards one clone to Bob. Only the Alice-Bob quantities are computed.
inline Bb84Report bb84_report() {
  Bb84Report r;
  r.fidelity = bound_fidelity(1, 2);
  r.disturbance = 1.0 - r.fidelity;
  r.mutual_info_ab = 1.0 - binary_entropy(r.disturbance);
  return r;
}

// --- bound / figure -----------------------------------------------------------

inline std::int64_t as_int(int v) { return v; }

inline Cell copies_cell(int m) {
  if (is_infinite(m)) return std::string("inf");
  return as_int(m);
}

inline Document bound_document(int n, int m_max) {
  if (n < 1 || m_max < n || m_max > max_table_m) {
    throw InvalidRange("need 1 <= n <= m-max <= " + std::to_string(max_table_m) + ", got n=" +
                       std::to_string(n) + " m-max=" + std::to_string(m_max));
  }
  Document doc;
  doc.command = "bound";
  doc.params = {{"n", as_int(n)}, {"m_max", as_int(m_max)}};
  doc.columns = {"N", "M", "F_pcc_bound", "F_universal"};
  std::vector<int> ms;
  for (int m = n; m <= m_max; ++m) ms.push_back(m);
  ms.push_back(infinite_copies);
  for (int m : ms) {
    const BoundRow row = bound_row(n, m);
    doc.rows.push_back({as_int(n), copies_cell(m), row.f_pcc_bound, row.f_universal});
  }
  return doc;
}

inline Document figure_document(int m_max) {
  if (m_max < 2 || m_max > max_table_m) {
    throw InvalidRange("need 2 <= m-max <= " + std::to_string(max_table_m) + ", got " +
                       std::to_string(m_max));
  }
  Document doc;
  doc.command = "figure";
  doc.params = {{"n", as_int(1)}, {"m_max", as_int(m_max)}};
  doc.metadata = {{"asymptote_pcc", bound_fidelity(1, infinite_copies)},
                  {"asymptote_universal", universal_fidelity(1, infinite_copies)}};
  doc.columns = {"M", "F_pcc_bound", "F_universal"};
  for (int m = 1; m <= m_max; ++m) {
    const BoundRow row = bound_row(1, m);
    doc.rows.push_back({as_int(m), row.f_pcc_bound, row.f_universal});
  }
  return doc;
}

// --- clone ----------------------------------------------------------------------

inline void append_matrix(Fields& fields, const std::string& name, const ComplexMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const std::string idx = std::to_string(r) + std::to_string(c);
      fields.emplace_back(name + "_" + idx + "_re", m(r, c).real());
      fields.emplace_back(name + "_" + idx + "_im", m(r, c).imag());
    }
}

inline nlohmann::ordered_json matrix_json(const ComplexMatrix& m) {
  nlohmann::ordered_json re = nlohmann::ordered_json::array();
  nlohmann::ordered_json im = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json rr = nlohmann::ordered_json::array();
    nlohmann::ordered_json ii = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"re", re}, {"im", im}};
}

inline Document clone_document(double phi, EquatorConvention convention) {
  if (!std::isfinite(phi)) throw InvalidRange("phi must be finite");
  const CloneResult r = clone(phi, convention);
  Document doc;
  doc.command = "clone";
  doc.params = {{"phi", phi}, {"convention", to_string(convention)}};
  Fields report{{"fidelity", r.fidelity}};
  append_matrix(report, "clone_a", r.clone_a);
  append_matrix(report, "clone_b", r.clone_b);
  append_matrix(report, "ancilla", r.ancilla);
  doc.report = report;
  doc.json_report_override = {{"fidelity", r.fidelity},
                              {"clone_a", matrix_json(r.clone_a)},
                              {"clone_b", matrix_json(r.clone_b)},
                              {"ancilla", matrix_json(r.ancilla)}};
  return doc;
}

// --- verify ---------------------------------------------------------------------

struct Check {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

class Verifier {
 public:
  explicit Verifier(std::optional<double> tol_override) : override_(tol_override) {}

  // Records |value| <= tol (or the override).
  void residual(const std::string& suite, const std::string& name, double value, double tol) {
    const double t = override_.value_or(tol);
    checks_.push_back({suite, name, value, t, std::abs(value) <= t});
  }

  const std::vector<Check>& checks() const { return checks_; }

 private:
  std::optional<double> override_;
  std::vector<Check> checks_;
};

inline KrausChannel optimal_12_xy() { return to_xy_convention(optimal_12_clones()); }

inline KrausChannel mp(int n_in, int m_out) {
  return measure_prepare_channel(n_in, m_out, default_node_count(n_in));
}

inline void suite_covariance(Verifier& v) {
  const std::string s = "covariance";
  const double tol = construction_tol;
  const KrausChannel identity(1, 1, {ComplexMatrix::identity(2)});
  v.residual(s, "identity", check_phase_covariance(identity, 16, tol).max_residual, tol);
  v.residual(s, "optimal_1to2_xy", check_phase_covariance(optimal_12_xy(), 16, tol).max_residual,
             tol);
  v.residual(s, "optimal_1to2_xy_gamma",
             covariance_constraint_residual(
                 gamma_from_kraus(reduced_single_qubit_map(optimal_12_xy(), 1, 0))),
             tol);
  for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 3}}) {
    v.residual(s, "measure_prepare_" + std::to_string(n) + "to" + std::to_string(m),
               check_phase_covariance(mp(n, m), 16, tol).max_residual, tol);
  }
}

inline void suite_concatenation(Verifier& v) {
  const std::string s = "concatenation";
  const double tol = quadrature_tol;
  struct Pair {
    std::string name;
    KrausChannel first, second;
  };
  const std::vector<Pair> pairs{
      {"optimal_1to2+mp_2to1", optimal_12_xy(), mp(2, 1)},
      {"optimal_1to2+mp_2to2", optimal_12_xy(), mp(2, 2)},
      {"optimal_1to2+mp_2to3", optimal_12_xy(), mp(2, 3)},
      {"mp_1to2+mp_2to1", mp(1, 2), mp(2, 1)},
      {"mp_1to1+mp_1to2", mp(1, 1), mp(1, 2)},
  };
  for (const auto& p : pairs) {
    v.residual(s, p.name, concatenation_check(p.first, p.second).residual, tol);
  }
  const auto chain = concatenation_check(pairs[0].first, pairs[0].second);
  v.residual(s, "saturation_eta_minus_pe1", chain.eta_measured - pe_shrink_closed(1), tol);
}

inline void suite_estimation(Verifier& v) {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double numeric = pe_fidelity_numeric(n, default_node_count(n)).mean_fidelity;
    worst = std::max(worst, std::abs(numeric - pe_fidelity_closed(n)));
  }
  v.residual("estimation", "max_n_closed_minus_numeric", worst, construction_tol);
}

inline void suite_optimum(Verifier& v) {
  const std::string s = "optimum";
  const Optimum opt = optimize();
  const double f_star = 0.5 + std::sqrt(0.125);
  v.residual(s, "fidelity_minus_analytic", opt.fidelity - f_star, 1e-9);
  v.residual(s, "fidelity_minus_bound", opt.fidelity - bound_fidelity(1, 2), 1e-9);
  v.residual(s, "a_minus_analytic", opt.coeffs.a - OptimalCoefficients::a, 1e-6);
  v.residual(s, "b_minus_analytic", opt.coeffs.b - OptimalCoefficients::b, 1e-6);
  v.residual(s, "c_minus_analytic", opt.coeffs.c - OptimalCoefficients::c, 1e-6);
  const OverlapReport ov = verify_overlaps(opt.coeffs);
  v.residual(s, "unitarity_residual", ov.unitarity_residual, construction_tol);
  v.residual(s, "overlap_fidelity_gap", ov.overlap_fidelity_gap, construction_tol);
  v.residual(s, "cross_overlap_residual", ov.cross_overlap_residual, construction_tol);
}

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"covariance", "concatenation", "estimation",
                                              "optimum", "all"};
  return names;
}

inline std::vector<Check> run_verification(const std::string& suite,
                                           std::optional<double> tol_override) {
  Verifier v(tol_override);
  const bool all = suite == "all";
  if (all || suite == "covariance") suite_covariance(v);
  if (all || suite == "concatenation") suite_concatenation(v);
  if (all || suite == "estimation") suite_estimation(v);
  if (all || suite == "optimum") suite_optimum(v);
  return v.checks();
}

// --- estimate / optimize / bb84 -------------------------------------------------

inline Document estimate_document(int n, std::optional<int> nodes) {
  const int k = nodes.value_or(default_node_count(n));
  const EstimationReport r = pe_fidelity_numeric(n, k);
  const double closed = pe_fidelity_closed(n);
  Document doc;
  doc.command = "estimate";
  doc.params = {{"n", as_int(n)}, {"nodes", as_int(k)}};
  doc.report = Fields{{"fidelity_numeric", r.mean_fidelity},
                      {"fidelity_closed", closed},
                      {"abs_difference", std::abs(r.mean_fidelity - closed)},
                      {"shrink_numeric", r.shrink},
                      {"shrink_closed", pe_shrink_closed(n)},
                      {"total_probability", r.total_probability}};
  return doc;
}

inline Document optimize_document(bool force_equal_ac) {
  OptimizerOptions options;
  options.force_equal_ac = force_equal_ac;
  const Optimum opt = optimize(options);
  const OverlapReport ov = verify_overlaps(opt.coeffs);
  Document doc;
  doc.command = "optimize";
  doc.params = {{"seeds", as_int(options.seeds)}, {"force_equal_ac", force_equal_ac}};
  doc.report = Fields{{"a", opt.coeffs.a},
                      {"b", opt.coeffs.b},
                      {"c", opt.coeffs.c},
                      {"fidelity", opt.fidelity},
                      {"theta", opt.theta},
                      {"evaluations", static_cast<std::int64_t>(opt.iterations)},
                      {"converged", opt.converged},
                      {"unitarity_residual", ov.unitarity_residual},
                      {"overlap_fidelity", ov.overlap_fidelity},
                      {"overlap_fidelity_target", ov.overlap_fidelity_target},
                      {"cross_overlap_residual", ov.cross_overlap_residual}};
  return doc;
}

inline Document bb84_document() {
  const Bb84Report r = bb84_report();
  Document doc;
  doc.command = "bb84";
  doc.report = Fields{{"fidelity", r.fidelity},
                      {"disturbance", r.disturbance},
                      {"mutual_info_ab", r.mutual_info_ab}};
  return doc;
}

// --- dispatch -------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-covariant quantum cloning toolkit", "pcclone"};
  app.require_subcommand(1);

  // PCCLONE_FORMAT supplies the default; an explicit --format overrides it.
  const char* env_format = std::getenv("PCCLONE_FORMAT");
  std::string format_text = env_format && *env_format ? env_format : "csv";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format")
        ->check(CLI::IsMember({"csv", "json", "tsv"}));
  };

  int n = 1;
  int m_max = 2;
  auto* bound = app.add_subcommand("bound", "Fidelity bound table for N -> M cloning");
  bound->add_option("--n", n, "Number of input copies")->required();
  bound->add_option("--m-max", m_max, "Largest finite M")->required();
  add_format(bound);

  int fig_m_max = 30;
  auto* figure = app.add_subcommand("figure", "N=1 bound and universal series for plotting");
  figure->add_option("--m-max", fig_m_max, "Largest M")->required();
  add_format(figure);

  double phi = 0.0;
  std::string convention = "xz";
  auto* clone_cmd = app.add_subcommand("clone", "Run the optimal 1 -> 2 cloner");
  clone_cmd->add_option("--phi", phi, "Equatorial angle")->required();
  clone_cmd->add_option("--convention", convention, "Equator convention")
      ->check(CLI::IsMember({"xy", "xz"}));
  add_format(clone_cmd);

  std::string suite = "all";
  std::optional<double> tol;
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify_suites()));
  verify->add_option("--tol", tol, "Override every tolerance");
  add_format(verify);

  auto* bb84 = app.add_subcommand("bb84", "BB84 disturbance under the optimal cloner");
  add_format(bb84);

  int est_n = 1;
  std::optional<int> nodes;
  auto* estimate = app.add_subcommand("estimate", "Covariant phase estimation fidelity");
  estimate->add_option("--n", est_n, "Number of copies")->required();
  estimate->add_option("--nodes", nodes, "Quadrature nodes");
  add_format(estimate);

  bool force_equal_ac = false;
  auto* optimize_cmd = app.add_subcommand("optimize", "Re-derive the optimal 1 -> 2 cloner");
  optimize_cmd->add_flag("--force-equal-ac", force_equal_ac, "Restrict to a = c");
  add_format(optimize_cmd);

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  const auto parsed_format = parse_format(format_text);
  if (!parsed_format) {
    err << "unknown output format '" << format_text << "' (expected csv, json or tsv)\n";
    return exit_usage;
  }
  const OutputFormat fmt = *parsed_format;
  try {
    Document doc;
    if (bound->parsed()) {
      doc = bound_document(n, m_max);
    } else if (figure->parsed()) {
      doc = figure_document(fig_m_max);
    } else if (clone_cmd->parsed()) {
      doc = clone_document(phi, convention == "xy" ? EquatorConvention::xy : EquatorConvention::xz);
    } else if (bb84->parsed()) {
      doc = bb84_document();
    } else if (estimate->parsed()) {
      doc = estimate_document(est_n, nodes);
    } else if (optimize_cmd->parsed()) {
      doc = optimize_document(force_equal_ac);
    } else if (verify->parsed()) {
      const auto checks = run_verification(suite, tol);
      doc.command = "verify";
      doc.params = {{"suite", suite}};
      if (tol) doc.params.emplace_back("tol", *tol);
      doc.columns = {"suite", "check", "value", "tolerance", "pass"};
      bool ok = true;
      for (const auto& c : checks) {
        doc.rows.push_back({c.suite, c.name, c.value, c.tolerance, c.pass});
        if (!c.pass) {
          ok = false;
          err << "FAILED " << c.suite << '/' << c.name << ": |" << format_number(c.value)
              << "| > " << format_number(c.tolerance) << '\n';
        }
      }
      emit(out, doc, fmt);
      return ok ? exit_ok : exit_verification_failed;
    }
    emit(out, doc, fmt);
    return exit_ok;
  } catch (const pcclone::error& e) {
    err << "pcclone: " << e.what() << '\n';
    return exit_usage;
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace pcclone::cli
