// Acceptance criteria: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--expect-fail i,j,...]
// Without the flag the exit status is 0 iff every criterion passes. With it,
// the exit status is 0 iff exactly the listed criteria fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "pcclone/pcclone.hpp"

using namespace pcclone;

namespace {

constexpr double pi = std::numbers::pi;
const double f_star = 0.5 + std::sqrt(0.125);

// Independent 40-digit reference values.
constexpr double oracle_f_pe[] = {0.0, 0.75, 0.85355339059327376220, 0.90400635094610966169};
constexpr double oracle_mutual_info = 0.3991239633071438992;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double v) { return cli::format_number(v); }

KrausChannel mp(int n, int m) { return measure_prepare_channel(n, m, default_node_count(n)); }
KrausChannel optimal_xy() { return to_xy_convention(optimal_12_clones()); }

Outcome bound_saturation() {
  Outcome o;
  const double f = bound_fidelity(1, 2);
  o.require(std::abs(f - f_star) <= 1e-12, "bound_fidelity(1,2) = " + num(f));
  double worst = 0.0;
  for (auto conv : {EquatorConvention::xy, EquatorConvention::xz})
    for (int j = 0; j < 128; ++j)
      worst = std::max(worst, std::abs(clone(2 * pi * j / 128, conv).fidelity - f));
  o.require(worst <= 1e-12, "max |F_clone - bound| = " + num(worst));
  o.detail = o.pass ? "F=" + num(f) + " max|dF|=" + num(worst) : o.detail;
  return o;
}

Outcome figure_reproduction() {
  Outcome o;
  for (int m = 2; m <= 30; ++m) {
    o.require(bound_fidelity(1, m) > universal_fidelity(1, m), "pcc <= universal at M=" + std::to_string(m));
  }
  for (int m = 1; m < 30; ++m) {
    o.require(bound_fidelity(1, m + 1) < bound_fidelity(1, m), "pcc not decreasing at M=" + std::to_string(m));
    o.require(universal_fidelity(1, m + 1) < universal_fidelity(1, m), "universal not decreasing at M=" + std::to_string(m));
  }
  for (int m = 1; m <= 30; ++m) {
    o.require(bound_fidelity(1, m) > 0.75, "pcc below 3/4 at M=" + std::to_string(m));
    o.require(universal_fidelity(1, m) > 2.0 / 3.0, "universal below 2/3 at M=" + std::to_string(m));
  }
  o.require(bound_fidelity(1, infinite_copies) == 0.75, "pcc asymptote");
  o.require(universal_fidelity(1, infinite_copies) == 2.0 / 3.0, "universal asymptote");
  const double gap = std::abs(bound_fidelity(1, 30) - 0.75);
  o.require(gap < 0.01, "|F(1,30) - 3/4| = " + num(gap));
  if (o.pass) o.detail = "|F(1,30)-0.75|=" + num(gap);
  return o;
}

Outcome phase_estimation_oracle() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const double numeric = pe_fidelity_numeric(n, default_node_count(n)).mean_fidelity;
    worst = std::max(worst, std::abs(numeric - pe_fidelity_closed(n)));
  }
  o.require(worst <= 1e-10, "max |numeric - closed| = " + num(worst));
  for (int n = 1; n <= 3; ++n) {
    o.require(std::abs(pe_fidelity_closed(n) - oracle_f_pe[n]) <= 1e-12,
              "closed form off at n=" + std::to_string(n));
  }
  o.require(default_node_count(8) <= 40, "node count");
  if (o.pass) o.detail = "max|numeric-closed|=" + num(worst);
  return o;
}

Outcome shrink_factor_extraction() {
  Outcome o;
  const double target = 1.0 / std::numbers::sqrt2;
  const GammaMatrix g = gamma_from_kraus(reduced_single_qubit_map(optimal_xy(), 1, 0));
  const double residual = covariance_constraint_residual(g);
  o.require(residual <= 1e-10, "covariance residual " + num(residual));
  const ShrinkFactors s = shrink_from_gamma(g);
  o.require(std::abs(s.eta_xy - target) <= 1e-10, "cloner eta_xy = " + num(s.eta_xy));
  o.require(std::abs(s.eta_z - target) <= 1e-10,
            "cloner eta_z = " + num(s.eta_z) + ", target 0.7071068");

  const ShrinkFactors id = shrink_from_gamma(gamma_from_kraus(KrausChannel(1, 1, {ComplexMatrix::identity(2)})));
  o.require(id.eta_xy == 1.0 && id.eta_z == 1.0, "identity shrink");
  const ShrinkFactors m = shrink_from_gamma(gamma_from_kraus(reduced_single_qubit_map(mp(1, 1), 1)));
  o.require(std::abs(m.eta_xy - 0.5) <= 1e-8 && std::abs(m.eta_z) <= 1e-8,
            "measure-prepare shrink (" + num(m.eta_xy) + ", " + num(m.eta_z) + ")");
  if (o.pass) o.detail = "cloner (" + num(s.eta_xy) + ", " + num(s.eta_z) + ")";
  return o;
}

Outcome concatenation() {
  Outcome o;
  const struct {
    const char* name;
    KrausChannel first, second;
  } pairs[] = {
      {"opt+mp21", optimal_xy(), mp(2, 1)}, {"opt+mp23", optimal_xy(), mp(2, 3)},
      {"mp12+mp21", mp(1, 2), mp(2, 1)},    {"mp11+mp12", mp(1, 1), mp(1, 2)},
      {"mp12+mp23", mp(1, 2), mp(2, 3)},
  };
  double worst = 0.0;
  for (const auto& p : pairs) {
    const double r = concatenation_check(p.first, p.second).residual;
    worst = std::max(worst, r);
    o.require(r <= 1e-8, std::string(p.name) + " residual " + num(r));
  }
  const double eta = concatenation_check(optimal_xy(), mp(2, 1)).eta_measured;
  o.require(std::abs(eta - 0.5) <= 1e-8 && std::abs(eta - pe_shrink_closed(1)) <= 1e-8,
            "saturation eta = " + num(eta));
  if (o.pass) o.detail = "max residual " + num(worst) + ", chain eta=" + num(eta);
  return o;
}

Outcome optimizer_recovery() {
  Outcome o;
  const Optimum opt = optimize();
  const double a = f_star, b = std::sqrt(0.125), c = 1.0 - f_star;
  o.require(opt.converged, "not converged");
  o.require(std::abs(opt.coeffs.a - a) <= 1e-6 && std::abs(opt.coeffs.b - b) <= 1e-6 &&
                std::abs(opt.coeffs.c - c) <= 1e-6,
            "coefficients off");
  o.require(std::abs(opt.fidelity - f_star) <= 1e-9, "fidelity " + num(opt.fidelity));
  for (const auto& p : opt.seed_results) {
    o.require(std::abs(p.a - a) <= 1e-6 && std::abs(p.c - c) <= 1e-6 && std::abs(p.fidelity - f_star) <= 1e-9,
              "seed at theta=" + num(p.theta) + " disagrees");
  }
  const OverlapReport ov = verify_overlaps(opt.coeffs);
  o.require(ov.unitarity_residual <= 1e-10, "unitarity residual " + num(ov.unitarity_residual));
  o.require(ov.cross_overlap_residual <= 1e-10, "cross-overlap residual " + num(ov.cross_overlap_residual));
  if (o.pass) o.detail = std::to_string(opt.seed_results.size()) + " seeds, F=" + num(opt.fidelity);
  return o;
}

Outcome fidelity_constancy() {
  Outcome o;
  using K = OptimalCoefficients;
  double lo = 1.0, hi = 0.0, worst = 0.0;
  for (int j = 0; j < 100; ++j) {
    const double alpha = -1.0 + 2.0 * j / 99.0;
    const double closed = equator_fidelity_closed(alpha, K::a, K::b, K::c);
    lo = std::min(lo, closed);
    hi = std::max(hi, closed);
    worst = std::max(worst, std::abs(clone(2 * std::acos(alpha), EquatorConvention::xz).fidelity - closed));
  }
  o.require(hi - lo <= 1e-9, "closed form spread " + num(hi - lo));
  o.require(worst <= 1e-10, "simulation vs closed " + num(worst));
  if (o.pass) o.detail = "spread " + num(hi - lo) + ", sim gap " + num(worst);
  return o;
}

Outcome inequality_suite() {
  Outcome o;
  const PureState psi = equatorial_state(0.4, EquatorConvention::xy);
  const double f_mp = fidelity_pure(psi, reduced_output(mp(1, 2), projector(psi), 0));
  const double f_opt = clone(0.4, EquatorConvention::xy).fidelity;
  o.require(std::abs(f_mp - 0.75) <= 1e-8, "measure-prepare fidelity " + num(f_mp));
  o.require(f_mp < f_opt, "measure-prepare not below optimal");
  const struct {
    KrausChannel ch;
    int n, m;
  } set[] = {{optimal_xy(), 1, 2}, {mp(1, 2), 1, 2}, {mp(1, 3), 1, 3}, {mp(2, 3), 2, 3},
             {compose(optimal_xy(), mp(2, 3)), 1, 3}};
  for (const auto& c : set)
    for (int k = 0; k < c.m; ++k) {
      const ShrinkFactors s = shrink_from_action(c.ch, k);
      const double f = 0.5 * (1.0 + s.eta_xy * std::cos(s.phi_rot));
      o.require(f <= bound_fidelity(c.n, c.m) + 1e-9, "bound exceeded");
    }
  if (o.pass) o.detail = num(f_mp) + " < " + num(f_opt);
  return o;
}

Outcome bb84() {
  Outcome o;
  const cli::Bb84Report r = cli::bb84_report();
  const double d_err = std::abs(r.disturbance - (1.0 - bound_fidelity(1, 2)));
  o.require(d_err <= 1e-12, "disturbance off by " + num(d_err));
  o.require(std::abs(r.disturbance - 0.1464466) <= 1e-7, "disturbance " + num(r.disturbance));
  const double i_err = std::abs(r.mutual_info_ab - oracle_mutual_info);
  o.require(i_err <= 1e-3, "mutual information off by " + num(i_err));
  if (o.pass) o.detail = "D=" + num(r.disturbance) + " I_AB=" + num(r.mutual_info_ab);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> run;
};

std::set<int> parse_ids(const char* text) {
  std::set<int> ids;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) ids.insert(std::stoi(item));
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      expected_failures = parse_ids(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail i,j,...]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "bound saturation", 1.0, bound_saturation},
      {2, "figure reproduction", 1.0, figure_reproduction},
      {3, "phase-estimation oracle equivalence", 10.0, phase_estimation_oracle},
      {4, "shrink-factor extraction", 0.0, shrink_factor_extraction},
      {5, "concatenation property", 0.0, concatenation},
      {6, "optimizer recovery", 1.0, optimizer_recovery},
      {7, "fidelity constancy", 0.0, fidelity_constancy},
      {8, "inequality suite", 0.0, inequality_suite},
      {9, "BB84 report", 0.0, bb84},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds >= c.time_limit_s) {
      o.pass = false;
      o.detail += "; took " + num(seconds) + " s, limit " + num(c.time_limit_s) + " s";
    }
    if (!o.pass) failed.insert(c.id);
    std::printf("criterion %d %-38s %s  (%.3f s)  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", seconds,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());

  if (failed == expected_failures) return 0;
  if (!expected_failures.empty()) {
    std::printf("failing set differs from the expected set\n");
  }
  return 1;
}
