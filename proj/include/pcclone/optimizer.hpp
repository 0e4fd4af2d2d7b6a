#pragma once

// Numerical re-derivation of the optimal symmetric 1 -> 2 equatorial cloner.
//
// With the ancilla overlaps at their extremal values the problem is: maximise
// F = (1 + a^2 - c^2)/2 subject to F = 1/2 + b (a + c) and a^2 + 2b^2 + c^2 = 1.
// For a, c >= 0 the feasible set is a one-dimensional arc. It is parameterised
// by the polar angle theta of (a, c): for each theta the constraint fixes the
// radius, found by bisection, and the fidelity is then maximised over theta
// by bracketing plus golden-section search from several deterministic seeds.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "pcclone/cloners.hpp"
#include "pcclone/qlinalg.hpp"

namespace pcclone {

// Ancilla states of the ansatz
//   U|0>|0>|X> = a|00>|A> + b(|01>+|10>)|B> + c|11>|C>
//   U|1>|0>|X> = a|11>|At> + b(|10>+|01>)|Bt> + c|00>|Ct>
struct AncillaStates {
  ComplexVector a, b, c;     // |A>, |B>, |C>
  ComplexVector at, bt, ct;  // |A~>, |B~>, |C~>

  // |A>=|0>, |B>=|1>, |C>=|0>, |A~>=|1>, |B~>=|0>, |C~>=|1>.
  static AncillaStates two_level() {
    const ComplexVector zero{1.0, 0.0};
    const ComplexVector one{0.0, 1.0};
    return {zero, one, zero, one, zero, one};
  }
};

// Inner products entering the unitarity and fidelity conditions.
struct AncillaOverlaps {
  double at_b = 0.0;            // Re<A~|B>
  double bt_a = 0.0;            // Re<B~|A>
  double bt_c = 0.0;            // Re<B~|C>
  double ct_b = 0.0;            // Re<C~|B>
  double at_bt_plus_b_a = 0.0;  // Re[<A~|B~> + <B|A>]
  double bt_ct_plus_c_b = 0.0;  // Re[<B~|C~> + <C|B>]
  complex ct_a;                 // <C~|A>
  complex bt_b;                 // <B~|B>
  complex at_c;                 // <A~|C>

  static AncillaOverlaps from(const AncillaStates& s) {
    AncillaOverlaps o;
    o.at_b = inner(s.at, s.b).real();
    o.bt_a = inner(s.bt, s.a).real();
    o.bt_c = inner(s.bt, s.c).real();
    o.ct_b = inner(s.ct, s.b).real();
    o.at_bt_plus_b_a = (inner(s.at, s.bt) + inner(s.b, s.a)).real();
    o.bt_ct_plus_c_b = (inner(s.bt, s.ct) + inner(s.c, s.b)).real();
    o.ct_a = inner(s.ct, s.a);
    o.bt_b = inner(s.bt, s.b);
    o.at_c = inner(s.at, s.c);
    return o;
  }
};

struct AnsatzCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  AncillaOverlaps overlaps;

  // Validates a^2 + 2b^2 + c^2 = 1 and the unitarity cross term.
  static AnsatzCoefficients make(double a, double b, double c,
                                 const AncillaStates& ancillas = AncillaStates::two_level()) {
    if (a < 0.0 || b < 0.0 || c < 0.0) {
      throw InfeasiblePoint("coefficients must be non-negative");
    }
    const double norm = a * a + 2.0 * b * b + c * c;
    if (std::abs(norm - 1.0) > construction_tol) {
      throw NormalizationViolated("a^2 + 2b^2 + c^2 = " + std::to_string(norm));
    }
    AnsatzCoefficients out{a, b, c, AncillaOverlaps::from(ancillas)};
    const auto& o = out.overlaps;
    const double cross = std::abs(a * c * o.ct_a + 2.0 * b * b * o.bt_b + a * c * o.at_c);
    if (cross > construction_tol) {
      throw NormalizationViolated("unitarity cross term " + std::to_string(cross));
    }
    return out;
  }
};

namespace detail {
inline double b_from_ac(double a, double c) {
  const double slack = 1.0 - a * a - c * c;
  if (slack < -construction_tol) {
    throw InfeasiblePoint("1 - a^2 - c^2 = " + std::to_string(slack));
  }
  return std::sqrt(std::max(0.0, slack) / 2.0);
}

inline void require_normalized(double a, double b, double c) {
  if (a < 0.0 || b < 0.0 || c < 0.0) throw InfeasiblePoint("coefficients must be non-negative");
  const double norm = a * a + 2.0 * b * b + c * c;
  if (std::abs(norm - 1.0) > quadrature_tol) {
    throw InfeasiblePoint("a^2 + 2b^2 + c^2 = " + std::to_string(norm));
  }
}
}  // namespace detail

// F = (1 + a^2 - c^2)/2.
inline double fidelity_objective(double a, double b, double c) {
  detail::b_from_ac(a, c);
  detail::require_normalized(a, b, c);
  return 0.5 * (1.0 + a * a - c * c);
}

// |F - 1/2 - b (a + c)| with b recomputed from the normalisation.
inline double constraint_residual(double a, double b, double c) {
  const double b_norm = detail::b_from_ac(a, c);
  detail::require_normalized(a, b, c);
  return std::abs(0.5 * (1.0 + a * a - c * c) - 0.5 - b_norm * (a + c));
}

struct ArcPoint {
  double theta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double fidelity = 0.0;
};

inline constexpr double arc_theta_max = std::numbers::pi / 4.0;

// Feasible point at polar angle theta in [0, pi/4]: a = r cos(theta),
// c = r sin(theta), with r the root in (0, 1] of
//   r (cos - sin) / 2 = sqrt((1 - r^2)/2),
// which is the constraint divided by r (a + c) > 0.
inline ArcPoint arc_point(double theta) {
  if (theta < 0.0 || theta > arc_theta_max + arithmetic_tol) {
    throw InfeasiblePoint("theta = " + std::to_string(theta) + " outside [0, pi/4]");
  }
  theta = std::min(theta, arc_theta_max);
  const double gap = std::cos(theta) - std::sin(theta);
  const auto g = [gap](double r) { return 0.5 * r * gap - std::sqrt((1.0 - r * r) / 2.0); };
  double lo = 0.0;
  double hi = 1.0;
  // g is increasing with g(0) < 0 <= g(1); run bisection to machine precision.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double r = hi;
  ArcPoint p;
  p.theta = theta;
  p.a = r * std::cos(theta);
  p.c = r * std::sin(theta);
  p.b = detail::b_from_ac(p.a, p.c);
  p.fidelity = 0.5 * (1.0 + p.a * p.a - p.c * p.c);
  return p;
}

struct OptimizerOptions {
  int seeds = 50;
  long max_evaluations = 100000;
  double theta_tol = 1e-10;
  bool force_equal_ac = false;  // restrict to the symmetric point a = c
};

struct Optimum {
  AnsatzCoefficients coeffs;
  double fidelity = 0.0;
  double theta = 0.0;
  long iterations = 0;  // objective evaluations over all seeds
  bool converged = false;
  std::vector<ArcPoint> seed_results;
};

inline Optimum optimize(const OptimizerOptions& options = {}) {
  long evaluations = 0;
  const auto eval = [&](double theta) {
    if (++evaluations > options.max_evaluations) {
      throw NotConverged("exceeded " + std::to_string(options.max_evaluations) +
                         " objective evaluations");
    }
    return arc_point(std::clamp(theta, 0.0, arc_theta_max));
  };

  Optimum best;
  if (options.force_equal_ac) {
    const ArcPoint p = eval(arc_theta_max);
    best.coeffs = AnsatzCoefficients::make(p.a, p.b, p.c);
    best.fidelity = p.fidelity;
    best.theta = p.theta;
    best.iterations = evaluations;
    best.converged = true;
    best.seed_results.push_back(p);
    return best;
  }

  constexpr double inv_phi = 0.6180339887498949;  // 1/golden ratio
  bool all_converged = true;
  ArcPoint winner;
  bool have_winner = false;
  for (int s = 0; s < std::max(options.seeds, 1); ++s) {
    // Bracket the maximum by walking uphill from the seed with doubling steps.
    const double seed = (s + 0.5) / std::max(options.seeds, 1) * arc_theta_max;
    double step = 0.02 * arc_theta_max;
    double x0 = seed;
    double f0 = eval(x0).fidelity;
    double x1 = std::clamp(x0 + step, 0.0, arc_theta_max);
    double f1 = eval(x1).fidelity;
    if (f1 < f0) {
      std::swap(x0, x1);
      std::swap(f0, f1);
      step = -step;
    }
    double x2 = x1;
    while (true) {
      step *= 2.0;
      x2 = std::clamp(x1 + step, 0.0, arc_theta_max);
      const double f2 = eval(x2).fidelity;
      if (f2 < f1 || x2 == x1) break;
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = f2;
    }
    double lo = std::min(x0, x2);
    double hi = std::max(x0, x2);

    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = eval(c).fidelity;
    double fd = eval(d).fidelity;
    while (hi - lo > options.theta_tol) {
      if (fc >= fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - inv_phi * (hi - lo);
        fc = eval(c).fidelity;
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + inv_phi * (hi - lo);
        fd = eval(d).fidelity;
      }
    }
    all_converged = all_converged && hi - lo <= options.theta_tol;
    const ArcPoint p = eval(0.5 * (lo + hi));
    best.seed_results.push_back(p);
    const bool better = !have_winner || p.fidelity > winner.fidelity + arithmetic_tol ||
                        (std::abs(p.fidelity - winner.fidelity) <= arithmetic_tol && p.a > winner.a);
    if (better) {
      winner = p;
      have_winner = true;
    }
  }

  best.coeffs = AnsatzCoefficients::make(winner.a, winner.b, winner.c);
  best.fidelity = winner.fidelity;
  best.theta = winner.theta;
  best.iterations = evaluations;
  best.converged = all_converged;
  return best;
}

struct OverlapReport {
  double unitarity_residual = 0.0;  // normalisation and unitarity cross term
  double pole_fidelity = 0.0;     // a^2 + b^2
  double overlap_fidelity = 0.0;     // fidelity from the ancilla overlaps
  double overlap_fidelity_target = 0.0;    // (1 + 2b(a + c))/2
  double overlap_fidelity_gap = 0.0;
  double cross_overlap_residual = 0.0;
};

inline OverlapReport verify_overlaps(const AnsatzCoefficients& k) {
  const auto& o = k.overlaps;
  OverlapReport r;
  const double norm = std::abs(k.a * k.a + 2.0 * k.b * k.b + k.c * k.c - 1.0);
  const double cross = std::abs(k.a * k.c * o.ct_a + 2.0 * k.b * k.b * o.bt_b + k.a * k.c * o.at_c);
  r.unitarity_residual = std::max(norm, cross);
  r.pole_fidelity = k.a * k.a + k.b * k.b;
  r.overlap_fidelity = 0.5 * (1.0 + k.a * k.b * (o.at_b + o.bt_a) + k.b * k.c * (o.bt_c + o.ct_b));
  r.overlap_fidelity_target = 0.5 * (1.0 + 2.0 * k.b * (k.a + k.c));
  r.overlap_fidelity_gap = std::abs(r.overlap_fidelity - r.overlap_fidelity_target);
  r.cross_overlap_residual = std::abs(k.a * k.b * o.at_bt_plus_b_a + k.b * k.c * o.bt_ct_plus_c_b);
  return r;
}

}  // namespace pcclone
