#pragma once

// Fidelity bounds for N -> M phase-covariant cloning, the explicit optimal
// 1 -> 2 cloner, universal-cloning reference values and concatenation checks.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pcclone/channels.hpp"
#include "pcclone/detail/summation.hpp"
#include "pcclone/estimation.hpp"
#include "pcclone/qlinalg.hpp"
#include "pcclone/states.hpp"

namespace pcclone {

// Marker for M -> infinity.
inline constexpr int infinite_copies = std::numeric_limits<int>::max();

inline bool is_infinite(int m) noexcept { return m == infinite_copies; }

inline std::string copies_to_string(int m) {
  return is_infinite(m) ? "inf" : std::to_string(m);
}

namespace detail {
inline void require_clone_range(int n, int m) {
  if (n < 1 || m < n) {
    throw InvalidRange("need 1 <= N <= M, got N=" + std::to_string(n) +
                       " M=" + copies_to_string(m));
  }
}

// log of sum_{l=0}^{n-1} sqrt(C(n,l) C(n,l+1)), unscaled.
inline double log_binomial_root_sum(int n) {
  std::vector<double> terms(n);
  if (n <= direct_binomial_limit) {
    for (int l = 0; l < n; ++l) terms[l] = std::sqrt(binomial(n, l) * binomial(n, l + 1));
    return std::log(pairwise_sum<double>(terms));
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (int l = 0; l < n; ++l) {
    terms[l] = 0.5 * (log_binomial(n, l) + log_binomial(n, l + 1));
    peak = std::max(peak, terms[l]);
  }
  for (auto& t : terms) t = std::exp(t - peak);
  return peak + std::log(pairwise_sum<double>(terms));
}
}  // namespace detail

// Upper bound on the equatorial shrinking factor of an N -> M cloner:
//   2^{M-N} sum_l sqrt(C(N,l)C(N,l+1)) / sum_j sqrt(C(M,j)C(M,j+1)).
// For M = infinity this is the phase-estimation shrink itself.
inline double bound_eta(int n, int m) {
  detail::require_clone_range(n, m);
  if (is_infinite(m)) return pe_shrink_closed(n);
  if (n == m) return 1.0;
  const double log_ratio = detail::log_binomial_root_sum(n) - detail::log_binomial_root_sum(m) +
                           (m - n) * std::numbers::ln2;
  return std::exp(log_ratio);
}

inline double bound_fidelity(int n, int m) { return 0.5 * (1.0 + bound_eta(n, m)); }

// Optimal universal N -> M cloning fidelity (M(N+1) + N) / (M(N+2)); this
// closed form comes from the universal-cloning literature and is used here
// only as a reference curve.
inline double universal_fidelity(int n, int m) {
  detail::require_clone_range(n, m);
  if (is_infinite(m)) return (n + 1.0) / (n + 2.0);
  return (static_cast<double>(m) * (n + 1) + n) / (static_cast<double>(m) * (n + 2));
}

struct BoundRow {
  int n_in = 1;
  int m_out = 1;  // may be infinite_copies
  double eta_bound = 1.0;
  double f_pcc_bound = 1.0;
  double f_universal = 1.0;
};

inline BoundRow bound_row(int n, int m) {
  const double eta = bound_eta(n, m);
  return {n, m, eta, 0.5 * (1.0 + eta), universal_fidelity(n, m)};
}

// --- explicit 1 -> 2 cloner --------------------------------------------------

struct OptimalCoefficients {
  static constexpr double a = 0.5 + 0.35355339059327376220;  // 1/2 + sqrt(1/8)
  static constexpr double b = 0.35355339059327376220;        // sqrt(1/8)
  static constexpr double c = 0.5 - 0.35355339059327376220;  // 1/2 - sqrt(1/8)
};

// Symmetric ansatz with two-dimensional ancilla; qubit order clone, clone,
// ancilla:
//   |0> -> a|00>|0> + b(|01>+|10>)|1> + c|11>|0>
//   |1> -> a|11>|1> + b(|10>+|01>)|0> + c|00>|1>
inline ComplexMatrix symmetric_cloner_isometry(double a, double b, double c) {
  ComplexMatrix v(8, 2);
  v(0b000, 0) = a;
  v(0b011, 0) = b;
  v(0b101, 0) = b;
  v(0b110, 0) = c;
  v(0b111, 1) = a;
  v(0b100, 1) = b;
  v(0b010, 1) = b;
  v(0b001, 1) = c;
  return v;
}

inline ComplexMatrix optimal_12_isometry() {
  return symmetric_cloner_isometry(OptimalCoefficients::a, OptimalCoefficients::b,
                                   OptimalCoefficients::c);
}

// 1 qubit -> (clone, clone, ancilla), xz equator, exactly as written above.
inline KrausChannel optimal_12_channel() {
  return KrausChannel(1, 3, {optimal_12_isometry()});
}

// 1 qubit -> (clone, clone) with the ancilla traced out.
inline KrausChannel optimal_12_clones() {
  return compose(optimal_12_channel(), partial_trace_channel(3, {0, 1}));
}

// The same channel in the xy-equator frame.
inline KrausChannel to_xy_convention(const KrausChannel& ch) {
  return rotate_frame(ch, xz_to_xy_rotation());
}

struct CloneResult {
  double input_phi = 0.0;
  EquatorConvention convention = EquatorConvention::xz;
  ComplexMatrix clone_a;
  ComplexMatrix clone_b;
  ComplexMatrix ancilla;
  double fidelity = 0.0;
};

// Runs the optimal 1 -> 2 cloner on an equatorial input. xy inputs are taken
// into the xz frame, cloned, and the clones rotated back; the ancilla is
// reported in the cloner's own frame.
inline CloneResult clone(double phi, EquatorConvention convention) {
  const PureState input = equatorial_state(phi, convention);
  const ComplexMatrix& w = xz_to_xy_rotation();
  const PureState in_xz = convention == EquatorConvention::xy
                              ? PureState(w.adjoint() * input.amplitudes())
                              : input;
  const ComplexVector out = optimal_12_isometry() * in_xz.amplitudes();
  const ComplexMatrix rho = outer(out, out);

  CloneResult r;
  r.input_phi = phi;
  r.convention = convention;
  r.clone_a = partial_trace_keep_one(rho, 3, 0);
  r.clone_b = partial_trace_keep_one(rho, 3, 1);
  r.ancilla = partial_trace_keep_one(rho, 3, 2);
  if (convention == EquatorConvention::xy) {
    r.clone_a = w * r.clone_a * w.adjoint();
    r.clone_b = w * r.clone_b * w.adjoint();
  }
  r.fidelity = fidelity_pure(input, r.clone_a);
  return r;
}

// F(alpha) = (alpha^4 + beta^4) a^2 + b^2 + 2 alpha^2 beta^2 c^2
//            + 4 alpha^2 beta^2 b (a + c),  beta^2 = 1 - alpha^2,
// the clone fidelity of the symmetric ansatz on alpha|0> + beta|1>.
inline double equator_fidelity_closed(double alpha, double a, double b, double c) {
  const double alpha2 = alpha * alpha;
  if (alpha2 > 1.0 + arithmetic_tol) {
    throw InvalidRange("alpha^2 = " + std::to_string(alpha2) + " > 1");
  }
  const double norm = a * a + 2.0 * b * b + c * c;
  if (std::abs(norm - 1.0) > construction_tol) {
    throw NormalizationViolated("a^2 + 2b^2 + c^2 = " + std::to_string(norm));
  }
  const double beta2 = std::max(0.0, 1.0 - alpha2);
  return (alpha2 * alpha2 + beta2 * beta2) * a * a + b * b + 2.0 * alpha2 * beta2 * c * c +
         4.0 * alpha2 * beta2 * b * (a + c);
}

struct ConcatenationReport {
  double eta_first = 0.0;
  double eta_second = 0.0;
  double eta_product = 0.0;
  double eta_measured = 0.0;
  double residual = 0.0;
};

// Checks eta_xy(first then second) against eta_xy(first) * eta_xy(second).
inline ConcatenationReport concatenation_check(const KrausChannel& first,
                                               const KrausChannel& second,
                                               double covariance_tol = quadrature_tol) {
  for (const auto* ch : {&first, &second}) {
    const auto cov = check_phase_covariance(*ch, 16, covariance_tol);
    if (!cov.pass) {
      throw NotPhaseCovariant("covariance residual " + std::to_string(cov.max_residual));
    }
  }
  const KrausChannel chain = compose(first, second);
  ConcatenationReport r;
  r.eta_first = shrink_from_action(first).eta_xy;
  r.eta_second = shrink_from_action(second).eta_xy;
  r.eta_product = r.eta_first * r.eta_second;
  r.eta_measured = shrink_from_action(chain).eta_xy;
  r.residual = std::abs(r.eta_measured - r.eta_product);
  return r;
}

}  // namespace pcclone
