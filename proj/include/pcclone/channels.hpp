#pragma once

// Kraus channels on qubit registers and the single-qubit Gamma-matrix
// machinery used to characterise phase-covariant maps.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "pcclone/qlinalg.hpp"
#include "pcclone/states.hpp"

namespace pcclone {

class KrausChannel {
 public:
  KrausChannel(int in_qubits, int out_qubits, std::vector<ComplexMatrix> kraus_ops,
               double tol = construction_tol)
      : in_qubits_(in_qubits), out_qubits_(out_qubits), ops_(std::move(kraus_ops)) {
    if (in_qubits_ < 0 || out_qubits_ < 0 || in_qubits_ > 16 || out_qubits_ > 16) {
      throw DimensionMismatch("unsupported register sizes " + std::to_string(in_qubits_) +
                              " -> " + std::to_string(out_qubits_));
    }
    if (ops_.empty()) throw DimensionMismatch("empty Kraus set");
    for (const auto& a : ops_) {
      if (a.rows() != out_dim() || a.cols() != in_dim()) {
        throw DimensionMismatch("Kraus operator " + a.shape() + ", expected " +
                                std::to_string(out_dim()) + "x" + std::to_string(in_dim()));
      }
    }
    const double residual = completeness_residual();
    if (residual > tol) {
      throw NotTracePreserving("||sum A^dag A - I|| = " + std::to_string(residual));
    }
  }

  int in_qubits() const noexcept { return in_qubits_; }
  int out_qubits() const noexcept { return out_qubits_; }
  std::size_t in_dim() const noexcept { return std::size_t{1} << in_qubits_; }
  std::size_t out_dim() const noexcept { return std::size_t{1} << out_qubits_; }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }

  double completeness_residual() const {
    ComplexMatrix sum(in_dim(), in_dim());
    for (const auto& a : ops_) sum += a.adjoint() * a;
    return operator_norm(sum - ComplexMatrix::identity(in_dim()));
  }

 private:
  int in_qubits_;
  int out_qubits_;
  std::vector<ComplexMatrix> ops_;
};

inline KrausChannel make_channel(int in_qubits, int out_qubits,
                                 std::vector<ComplexMatrix> kraus_ops) {
  return KrausChannel(in_qubits, out_qubits, std::move(kraus_ops));
}

inline ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != ch.in_dim()) {
    throw DimensionMismatch("channel on " + std::to_string(ch.in_qubits()) +
                            " qubits applied to " + rho.shape());
  }
  ComplexMatrix out(ch.out_dim(), ch.out_dim());
  for (const auto& a : ch.ops()) out += a * rho * a.adjoint();
  return out;
}

// Run `first`, then `second`.
inline KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (first.out_qubits() != second.in_qubits()) {
    throw DimensionMismatch("cannot feed " + std::to_string(first.out_qubits()) +
                            " qubits into a channel on " +
                            std::to_string(second.in_qubits()));
  }
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.ops().size() * second.ops().size());
  for (const auto& a : first.ops())
    for (const auto& b : second.ops()) {
      ComplexMatrix ba = b * a;
      if (max_abs(ba) > 1e-15) ops.push_back(std::move(ba));
    }
  return KrausChannel(first.in_qubits(), second.out_qubits(), std::move(ops));
}

// A -> U^{(x)out} A U^{dag (x)in}: the same channel seen in a rotated frame.
inline KrausChannel rotate_frame(const KrausChannel& ch, const ComplexMatrix& u) {
  const ComplexMatrix u_out = kron_power(u, ch.out_qubits());
  const ComplexMatrix u_in_dag = kron_power(u, ch.in_qubits()).adjoint();
  std::vector<ComplexMatrix> ops;
  ops.reserve(ch.ops().size());
  for (const auto& a : ch.ops()) ops.push_back(u_out * a * u_in_dag);
  return KrausChannel(ch.in_qubits(), ch.out_qubits(), std::move(ops));
}

// Partial trace over every qubit not in `keep`, as a Kraus channel.
inline KrausChannel partial_trace_channel(int n_qubits, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (int q : keep) {
    if (q < 0 || q >= n_qubits) {
      throw IndexOutOfRange("qubit " + std::to_string(q) + " of " + std::to_string(n_qubits));
    }
  }
  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q)
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);

  const auto scatter = [n_qubits](std::size_t bits, const std::vector<int>& qubits) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      const std::size_t b = (bits >> (qubits.size() - 1 - i)) & 1U;
      index |= b << (n_qubits - 1 - qubits[i]);
    }
    return index;
  };

  const std::size_t keep_dim = std::size_t{1} << keep.size();
  const std::size_t in_dim = std::size_t{1} << n_qubits;
  std::vector<ComplexMatrix> ops;
  for (std::size_t r = 0; r < (std::size_t{1} << traced.size()); ++r) {
    ComplexMatrix k(keep_dim, in_dim);
    for (std::size_t i = 0; i < keep_dim; ++i) k(i, scatter(i, keep) | scatter(r, traced)) = 1.0;
    ops.push_back(std::move(k));
  }
  return KrausChannel(n_qubits, static_cast<int>(keep.size()), std::move(ops));
}

inline ComplexMatrix phase_shift(double chi) {
  return {{1.0, 0.0}, {0.0, std::polar(1.0, chi)}};
}

// --- Gamma matrix ----------------------------------------------------------

// sigma_0 = (sx + i sy)/2 = |0><1|, sigma_1 = (sx - i sy)/2 = |1><0|,
// sigma_2 = (1 + sz)/2 = |0><0|,   sigma_3 = (1 - sz)/2 = |1><1|.
inline const std::array<ComplexMatrix, 4>& sigma_basis() {
  static const std::array<ComplexMatrix, 4> basis{
      ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}};
  return basis;
}

// Dual of sigma_basis() under <X, Y> = tr(X^dag Y). The sigma basis consists of
// matrix units, so it is its own dual; the coefficient of sigma_alpha in A is
// tr(dual_alpha^dag A).
inline const std::array<ComplexMatrix, 4>& sigma_dual_basis() { return sigma_basis(); }

// Gamma^{ab} = sum_k c_k^a conj(c_k^b), indexed by a, b in {0,1,2,3}.
class GammaMatrix {
 public:
  explicit GammaMatrix(ComplexMatrix gamma, double tol = construction_tol)
      : gamma_(std::move(gamma)) {
    if (gamma_.rows() != 4 || gamma_.cols() != 4) {
      throw DimensionMismatch("Gamma must be 4x4, got " + gamma_.shape());
    }
    if (hermiticity_residual(gamma_) > tol) {
      throw NotCompletelyPositive("Gamma is not Hermitian");
    }
    for (int a = 0; a < 4; ++a) {
      const double d = gamma_(a, a).real();
      if (d < -tol || d > 1.0 + tol) {
        throw NotCompletelyPositive("Gamma diagonal entry " + std::to_string(a) + " = " +
                                    std::to_string(d) + " outside [0,1]");
      }
    }
    const double tp = std::max(std::abs(gamma_(1, 1).real() + gamma_(2, 2).real() - 1.0),
                               std::abs(gamma_(0, 0).real() + gamma_(3, 3).real() - 1.0));
    if (tp > tol) {
      throw NotTracePreserving("Gamma trace relations off by " + std::to_string(tp));
    }
  }

  const complex& operator()(int alpha, int beta) const { return gamma_(alpha, beta); }
  const ComplexMatrix& matrix() const noexcept { return gamma_; }

 private:
  ComplexMatrix gamma_;
};

inline void require_single_qubit(const KrausChannel& ch, const char* what) {
  if (ch.in_qubits() != 1 || ch.out_qubits() != 1) {
    throw DimensionMismatch(std::string(what) + " needs a 1-qubit -> 1-qubit map, got " +
                            std::to_string(ch.in_qubits()) + " -> " +
                            std::to_string(ch.out_qubits()));
  }
}

inline GammaMatrix gamma_from_kraus(const KrausChannel& ch) {
  require_single_qubit(ch, "gamma_from_kraus");
  const auto& dual = sigma_dual_basis();
  ComplexMatrix g(4, 4);
  for (const auto& a : ch.ops()) {
    std::array<complex, 4> c{};
    for (int alpha = 0; alpha < 4; ++alpha) c[alpha] = (dual[alpha].adjoint() * a).trace();
    for (int alpha = 0; alpha < 4; ++alpha)
      for (int beta = 0; beta < 4; ++beta) g(alpha, beta) += c[alpha] * std::conj(c[beta]);
  }
  return GammaMatrix(std::move(g));
}

// Gamma read off the action of a linear single-qubit map on matrix units:
// Gamma^{ab} = E(|c_a><c_b|)[r_a, r_b] where sigma_a = |r_a><c_a|. This is
// the Choi matrix in the sigma ordering and needs no Kraus form.
template <std::invocable<const ComplexMatrix&> Map>
GammaMatrix gamma_from_action(Map&& map, double tol = construction_tol) {
  static constexpr std::array<std::pair<int, int>, 4> unit{{{0, 1}, {1, 0}, {0, 0}, {1, 1}}};
  ComplexMatrix g(4, 4);
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta) {
      ComplexMatrix e(2, 2);
      e(unit[alpha].second, unit[beta].second) = 1.0;
      const ComplexMatrix image = map(e);
      g(alpha, beta) = image(unit[alpha].first, unit[beta].first);
    }
  return GammaMatrix(std::move(g), tol);
}

// Kraus form from a positive semidefinite Gamma.
inline KrausChannel kraus_from_gamma(const GammaMatrix& g, double tol = construction_tol) {
  const auto eig = hermitian_eigen(g.matrix());
  if (eig.values.front() < -tol) {
    throw NotCompletelyPositive("Gamma has eigenvalue " + std::to_string(eig.values.front()));
  }
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] <= tol) continue;
    ComplexMatrix a(2, 2);
    const double scale = std::sqrt(eig.values[k]);
    for (int alpha = 0; alpha < 4; ++alpha)
      a += sigma_basis()[alpha] * (scale * eig.vectors[k][alpha]);
    ops.push_back(std::move(a));
  }
  return KrausChannel(1, 1, std::move(ops));
}

// Largest of the ten Gamma entries that phase covariance forces to zero.
inline double covariance_constraint_residual(const GammaMatrix& g) {
  static constexpr std::array<std::pair<int, int>, 10> constrained{
      {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 0}, {3, 1}}};
  double worst = 0.0;
  for (auto [a, b] : constrained) worst = std::max(worst, std::abs(g(a, b)));
  return worst;
}

struct ShrinkFactors {
  double eta_xy = 1.0;   // |Gamma^{32}|
  double eta_z = 1.0;    // Gamma^{33} + Gamma^{22} - 1
  double phi_rot = 0.0;  // arg Gamma^{32}: counterclockwise Bloch rotation about z
  double z_offset = 0.0; // Gamma^{22} - Gamma^{33}
};

inline ShrinkFactors shrink_from_gamma(const GammaMatrix& g, double tol = quadrature_tol) {
  const double residual = covariance_constraint_residual(g);
  if (residual > tol) {
    throw NotPhaseCovariant("Gamma constraint residual " + std::to_string(residual));
  }
  const double g22 = g(2, 2).real();
  const double g33 = g(3, 3).real();
  ShrinkFactors s;
  s.eta_xy = std::abs(g(3, 2));
  s.phi_rot = std::arg(g(3, 2));
  s.eta_z = g33 + g22 - 1.0;
  s.z_offset = g22 - g33;
  if (s.eta_xy * s.eta_xy > g22 * g33 + construction_tol) {
    throw NotCompletelyPositive("|Gamma^32|^2 exceeds Gamma^22 Gamma^33");
  }
  return s;
}

// Output of a covariant single-qubit map written through its Gamma matrix:
//   [ (1-G33)(1-d) + G22 d      g conj(G32)           ]
//   [ conj(g) G32               (1-G22) d + G33 (1-d) ]
// with d = rho00, g = rho01.
inline ComplexMatrix predicted_output(const GammaMatrix& g, const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionMismatch("expected a 2x2 input");
  const double g22 = g(2, 2).real();
  const double g33 = g(3, 3).real();
  const complex d = rho(0, 0);
  const complex off = rho(0, 1);
  return {{(1.0 - g33) * (1.0 - d) + g22 * d, off * std::conj(g(3, 2))},
          {std::conj(off) * g(3, 2), (1.0 - g22) * d + g33 * (1.0 - d)}};
}

// Reduced single-qubit output R[T(rho)] on output qubit `keep`.
inline ComplexMatrix reduced_output(const KrausChannel& ch, const ComplexMatrix& rho,
                                    int keep = 0) {
  return partial_trace_keep_one(apply(ch, rho), ch.out_qubits(), keep);
}

// Shrink factors read off the N-copy action: eta_xy and phi_rot from the
// equatorial family, eta_z and z_offset from the poles. Works for any N.
inline ShrinkFactors shrink_from_action(const KrausChannel& ch, int keep = 0,
                                        double tol = quadrature_tol) {
  const int n = ch.in_qubits();
  const auto bloch_out = [&](const PureState& one) {
    return bloch_components(reduced_output(ch, projector(product_copies(one, n)), keep));
  };

  constexpr int samples = 8;
  std::array<complex, samples> ratio{};
  complex mean = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / samples;
    const BlochVector s = bloch_out(equatorial_state(phi, EquatorConvention::xy));
    ratio[j] = complex(s.sx, s.sy) * std::polar(1.0, -phi);
    mean += ratio[j];
  }
  mean /= static_cast<double>(samples);
  for (const auto& r : ratio) {
    if (std::abs(r - mean) > tol) {
      throw NotPhaseCovariant("equatorial response varies by " +
                              std::to_string(std::abs(r - mean)));
    }
  }
  const double z_up = bloch_out(PureState({1.0, 0.0})).sz;
  const double z_down = bloch_out(PureState({0.0, 1.0})).sz;

  ShrinkFactors s;
  s.eta_xy = std::abs(mean);
  s.phi_rot = s.eta_xy > tol ? std::arg(mean) : 0.0;
  s.eta_z = 0.5 * (z_up - z_down);
  s.z_offset = 0.5 * (z_up + z_down);
  return s;
}

// Effective single-qubit map rho_1 -> R[T(rho_1^{(x)N})].
//   N == 1: exact, the channel followed by the partial trace.
//   N  > 1: the affine Bloch map fitted on the equatorial points phi = 0,
//           pi/2, pi, 3pi/2 and the two poles, returned in Kraus form. The
//           N-copy action is not linear in rho_1, so the fit can fail to be
//           completely positive; that raises NotCompletelyPositive.
inline KrausChannel reduced_single_qubit_map(const KrausChannel& ch, int n_in, int keep = 0) {
  if (ch.in_qubits() != n_in) {
    throw DimensionMismatch("channel has " + std::to_string(ch.in_qubits()) +
                            " inputs, caller claims " + std::to_string(n_in));
  }
  if (keep < 0 || keep >= ch.out_qubits()) {
    throw IndexOutOfRange("output qubit " + std::to_string(keep));
  }
  if (n_in == 1) return compose(ch, partial_trace_channel(ch.out_qubits(), {keep}));

  const auto out = [&](const PureState& one) {
    return bloch_components(reduced_output(ch, projector(product_copies(one, n_in)), keep));
  };
  const double half_pi = std::numbers::pi / 2.0;
  const auto xy = EquatorConvention::xy;
  const std::array<BlochVector, 6> b{out(equatorial_state(0.0, xy)),
                                     out(equatorial_state(std::numbers::pi, xy)),
                                     out(equatorial_state(half_pi, xy)),
                                     out(equatorial_state(3.0 * half_pi, xy)),
                                     out(PureState({1.0, 0.0})),
                                     out(PureState({0.0, 1.0}))};
  const auto diff = [](const BlochVector& p, const BlochVector& q) {
    return std::array<double, 3>{0.5 * (p.sx - q.sx), 0.5 * (p.sy - q.sy), 0.5 * (p.sz - q.sz)};
  };
  const std::array<std::array<double, 3>, 3> column{diff(b[0], b[1]), diff(b[2], b[3]),
                                                    diff(b[4], b[5])};
  const std::array<double, 3> shift{0.5 * (b[4].sx + b[5].sx), 0.5 * (b[4].sy + b[5].sy),
                                    0.5 * (b[4].sz + b[5].sz)};

  const auto affine = [&](const ComplexMatrix& m) {
    // Linear extension: m = (t I + x sx + y sy + z sz)/2 with complex weights.
    const complex t = m(0, 0) + m(1, 1);
    const complex x = m(0, 1) + m(1, 0);
    const complex y = complex(0, 1) * (m(0, 1) - m(1, 0));
    const complex z = m(0, 0) - m(1, 1);
    std::array<complex, 3> s{};
    for (int i = 0; i < 3; ++i)
      s[i] = t * shift[i] + x * column[0][i] + y * column[1][i] + z * column[2][i];
    return ComplexMatrix{{0.5 * (t + s[2]), 0.5 * (s[0] - complex(0, 1) * s[1])},
                         {0.5 * (s[0] + complex(0, 1) * s[1]), 0.5 * (t - s[2])}};
  };
  return kraus_from_gamma(gamma_from_action(affine));
}

struct CovarianceReport {
  double max_residual = 0.0;
  bool pass = true;
};

// Compares U_chi R[T(psi^N)] U_chi^dag with R[T((U_chi psi)^N)] on every
// output qubit, for chi on a uniform grid and a fixed grid of pure inputs
// (equatorial and off-equator). Deterministic.
inline CovarianceReport check_phase_covariance(const KrausChannel& ch, int n_samples,
                                               double tol = quadrature_tol) {
  const int n = ch.in_qubits();
  std::vector<PureState> inputs;
  inputs.push_back(PureState({1.0, 0.0}));
  inputs.push_back(PureState({0.0, 1.0}));
  for (double theta : {std::numbers::pi / 4, std::numbers::pi / 2, 2 * std::numbers::pi / 3}) {
    for (int j = 0; j < 6; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / 6 + 0.1;
      inputs.push_back(
          PureState({std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}));
    }
  }

  CovarianceReport report;
  for (const auto& psi : inputs) {
    const ComplexMatrix out = apply(ch, projector(product_copies(psi, n)));
    std::vector<ComplexMatrix> reduced;
    for (int k = 0; k < ch.out_qubits(); ++k)
      reduced.push_back(partial_trace_keep_one(out, ch.out_qubits(), k));
    for (int j = 0; j < std::max(n_samples, 1); ++j) {
      const ComplexMatrix u = phase_shift(2.0 * std::numbers::pi * j / std::max(n_samples, 1));
      const PureState rotated(u * psi.amplitudes());
      const ComplexMatrix moved = apply(ch, projector(product_copies(rotated, n)));
      for (int k = 0; k < ch.out_qubits(); ++k) {
        const ComplexMatrix lhs = u * reduced[k] * u.adjoint();
        const ComplexMatrix rhs = partial_trace_keep_one(moved, ch.out_qubits(), k);
        report.max_residual = std::max(report.max_residual, operator_norm(lhs - rhs));
      }
    }
  }
  report.pass = report.max_residual <= tol;
  return report;
}

// T_s = (T + T^)/2 with T^ the map seen after relabelling |0> <-> |1>,
// i.e. conjugation by sigma_x on input and output.
inline KrausChannel symmetrize_channel(const KrausChannel& ch) {
  require_single_qubit(ch, "symmetrize_channel");
  const ComplexMatrix x = pauli::x();
  const double half = std::sqrt(0.5);
  std::vector<ComplexMatrix> ops;
  for (const auto& a : ch.ops()) ops.push_back(a * half);
  for (const auto& a : ch.ops()) ops.push_back((x * a * x) * half);
  return KrausChannel(1, 1, std::move(ops));
}

}  // namespace pcclone
