#pragma once

// Equatorial qubits, BB84 states, N-copy products and the symmetric
// (Dicke) subspace.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pcclone/qlinalg.hpp"

namespace pcclone {

// Which great circle of the Bloch sphere holds the equatorial states.
//   xy: |psi_phi> = (|0> + e^{i phi}|1>)/sqrt(2), Bloch (cos phi, sin phi, 0).
//   xz: |psi_phi> = cos(phi/2)|0> + sin(phi/2)|1>, Bloch (sin phi, 0, cos phi),
//       i.e. phi is the rotation angle about y away from |0>.
enum class EquatorConvention { xy, xz };

inline std::string to_string(EquatorConvention c) {
  return c == EquatorConvention::xy ? "xy" : "xz";
}

inline PureState equatorial_state(double phi, EquatorConvention convention) {
  phi = std::remainder(phi, 2.0 * std::numbers::pi);
  if (convention == EquatorConvention::xy) {
    const double r = std::numbers::sqrt2 / 2.0;
    return PureState({r, r * std::polar(1.0, phi)});
  }
  return PureState({std::cos(phi / 2.0), std::sin(phi / 2.0)});
}

// Fixed unitary taking the xz circle onto the xy circle, angle for angle:
// W |psi_phi^xz> = e^{-i pi/4} |psi_phi^xy>. On Bloch vectors it is the
// 120-degree rotation about (1,1,1): x -> y, y -> z, z -> x.
inline const ComplexMatrix& xz_to_xy_rotation() {
  static const ComplexMatrix w{{complex(0.5, -0.5), complex(-0.5, -0.5)},
                               {complex(0.5, -0.5), complex(0.5, 0.5)}};
  return w;
}

// |0>, |1>, |0bar> = (|0>+|1>)/sqrt2, |1bar> = (|0>-|1>)/sqrt2.
inline std::array<PureState, 4> bb84_states() {
  const double r = std::numbers::sqrt2 / 2.0;
  return {PureState({1.0, 0.0}), PureState({0.0, 1.0}), PureState({r, r}),
          PureState({r, -r})};
}

inline PureState product_copies(const PureState& psi, int n) {
  if (psi.n_qubits() != 1) {
    throw DimensionMismatch("product_copies expects a single-qubit state");
  }
  if (n < 1) throw InvalidN("copy count " + std::to_string(n));
  ComplexVector v{1.0};
  for (int i = 0; i < n; ++i) v = kron(v, psi.amplitudes());
  // Exact products of unit vectors; the tolerance only absorbs rounding.
  return PureState(std::move(v), construction_tol);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / i;
  return std::round(out);
}

// Element l: normalized equal superposition of all n-bit strings of weight l.
inline std::vector<PureState> dicke_basis(int n) {
  if (n < 1 || n > 20) throw InvalidN("Dicke basis size " + std::to_string(n));
  const std::size_t dim = std::size_t{1} << n;
  std::vector<ComplexVector> raw(n + 1, ComplexVector(dim));
  for (std::size_t x = 0; x < dim; ++x) raw[std::popcount(x)][x] = 1.0;
  std::vector<PureState> out;
  out.reserve(n + 1);
  for (int l = 0; l <= n; ++l) {
    const double scale = 1.0 / std::sqrt(binomial(n, l));
    for (auto& a : raw[l]) a *= scale;
    out.emplace_back(std::move(raw[l]));
  }
  return out;
}

inline ComplexMatrix symmetric_projector(int n) {
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix p(dim, dim);
  for (const auto& d : dicke_basis(n)) p += projector(d);
  return p;
}

// Trace norm of (1 - P_sym) rho (1 - P_sym); zero iff rho lives on the
// symmetric subspace.
inline double symmetric_support_residual(const ComplexMatrix& rho, int n) {
  if (n < 1 || !rho.is_square() || rho.rows() != (std::size_t{1} << n)) {
    throw DimensionMismatch("matrix " + rho.shape() + " is not on " + std::to_string(n) +
                            " qubits");
  }
  const ComplexMatrix q = ComplexMatrix::identity(rho.rows()) - symmetric_projector(n);
  return trace_norm(q * rho * q);
}

}  // namespace pcclone
