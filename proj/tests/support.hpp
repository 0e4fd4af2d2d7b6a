#pragma once

// Shared helpers for the unit tests: seeded random states and channels.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pcclone/pcclone.hpp"

namespace pcclone::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eed'c10e);
  return engine;
}

inline double uniform(double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng()); }

inline PureState random_pure(int n_qubits = 1) {
  ComplexVector v(std::size_t{1} << n_qubits);
  double norm2 = 0.0;
  for (auto& a : v) {
    a = complex(normal(), normal());
    norm2 += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm2);
  return PureState(std::move(v));
}

// Uniform over the Bloch ball.
inline ComplexMatrix random_qubit_density() {
  BlochVector s;
  do {
    s = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
  } while (s.norm() > 1.0);
  return density_from_bloch(s);
}

// Random phase-covariant qubit channel built from a block-diagonal Gamma.
// With zero_rotation the coherence factor Gamma^{32} is real and positive;
// with zero_offset Gamma^{22} = Gamma^{33}.
inline KrausChannel random_covariant_channel(bool zero_rotation = false, bool zero_offset = false) {
  const double g22 = uniform();
  const double g33 = zero_offset ? g22 : uniform();
  const double mag = uniform() * std::sqrt(g22 * g33);
  const complex g32 = zero_rotation ? complex(mag) : std::polar(mag, uniform(0, 2 * std::numbers::pi));
  ComplexMatrix g(4, 4);
  g(0, 0) = 1.0 - g33;
  g(1, 1) = 1.0 - g22;
  g(2, 2) = g22;
  g(3, 3) = g33;
  g(3, 2) = g32;
  g(2, 3) = std::conj(g32);
  return kraus_from_gamma(GammaMatrix(g));
}

// Random k x k unitary via QR of a complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t k) {
  std::vector<ComplexVector> cols(k, ComplexVector(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (auto& a : cols[j]) a = complex(normal(), normal());
    for (std::size_t i = 0; i < j; ++i) {
      const complex p = inner(cols[i], cols[j]);
      for (std::size_t r = 0; r < k; ++r) cols[j][r] -= p * cols[i][r];
    }
    const double n = std::sqrt(inner(cols[j], cols[j]).real());
    for (auto& a : cols[j]) a /= n;
  }
  ComplexMatrix u(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) u(r, c) = cols[c][r];
  return u;
}

}  // namespace pcclone::testing
