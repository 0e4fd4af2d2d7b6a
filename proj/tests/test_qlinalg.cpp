#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "pcclone/pcclone.hpp"
#include "support.hpp"

using namespace pcclone;
using Catch::Matchers::WithinAbs;

namespace {
const double sqrt1_8 = std::sqrt(0.125);

ComplexMatrix basis_projector(std::size_t dim, std::size_t i) {
  ComplexMatrix m(dim, dim);
  m(i, i) = 1.0;
  return m;
}
}  // namespace

TEST_CASE("kron follows qubit-0-most-significant ordering", "[qlinalg][kron]") {
  CHECK(kron(pauli::i2(), pauli::i2()) == ComplexMatrix::identity(4));

  const ComplexMatrix p0 = basis_projector(2, 0);
  const ComplexMatrix p1 = basis_projector(2, 1);
  CHECK(kron(p0, p1) == basis_projector(4, 1));

  const ComplexVector ket01{0.0, 1.0, 0.0, 0.0};
  const ComplexVector image = kron(pauli::z(), pauli::z()) * ComplexVector(ket01);
  CHECK(image == ComplexVector{0.0, -1.0, 0.0, 0.0});
}

TEST_CASE("kron of vectors and powers", "[qlinalg][kron]") {
  const ComplexVector zero{1.0, 0.0};
  const ComplexVector one{0.0, 1.0};
  CHECK(kron(zero, one) == ComplexVector{0.0, 1.0, 0.0, 0.0});
  CHECK(kron_power(pauli::x(), 3).rows() == 8);
  CHECK(kron_power(pauli::x(), 3)(0, 7) == complex(1.0));
}

TEST_CASE("partial_trace_keep_one", "[qlinalg][partial_trace]") {
  SECTION("product state") {
    const ComplexMatrix r = partial_trace_keep_one(basis_projector(4, 0), 2, 0);
    CHECK(r == basis_projector(2, 0));
  }
  SECTION("Bell state reduces to I/2") {
    const double h = std::numbers::sqrt2 / 2.0;
    const PureState bell({h, 0.0, 0.0, h});
    const ComplexMatrix r = partial_trace_keep_one(projector(bell), 2, 0);
    CHECK(max_abs(r - ComplexMatrix::identity(2) * 0.5) < 1e-15);
  }
  SECTION("three-qubit cloner output on |0>") {
    const ComplexMatrix rho = apply(optimal_12_channel(), projector(PureState({1.0, 0.0})));
    const ComplexMatrix r = partial_trace_keep_one(rho, 3, 0);
    CHECK_THAT(r(0, 0).real(), WithinAbs(0.5 + sqrt1_8, 1e-12));
    CHECK_THAT(r(1, 1).real(), WithinAbs(0.5 - sqrt1_8, 1e-12));
    CHECK(std::abs(r(0, 1)) < 1e-15);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(partial_trace_keep_one(ComplexMatrix::identity(3), 2, 0), DimensionMismatch);
    CHECK_THROWS_AS(partial_trace_keep_one(ComplexMatrix::identity(4), 2, 2), IndexOutOfRange);
    CHECK_THROWS_AS(partial_trace_keep_one(ComplexMatrix::identity(4), 2, -1), IndexOutOfRange);
  }
}

TEST_CASE("partial_trace keeps qubits in ascending order", "[qlinalg][partial_trace]") {
  // |0>|1>|+>: keeping {2, 0} must give rho_0 (x) rho_2.
  const double h = std::numbers::sqrt2 / 2.0;
  const ComplexVector psi = kron(kron(ComplexVector{1.0, 0.0}, ComplexVector{0.0, 1.0}),
                                 ComplexVector{h, h});
  const ComplexMatrix rho = outer(psi, psi);
  const ComplexMatrix expected = kron(basis_projector(2, 0), outer(ComplexVector{h, h}, ComplexVector{h, h}));
  CHECK(max_abs(partial_trace(rho, 3, {2, 0}) - expected) < 1e-15);
}

TEST_CASE("partial trace preserves trace and Hermiticity", "[qlinalg][property]") {
  for (int trial = 0; trial < 50; ++trial) {
    const PureState psi = testing::random_pure(3);
    const ComplexMatrix rho = projector(psi);
    for (int keep = 0; keep < 3; ++keep) {
      const ComplexMatrix r = partial_trace_keep_one(rho, 3, keep);
      CHECK_THAT(r.trace().real(), WithinAbs(1.0, 1e-12));
      CHECK(std::abs(r.trace().imag()) < 1e-12);
      CHECK(hermiticity_residual(r) < 1e-12);
    }
  }
}

TEST_CASE("bloch_from_density", "[qlinalg][bloch]") {
  const BlochVector mixed = bloch_from_density(ComplexMatrix::identity(2) * 0.5);
  CHECK(mixed.norm() == 0.0);

  const BlochVector plus = bloch_from_density(projector(equatorial_state(0.0, EquatorConvention::xy)));
  CHECK_THAT(plus.sx, WithinAbs(1.0, 1e-15));
  CHECK_THAT(plus.sy, WithinAbs(0.0, 1e-15));
  CHECK_THAT(plus.sz, WithinAbs(0.0, 1e-15));

  // delta = 1/2, gamma = i/2: sy = -2 Im(gamma) = -1.
  const ComplexMatrix rho{{0.5, complex(0, 0.5)}, {complex(0, -0.5), 0.5}};
  const BlochVector s = bloch_from_density(rho);
  CHECK_THAT(s.sx, WithinAbs(0.0, 1e-15));
  CHECK_THAT(s.sy, WithinAbs(-1.0, 1e-15));
  CHECK_THAT(s.sz, WithinAbs(0.0, 1e-15));

  // The equatorial state at phi = pi/2 sits at +y.
  const BlochVector y = bloch_from_density(projector(equatorial_state(std::numbers::pi / 2, EquatorConvention::xy)));
  CHECK_THAT(y.sy, WithinAbs(1.0, 1e-15));

  CHECK_THROWS_AS(bloch_from_density(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}), NotDensityMatrix);
  CHECK_THROWS_AS(bloch_from_density(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), NotDensityMatrix);
  CHECK_THROWS_AS(bloch_from_density(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}), NotDensityMatrix);
  CHECK_THROWS_AS(bloch_from_density(ComplexMatrix::identity(4) * 0.25), DimensionMismatch);
}

TEST_CASE("density_from_bloch", "[qlinalg][bloch]") {
  CHECK(density_from_bloch({0, 0, 1}) == basis_projector(2, 0));
  const ComplexMatrix plus = projector(equatorial_state(0.0, EquatorConvention::xy));
  CHECK(max_abs(density_from_bloch({1, 0, 0}) - plus) < 1e-15);
  const ComplexMatrix expected = ComplexMatrix::identity(2) * 0.5 + pauli::x() * 0.25;
  CHECK(max_abs(density_from_bloch({0.5, 0, 0}) - expected) < 1e-15);
  CHECK_THROWS_AS(density_from_bloch({1.0, 1e-3, 0.0}), BlochVectorTooLong);
  CHECK_NOTHROW(density_from_bloch({1.0 + 5e-13, 0.0, 0.0}));
}

TEST_CASE("Bloch round trip on random density matrices", "[qlinalg][bloch][property]") {
  for (int trial = 0; trial < 1000; ++trial) {
    const ComplexMatrix rho = testing::random_qubit_density();
    CHECK(max_abs(density_from_bloch(bloch_from_density(rho)) - rho) < 1e-14);
  }
}

TEST_CASE("fidelity_pure", "[qlinalg][fidelity]") {
  const PureState zero({1.0, 0.0});
  CHECK_THAT(fidelity_pure(zero, projector(zero)), WithinAbs(1.0, 1e-15));
  const PureState plus = equatorial_state(0.0, EquatorConvention::xy);
  CHECK_THAT(fidelity_pure(plus, ComplexMatrix::identity(2) * 0.5), WithinAbs(0.5, 1e-15));
  const ComplexMatrix shrunk = density_from_bloch({1.0 / std::numbers::sqrt2, 0.0, 0.0});
  CHECK_THAT(fidelity_pure(plus, shrunk), WithinAbs(0.5 + sqrt1_8, 1e-12));
  CHECK_THROWS_AS(fidelity_pure(zero, ComplexMatrix::identity(4)), DimensionMismatch);
}

TEST_CASE("fidelity of random pure states with themselves", "[qlinalg][fidelity][property]") {
  for (int trial = 0; trial < 200; ++trial) {
    const PureState psi = testing::random_pure(1 + trial % 3);
    CHECK_THAT(fidelity_pure(psi, projector(psi)), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("fidelity against a shrunk equatorial state is (1 + eta)/2", "[qlinalg][fidelity][property]") {
  for (int j = 0; j < 64; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / 64;
    for (double eta : {0.0, 0.25, 0.5, 1.0 / std::numbers::sqrt2, 1.0}) {
      const ComplexMatrix rho = density_from_bloch({eta * std::cos(phi), eta * std::sin(phi), 0.0});
      CHECK_THAT(fidelity_pure(equatorial_state(phi, EquatorConvention::xy), rho),
                 WithinAbs(0.5 * (1.0 + eta), 1e-12));
    }
  }
}

TEST_CASE("PureState validation", "[qlinalg][state]") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}), NotNormalized);
  CHECK_THROWS_AS(PureState({1.0, 0.0, 0.0}), DimensionMismatch);
  CHECK(PureState({0.0, 0.0, 1.0, 0.0}).n_qubits() == 2);
}

TEST_CASE("ComplexMatrix arithmetic", "[qlinalg][matrix]") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix::identity(2) + ComplexMatrix::identity(3), DimensionMismatch);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), DimensionMismatch);
  CHECK(pauli::x() * pauli::y() == pauli::z() * complex(0, 1));
  CHECK(pauli::y().adjoint() == pauli::y());
  CHECK(ComplexMatrix::identity(5).trace() == complex(5.0));
}

TEST_CASE("Hermitian spectral helpers", "[qlinalg][eigen]") {
  const auto ev = hermitian_eigenvalues(pauli::y());
  REQUIRE(ev.size() == 2);
  CHECK_THAT(ev[0], WithinAbs(-1.0, 1e-15));
  CHECK_THAT(ev[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(trace_norm(pauli::z() * 0.3), WithinAbs(0.6, 1e-15));
  CHECK_THAT(operator_norm(pauli::x() * 2.0), WithinAbs(2.0, 1e-15));

  const auto eig = hermitian_eigen(pauli::x());
  for (std::size_t k = 0; k < 2; ++k) {
    const ComplexVector image = pauli::x() * eig.vectors[k];
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(std::abs(image[i] - eig.values[k] * eig.vectors[k][i]) < 1e-14);
  }
  CHECK(is_density_matrix(ComplexMatrix::identity(2) * 0.5));
  CHECK_FALSE(is_density_matrix(pauli::z()));
}
