#pragma once

// Dense complex linear algebra for few-qubit registers.
//
// Qubit ordering: qubit 0 is the leftmost tensor factor and the most
// significant bit of a basis index, so |q0 q1 ... q_{n-1}> has index
// q0*2^{n-1} + ... + q_{n-1}.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcclone/errors.hpp"

namespace pcclone {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;

// Tolerance hierarchy shared by all modules.
inline constexpr double arithmetic_tol = 1e-12;
inline constexpr double construction_tol = 1e-10;
inline constexpr double quadrature_tol = 1e-8;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw DimensionMismatch("expected " + std::to_string(rows_ * cols_) +
                              " entries, got " + std::to_string(entries_.size()));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionMismatch("ragged initializer list");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const complex> entries() const noexcept { return entries_; }
  std::span<complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  complex trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  ComplexMatrix& operator*=(complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("cannot multiply " + a.shape() + " by " + b.shape());
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex v = a(r, k);
        if (v == complex{}) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += v * b(k, c);
      }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionMismatch("shape " + shape() + " vs " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> entries_;
};

inline double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& e : m.entries()) best = std::max(best, std::abs(e));
  return best;
}

inline ComplexVector operator*(const ComplexMatrix& m, std::span<const complex> v) {
  if (m.cols() != v.size()) {
    throw DimensionMismatch("matrix " + m.shape() + " applied to vector of length " +
                            std::to_string(v.size()));
  }
  ComplexVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

// Number of qubits n with 2^n == dim, or -1.
inline int qubits_for_dimension(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) return -1;
  return std::countr_zero(dim);
}

// Normalized amplitude vector on an n-qubit register.
class PureState {
 public:
  PureState() = default;

  explicit PureState(ComplexVector amplitudes, double tol = arithmetic_tol)
      : amplitudes_(std::move(amplitudes)) {
    n_qubits_ = qubits_for_dimension(amplitudes_.size());
    if (n_qubits_ < 0) {
      throw DimensionMismatch("state length " + std::to_string(amplitudes_.size()) +
                              " is not a power of two");
    }
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > tol) {
      throw NotNormalized("squared norm " + std::to_string(norm2));
    }
  }

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  const complex& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  int n_qubits_ = 0;
  ComplexVector amplitudes_{1.0};
};

inline complex inner(std::span<const complex> bra, std::span<const complex> ket) {
  if (bra.size() != ket.size()) throw DimensionMismatch("inner product length mismatch");
  complex acc = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

inline ComplexMatrix outer(std::span<const complex> ket, std::span<const complex> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

inline ComplexMatrix projector(const PureState& psi) {
  return outer(psi.amplitudes(), psi.amplitudes());
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const complex v = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
    }
  return out;
}

inline ComplexVector kron(std::span<const complex> a, std::span<const complex> b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

inline ComplexMatrix kron_power(const ComplexMatrix& a, int n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

namespace pauli {
inline ComplexMatrix i2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return {{0.0, complex(0, -1)}, {complex(0, 1), 0.0}}; }
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

// Reduced density matrix of the qubits listed in `keep` (ascending order is
// enforced; the output keeps that order).
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, int n_qubits,
                                   std::vector<int> keep) {
  if (n_qubits < 0 || n_qubits > 30 || !rho.is_square() ||
      rho.rows() != (std::size_t{1} << n_qubits)) {
    throw DimensionMismatch("matrix " + rho.shape() + " is not on " +
                            std::to_string(n_qubits) + " qubits");
  }
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

  const auto bit_of = [n_qubits](int q) { return n_qubits - 1 - q; };
  const auto scatter = [&](std::size_t bits, const std::vector<int>& qubits) {
    std::size_t index = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      const std::size_t b = (bits >> (qubits.size() - 1 - i)) & 1U;
      index |= b << bit_of(qubits[i]);
    }
    return index;
  };

  const std::size_t out_dim = std::size_t{1} << keep.size();
  const std::size_t rest_dim = std::size_t{1} << traced.size();
  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t i = 0; i < out_dim; ++i)
    for (std::size_t j = 0; j < out_dim; ++j) {
      const std::size_t row_base = scatter(i, keep);
      const std::size_t col_base = scatter(j, keep);
      complex acc = 0.0;
      for (std::size_t r = 0; r < rest_dim; ++r) {
        const std::size_t rest = scatter(r, traced);
        acc += rho(row_base | rest, col_base | rest);
      }
      out(i, j) = acc;
    }
  return out;
}

inline ComplexMatrix partial_trace_keep_one(const ComplexMatrix& rho, int n_qubits, int keep) {
  if (keep < 0 || keep >= n_qubits) {
    throw IndexOutOfRange("qubit " + std::to_string(keep) + " of " + std::to_string(n_qubits));
  }
  return partial_trace(rho, n_qubits, {keep});
}

// --- Hermitian spectra (Eigen backend) ------------------------------------

struct HermitianEigen {
  std::vector<double> values;          // ascending
  std::vector<ComplexVector> vectors;  // vectors[k] belongs to values[k]
};

namespace detail {
inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline void require_square(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("expected a square matrix, got " + m.shape());
}
}  // namespace detail

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  detail::require_square(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(h),
                                                         Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  detail::require_square(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(h));
  HermitianEigen out;
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    ComplexVector v(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) v[i] = solver.eigenvectors()(i, k);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

// Trace norm of a Hermitian matrix.
inline double trace_norm(const ComplexMatrix& h) {
  double acc = 0.0;
  for (double v : hermitian_eigenvalues(h)) acc += std::abs(v);
  return acc;
}

// Spectral norm (largest singular value) of any matrix.
inline double operator_norm(const ComplexMatrix& m) {
  const auto ev = hermitian_eigenvalues(m.adjoint() * m);
  return ev.empty() ? 0.0 : std::sqrt(std::max(0.0, ev.back()));
}

inline double hermiticity_residual(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

// Checks the density-matrix invariants: Hermitian, unit trace, PSD.
inline bool is_density_matrix(const ComplexMatrix& rho, double tol = arithmetic_tol) {
  if (!rho.is_square() || rho.rows() == 0) return false;
  if (hermiticity_residual(rho) > tol) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  const auto ev = hermitian_eigenvalues(rho);
  return ev.front() >= -tol;
}

// --- Bloch representation --------------------------------------------------

struct BlochVector {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  double norm() const { return std::sqrt(sx * sx + sy * sy + sz * sz); }
  friend bool operator==(const BlochVector&, const BlochVector&) = default;
};

// sx = 2 Re rho01, sy = -2 Im rho01, sz = rho00 - rho11.
inline BlochVector bloch_from_density(const ComplexMatrix& rho, double tol = arithmetic_tol) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw DimensionMismatch("expected a 2x2 density matrix, got " + rho.shape());
  }
  if (!is_density_matrix(rho, tol)) {
    throw NotDensityMatrix("2x2 matrix fails Hermitian/trace/positivity checks");
  }
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

inline ComplexMatrix density_from_bloch(const BlochVector& s, double tol = arithmetic_tol) {
  if (s.norm() > 1.0 + tol) {
    throw BlochVectorTooLong("|s| = " + std::to_string(s.norm()));
  }
  return {{0.5 * (1.0 + s.sz), 0.5 * complex(s.sx, -s.sy)},
          {0.5 * complex(s.sx, s.sy), 0.5 * (1.0 - s.sz)}};
}

// Bloch components without density validation; for maps that need not be
// positive (affine fits, trace-preserving Hermitian images).
inline BlochVector bloch_components(const ComplexMatrix& m) {
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

// <psi|rho|psi>.
inline double fidelity_pure(const PureState& psi, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != psi.dim()) {
    throw DimensionMismatch("state of length " + std::to_string(psi.dim()) +
                            " against matrix " + rho.shape());
  }
  const ComplexVector rho_psi = rho * psi.amplitudes();
  return inner(psi.amplitudes(), rho_psi).real();
}

}  // namespace pcclone
