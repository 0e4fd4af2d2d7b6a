#pragma once

// Covariant phase estimation on N equatorial copies: the closed-form optimal
// fidelity, a quadrature POVM that reproduces it, and the measure-and-prepare
// cloners built on that POVM.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pcclone/channels.hpp"
#include "pcclone/detail/summation.hpp"
#include "pcclone/qlinalg.hpp"
#include "pcclone/states.hpp"

namespace pcclone {

namespace detail {
inline constexpr int direct_binomial_limit = 30;

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}
}  // namespace detail

// sum_{l=0}^{n-1} sqrt(C(n,l) C(n,l+1)) scaled by 2^{-n}. Direct products up
// to n = 30, log-domain terms with pairwise summation beyond.
inline double scaled_binomial_root_sum(int n) {
  std::vector<double> terms(n);
  if (n <= detail::direct_binomial_limit) {
    const double scale = std::ldexp(1.0, -n);
    for (int l = 0; l < n; ++l) terms[l] = std::sqrt(binomial(n, l) * binomial(n, l + 1)) * scale;
  } else {
    const double log2n = n * std::numbers::ln2;
    for (int l = 0; l < n; ++l)
      terms[l] = std::exp(0.5 * (detail::log_binomial(n, l) + detail::log_binomial(n, l + 1)) -
                          log2n);
  }
  return detail::pairwise_sum<double>(terms);
}

// Shrinking factor of optimal covariant phase estimation, 2F - 1.
inline double pe_shrink_closed(int n) {
  if (n < 1) throw InvalidN("phase estimation needs n >= 1, got " + std::to_string(n));
  return scaled_binomial_root_sum(n);
}

// F = 1/2 + 2^{-(n+1)} sum_{l=0}^{n-1} sqrt(C(n,l) C(n,l+1)).
inline double pe_fidelity_closed(int n) { return 0.5 + 0.5 * pe_shrink_closed(n); }

// Optimal state-estimation shrinking factor on l copies, l/(l+2).
inline double se_shrink(long long l) {
  if (l < 1) throw InvalidL("state estimation needs l >= 1, got " + std::to_string(l));
  return static_cast<double>(l) / static_cast<double>(l + 2);
}

inline int default_node_count(int n) { return 4 * n + 8; }
inline int minimum_node_count(int n) { return 2 * n + 3; }

struct PovmNode {
  double phi_star = 0.0;
  double weight = 0.0;
};

// Uniform quadrature of the covariant POVM dphi*/2pi |e(phi*)><e(phi*)| with
// |e(phi*)> = sum_l e^{i l phi*} |D_l>. Exact for every integrand of
// trigonometric degree <= n+1 once there are at least 2n+3 nodes.
class CovariantPovm {
 public:
  CovariantPovm(int n_copies, int n_nodes) : n_copies_(n_copies) {
    if (n_copies < 1 || n_copies > 16) {
      throw InvalidN("copy count " + std::to_string(n_copies));
    }
    if (n_nodes < minimum_node_count(n_copies)) {
      throw TooFewNodes(std::to_string(n_nodes) + " < " +
                        std::to_string(minimum_node_count(n_copies)));
    }
    dicke_ = dicke_basis(n_copies);
    seed_.assign(std::size_t{1} << n_copies, 0.0);
    for (const auto& d : dicke_)
      for (std::size_t i = 0; i < seed_.size(); ++i) seed_[i] += d[i];
    nodes_.reserve(n_nodes);
    for (int j = 0; j < n_nodes; ++j)
      nodes_.push_back({2.0 * std::numbers::pi * j / n_nodes, 1.0 / n_nodes});
  }

  int n_copies() const noexcept { return n_copies_; }
  const ComplexVector& seed() const noexcept { return seed_; }
  const std::vector<PovmNode>& nodes() const noexcept { return nodes_; }

  // |e(phi*)> = U_{phi*}^{(x)n} seed.
  ComplexVector outcome_vector(std::size_t j) const {
    ComplexVector e(seed_.size(), 0.0);
    for (int l = 0; l <= n_copies_; ++l) {
      const complex phase = std::polar(1.0, l * nodes_[j].phi_star);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += phase * dicke_[l][i];
    }
    return e;
  }

  ComplexMatrix outcome_operator(std::size_t j) const {
    const ComplexVector e = outcome_vector(j);
    return outer(e, e) * nodes_[j].weight;
  }

  // || sum_j E_j - P_sym ||.
  double completeness_residual() const {
    ComplexMatrix sum(seed_.size(), seed_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) sum += outcome_operator(j);
    return operator_norm(sum - symmetric_projector(n_copies_));
  }

 private:
  int n_copies_;
  std::vector<PureState> dicke_;
  ComplexVector seed_;
  std::vector<PovmNode> nodes_;
};

inline CovariantPovm canonical_povm(int n, int n_nodes) { return CovariantPovm(n, n_nodes); }

struct EstimationReport {
  double mean_fidelity = 0.0;
  double shrink = 0.0;
  ComplexMatrix reconstructed_state;
  double total_probability = 0.0;
};

// Mean fidelity and reconstructed state of covariant phase estimation on
// |psi_phi>^{(x)n}, by direct trace against the quadrature POVM.
inline EstimationReport pe_fidelity_numeric(int n, int n_nodes, double phi = 0.0) {
  const CovariantPovm povm(n, n_nodes);
  const PureState input = equatorial_state(phi, EquatorConvention::xy);
  const PureState copies = product_copies(input, n);

  const std::size_t k = povm.nodes().size();
  std::vector<double> prob(k), weighted_fidelity(k);
  std::vector<ComplexMatrix> candidates(k);
  for (std::size_t j = 0; j < k; ++j) {
    const ComplexVector e = povm.outcome_vector(j);
    prob[j] = povm.nodes()[j].weight * std::norm(inner(e, copies.amplitudes()));
    const PureState guess = equatorial_state(povm.nodes()[j].phi_star, EquatorConvention::xy);
    weighted_fidelity[j] = prob[j] * std::norm(inner(input.amplitudes(), guess.amplitudes()));
    candidates[j] = projector(guess) * prob[j];
  }

  EstimationReport report;
  report.mean_fidelity = detail::pairwise_sum<double>(weighted_fidelity);
  report.shrink = 2.0 * report.mean_fidelity - 1.0;
  report.total_probability = detail::pairwise_sum<double>(prob);
  report.reconstructed_state = ComplexMatrix(2, 2);
  for (const auto& c : candidates) report.reconstructed_state += c;
  return report;
}

// Estimate the phase from n_in copies, then prepare m_out copies of the
// estimate. Inputs are projected onto the symmetric subspace first; the
// complement (never reached by product inputs) is sent to |0...0>.
inline KrausChannel measure_prepare_channel(int n_in, int m_out, int n_nodes) {
  if (m_out < 1) throw InvalidN("output count " + std::to_string(m_out));
  const CovariantPovm povm(n_in, n_nodes);
  const std::size_t in_dim = std::size_t{1} << n_in;
  const std::size_t out_dim = std::size_t{1} << m_out;

  std::vector<ComplexMatrix> ops;
  for (std::size_t j = 0; j < povm.nodes().size(); ++j) {
    const auto& node = povm.nodes()[j];
    const PureState prepared =
        product_copies(equatorial_state(node.phi_star, EquatorConvention::xy), m_out);
    ops.push_back(outer(prepared.amplitudes(), povm.outcome_vector(j)) *
                  std::sqrt(node.weight));
  }

  const ComplexMatrix complement =
      ComplexMatrix::identity(in_dim) - symmetric_projector(n_in);
  for (std::size_t x = 0; x < in_dim; ++x) {
    ComplexMatrix k(out_dim, in_dim);
    for (std::size_t c = 0; c < in_dim; ++c) k(0, c) = complement(x, c);
    if (max_abs(k) > 1e-14) ops.push_back(std::move(k));
  }
  return KrausChannel(n_in, m_out, std::move(ops));
}

}  // namespace pcclone
