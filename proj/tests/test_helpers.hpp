#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "pbvqo/hamiltonians.hpp"

namespace pbvqo::testing {

/// Brute-force MAX-CUT oracle: minimum of sum_edges x_i x_j over all x-basis
/// sign assignments. Independent of the operator construction code.
inline double brute_force_ground(const ProblemGraph& graph) {
  double best = 1e300;
  for (std::size_t s = 0; s < (std::size_t{1} << graph.n_nodes); ++s) {
    double energy = 0.0;
    for (const auto& [a, b] : graph.edges) {
      const int xa = bit_of(s, a, graph.n_nodes) ? -1 : 1;
      const int xb = bit_of(s, b, graph.n_nodes) ? -1 : 1;
      energy += xa * xb;
    }
    best = std::min(best, energy);
  }
  return best;
}

/// N-fold Hadamard as a dense matrix, built from the sign rule
/// <i|H^N|j> = (-1)^popcount(i & j) / sqrt(2^N).
inline Eigen::MatrixXd hadamard_n(int n_qubits) {
  const auto dim = std::size_t{1} << n_qubits;
  Eigen::MatrixXd h(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      h(i, j) = (__builtin_popcountll(i & j) % 2 ? -scale : scale);
  return h;
}

inline Eigen::VectorXd make_params(std::vector<double> values) {
  return Eigen::Map<Eigen::VectorXd>(values.data(), values.size());
}

// Printed optima reused across tests: the T=5 8-qubit baseline pulse and the
// 2-qubit/8-qubit meta-learning pair.
inline Eigen::VectorXd baseline_optimum() {
  return make_params({2.017, 0.644, 1.384, -0.141, -0.596, -0.408});
}
inline Eigen::VectorXd two_qubit_optimum() {
  return make_params({0.307, 0.491, 4.202, 3.798, 3.253, 3.441});
}
inline Eigen::VectorXd transferred_optimum() {
  return make_params({-1.668, 4.560, 6.861, 3.456, 3.919, 5.113});
}

}  // namespace pbvqo::testing
