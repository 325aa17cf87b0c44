#include "pbvqo/hamiltonians.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace pbvqo {

namespace {

std::size_t checked_dim(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
  if (n_qubits > kMaxQubits)
    throw std::invalid_argument("n_qubits exceeds dense-matrix cap of " +
                                std::to_string(kMaxQubits));
  return std::size_t{1} << n_qubits;
}

void check_edges(int n_nodes, const std::vector<Edge>& edges) {
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes)
      throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop edge");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
  }
}

}  // namespace

HardwareModel HardwareModel::uniform(int n_qubits, double omega, double coupling_bound) {
  HardwareModel m;
  m.n_qubits = n_qubits;
  m.frequencies = Eigen::VectorXd::Constant(n_qubits, omega);
  m.coupling_bound = coupling_bound;
  m.validate();
  return m;
}

std::vector<Edge> HardwareModel::topology() const {
  return ProblemGraph::ring(n_qubits).edges;
}

bool HardwareModel::uniform_frequencies() const {
  for (int j = 1; j < n_qubits; ++j)
    if (frequencies[j] != frequencies[0]) return false;
  return true;
}

void HardwareModel::validate() const {
  checked_dim(n_qubits);
  if (frequencies.size() != n_qubits)
    throw std::invalid_argument("frequencies must have n_qubits entries");
  if (!(coupling_bound > 0.0))
    throw std::invalid_argument("coupling_bound must be positive");
}

HermitianOperator::HermitianOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("operator must be square");
  const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTol)
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
}

ProblemGraph ProblemGraph::ring(int n_nodes) {
  ProblemGraph g;
  g.n_nodes = n_nodes;
  if (n_nodes == 2) {
    g.edges = {{0, 1}};
  } else {
    for (int j = 0; j < n_nodes; ++j) g.edges.push_back({j, (j + 1) % n_nodes});
  }
  g.validate();
  return g;
}

void ProblemGraph::validate() const {
  checked_dim(n_nodes);
  check_edges(n_nodes, edges);
  std::vector<int> degree(n_nodes, 0);
  for (auto [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  if (n_nodes == 2) {
    if (edges.size() != 1) throw std::invalid_argument("N=2 graph must be a single edge");
  } else {
    for (int d : degree)
      if (d != 2) throw std::invalid_argument("graph must be 2-regular");
  }
}

Eigen::VectorXd drift_diagonal(const HardwareModel& model) {
  model.validate();
  const std::size_t dim = checked_dim(model.n_qubits);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (std::size_t s = 0; s < dim; ++s)
    for (int j = 0; j < model.n_qubits; ++j)
      diag[s] += 0.5 * model.frequencies[j] * (bit_of(s, j, model.n_qubits) ? -1.0 : 1.0);
  return diag;
}

Eigen::MatrixXd coupling_matrix(const HardwareModel& model) {
  model.validate();
  const std::size_t dim = checked_dim(model.n_qubits);
  const int n = model.n_qubits;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  // sigma^y sigma^y flips both bits; sign -1 when the bits are equal.
  for (auto [a, b] : model.topology()) {
    const std::size_t mask =
        (std::size_t{1} << (n - 1 - a)) | (std::size_t{1} << (n - 1 - b));
    for (std::size_t s = 0; s < dim; ++s) {
      const double sign = (bit_of(s, a, n) == bit_of(s, b, n)) ? -1.0 : 1.0;
      m(s ^ mask, s) += sign;
    }
  }
  return m;
}

Eigen::MatrixXd problem_matrix(const ProblemGraph& graph) {
  graph.validate();
  const std::size_t dim = checked_dim(graph.n_nodes);
  const int n = graph.n_nodes;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (auto [a, b] : graph.edges) {
    const std::size_t mask =
        (std::size_t{1} << (n - 1 - a)) | (std::size_t{1} << (n - 1 - b));
    for (std::size_t s = 0; s < dim; ++s) m(s ^ mask, s) += 1.0;
  }
  return m;
}

Eigen::VectorXd qaoa_problem_diagonal(const ProblemGraph& graph) {
  graph.validate();
  const std::size_t dim = checked_dim(graph.n_nodes);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (std::size_t s = 0; s < dim; ++s)
    for (auto [a, b] : graph.edges)
      diag[s] += (bit_of(s, a, graph.n_nodes) == bit_of(s, b, graph.n_nodes)) ? 1.0 : -1.0;
  return diag;
}

HermitianOperator drift_hamiltonian(const HardwareModel& model) {
  return HermitianOperator(drift_diagonal(model).cast<Complex>().asDiagonal());
}

HermitianOperator coupling_operator(const HardwareModel& model) {
  return HermitianOperator(coupling_matrix(model).cast<Complex>());
}

HermitianOperator problem_hamiltonian(const ProblemGraph& graph) {
  return HermitianOperator(problem_matrix(graph).cast<Complex>());
}

HermitianOperator qaoa_problem_hamiltonian(const ProblemGraph& graph) {
  return HermitianOperator(qaoa_problem_diagonal(graph).cast<Complex>().asDiagonal());
}

HermitianOperator mixer_hamiltonian(int n_qubits) {
  const std::size_t dim = checked_dim(n_qubits);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < n_qubits; ++j) {
    const std::size_t mask = std::size_t{1} << (n_qubits - 1 - j);
    for (std::size_t s = 0; s < dim; ++s) m(s ^ mask, s) += 1.0;
  }
  return HermitianOperator(m.cast<Complex>());
}

double ground_energy(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace pbvqo
