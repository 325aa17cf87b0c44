#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace pbvqo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Largest qubit count for which dense 2^N operators are constructed.
inline constexpr int kMaxQubits = 14;

/// Hermiticity tolerance enforced on every constructed operator.
inline constexpr double kHermitianTol = 1e-12;

/// Basis convention: qubit 0 is the most significant bit of the basis index.
inline int bit_of(std::size_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

using Edge = std::pair<int, int>;

/// Driven spin ring: qubit frequencies, coupling floor G, and the N-cycle
/// interaction topology (a single edge for N = 2).
struct HardwareModel {
  int n_qubits = 0;
  Eigen::VectorXd frequencies;
  double coupling_bound = 1.0;

  static HardwareModel uniform(int n_qubits, double omega = 6.0, double coupling_bound = 1.0);

  std::vector<Edge> topology() const;
  bool uniform_frequencies() const;
  void validate() const;
};

/// Dense complex square matrix, checked Hermitian at construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  const Matrix& matrix() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

/// Interaction graph of the MAX-CUT instance. Rings only: 2-regular for
/// N >= 3, a single edge for N = 2.
struct ProblemGraph {
  int n_nodes = 0;
  std::vector<Edge> edges;

  static ProblemGraph ring(int n_nodes);
  void validate() const;
};

HermitianOperator drift_hamiltonian(const HardwareModel& model);
HermitianOperator coupling_operator(const HardwareModel& model);
HermitianOperator problem_hamiltonian(const ProblemGraph& graph);
HermitianOperator qaoa_problem_hamiltonian(const ProblemGraph& graph);
HermitianOperator mixer_hamiltonian(int n_qubits);

/// Minimum eigenvalue of a Hermitian operator.
double ground_energy(const HermitianOperator& op);

/// Diagonal of sum_j (omega_j/2) sigma_j^z in the computational basis.
Eigen::VectorXd drift_diagonal(const HardwareModel& model);

/// Real matrix of sum_edges sigma^y sigma^y over the model topology.
Eigen::MatrixXd coupling_matrix(const HardwareModel& model);

/// Real matrix of sum_edges sigma^x sigma^x over the graph edges.
Eigen::MatrixXd problem_matrix(const ProblemGraph& graph);

/// Diagonal of sum_edges sigma^z sigma^z.
Eigen::VectorXd qaoa_problem_diagonal(const ProblemGraph& graph);

}  // namespace pbvqo
