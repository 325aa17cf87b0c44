#pragma once

#include "pbvqo/hamiltonians.hpp"
#include "pbvqo/pulses.hpp"
#include "pbvqo/simulator.hpp"

namespace pbvqo {

/// Block of the ring dynamics reachable from |0...0>.
///
/// With uniform frequencies the Hamiltonian commutes with every rotation and
/// reflection of the ring, and the coupling flips bits in pairs, so evolution
/// from the all-zeros state stays inside the span of even-weight dihedral
/// orbit sums. For N = 8 this cuts the propagation dimension from 256 to 18.
class RingSector {
 public:
  RingSector(const HardwareModel& model, const ProblemGraph& graph);

  static bool applicable(const HardwareModel& model, const ProblemGraph& graph);

  int dim() const { return static_cast<int>(drift_.size()); }

  /// <psi(T)| sum XX |psi(T)> for the filtered pulse, starting from |0...0>.
  double final_energy(const PulseAnsatz& ansatz, const EvolutionConfig& config) const;

  const Eigen::VectorXd& drift() const { return drift_; }
  const Eigen::MatrixXd& coupling() const { return coupling_; }
  const Eigen::MatrixXd& problem() const { return problem_; }

 private:
  Eigen::VectorXd drift_;
  Eigen::MatrixXd coupling_;
  Eigen::MatrixXd problem_;
  int initial_index_ = 0;
  double bound_ = 1.0;
};

}  // namespace pbvqo
