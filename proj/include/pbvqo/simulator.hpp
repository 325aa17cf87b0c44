#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pbvqo/hamiltonians.hpp"
#include "pbvqo/pulses.hpp"

namespace pbvqo {

/// Normalized complex amplitude vector over the computational basis.
struct StateVector {
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);
};

/// Time grid for piecewise-constant propagation. A non-positive time_step
/// selects the default duration/1000. The duration is split into
/// ceil(duration/time_step) steps with the last step shortened.
struct EvolutionConfig {
  double time_step = 0.0;
  double tolerance = 1e-6;

  double resolved_step(double duration) const;
};

StateVector initial_state(int n_qubits);

/// Propagates from t = 0 to t = duration under
/// H(t) = drift + F[P(t)] * coupling, freezing H at each step midpoint and
/// applying the exact step propagator.
StateVector evolve(const StateVector& state, const HardwareModel& model,
                   const PulseAnsatz& ansatz, const EvolutionConfig& config);

/// Re <psi|O|psi>; rejects imaginary residual above 1e-10.
double expectation(const StateVector& state, const HermitianOperator& op);

/// R = |(energy - ground) / ground|.
double error_rate(double energy, double ground_energy);

/// Rotates by the N-fold Hadamard and samples bitstrings from the Born
/// distribution. Character j of each result is qubit j's x-basis outcome,
/// '0' for the +1 eigenstate of sigma^x.
std::vector<std::string> sample_x_basis(const StateVector& state, int shots,
                                        std::uint64_t seed);

/// Number of graph edges whose endpoints differ in the bitstring.
int cut_value(const std::string& bitstring, const ProblemGraph& graph);

/// Time-averaged operator norm (1/T) int_0^T norm_at(t) dt by composite
/// trapezoidal quadrature on n_steps intervals.
double energetic_cost(const std::function<double(double)>& norm_at, double duration,
                      int n_steps);

/// Frobenius norm of drift + F[P(t)] * coupling as a function of t.
std::function<double(double)> pbvqo_norm_schedule(const HardwareModel& model,
                                                  const PulseAnsatz& ansatz);

namespace detail {

/// Applies exp(-i (diag(drift) + f * coupling) dt) to psi by an adaptive
/// Taylor series, exact to round-off. coupling must be real symmetric.
void apply_step(const Eigen::VectorXd& drift, const Eigen::MatrixXd& coupling,
                double f, double dt, Eigen::VectorXcd& psi);

/// Shared propagation loop over the filtered pulse on the step grid.
void propagate(const Eigen::VectorXd& drift, const Eigen::MatrixXd& coupling,
               double bound, const PulseAnsatz& ansatz, const EvolutionConfig& config,
               Eigen::VectorXcd& psi);

}  // namespace detail

}  // namespace pbvqo
