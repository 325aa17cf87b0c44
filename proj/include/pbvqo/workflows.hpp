#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>

#include "pbvqo/hamiltonians.hpp"
#include "pbvqo/optimizers.hpp"
#include "pbvqo/pulses.hpp"
#include "pbvqo/simulator.hpp"

namespace pbvqo {

/// One MAX-CUT instance with its hardware model and pulse settings.
struct PbvqoProblem {
  HardwareModel model;
  ProblemGraph graph;
  int ansatz_size = 3;
  double duration = 5.0;
  EvolutionConfig evolution;

  static PbvqoProblem ring(int n_qubits, double duration, int ansatz_size = 3,
                           double omega = 6.0, double coupling_bound = 1.0);
  void validate() const;
};

/// Splits a flat parameter vector (A_1..A_n, phi_1..phi_n) into an ansatz.
PulseAnsatz make_ansatz(const PbvqoProblem& problem, const Eigen::VectorXd& params);

/// Reusable cost evaluator for one problem. Uses the symmetry-reduced block
/// when the instance qualifies, the dense propagator otherwise; both paths
/// produce identical energies.
class PbvqoCostEvaluator {
 public:
  explicit PbvqoCostEvaluator(PbvqoProblem problem);

  double operator()(const Eigen::VectorXd& params) const;
  double ground() const { return ground_energy_; }
  const PbvqoProblem& problem() const { return problem_; }
  CostFunction as_cost() const;

 private:
  PbvqoProblem problem_;
  std::shared_ptr<const class RingSector> sector_;
  std::shared_ptr<const HermitianOperator> problem_op_;
  double ground_energy_ = 0.0;
};

/// <Psi_f| sum XX |Psi_f> for the given flat parameters.
double pbvqo_cost(const PbvqoProblem& problem, const Eigen::VectorXd& params);

struct RunRecord {
  int run_id = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd initial_params;
  Eigen::VectorXd final_params;
  std::vector<double> cost_history;
  double final_energy = 0.0;
  double final_error_rate = 0.0;
  std::optional<double> energetic_cost;
  double wall_time_s = 0.0;
  bool converged = false;
  std::string note;
};

struct SummaryStats {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

/// Quartile summary of the final error rates (linear-interpolation quantiles).
SummaryStats summarize_error_rates(const std::vector<RunRecord>& runs);

struct StudyResult {
  std::vector<RunRecord> runs;
  SummaryStats summary;
  std::string label;
  double duration = 0.0;
};

/// Draws x0 uniformly from A in [-5,5], phi in [0,2pi) per restart.
Eigen::VectorXd random_initial_params(int ansatz_size, std::mt19937_64& rng);

/// Seed for run k derived from the master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t k);

/// BFGS ensemble over random restarts.
StudyResult run_pbvqo(const PbvqoProblem& problem, int n_restarts, std::uint64_t seed,
                      const BfgsOptions& options = {}, int workers = 1);

/// One StudyResult per duration.
std::vector<StudyResult> sweep_duration(const PbvqoProblem& problem_template,
                                        const std::vector<double>& durations,
                                        int n_restarts, std::uint64_t seed,
                                        const BfgsOptions& options = {}, int workers = 1);

/// GA on the easy problem, best parameters re-used as BFGS start on the hard
/// problem. The returned record describes the hard-problem run.
struct MetaLearnResult {
  RunRecord hard_run;
  OptimizerReport easy_report;
  double easy_error_rate = 0.0;
  bool easy_solved = false;
};

/// GA defaults for the pulse parameters: A in [-5,5], phi in [0,2pi).
GaConfig pbvqo_ga_defaults(int ansatz_size, std::uint64_t seed = 0);

MetaLearnResult meta_learn(const PbvqoProblem& easy, const PbvqoProblem& hard,
                           const GaConfig& ga_config, std::uint64_t seed,
                           const BfgsOptions& options = {});

/// Baseline, Meta-BFGS, and Meta-GA ensembles on the hard problem.
struct HistogramStudy {
  StudyResult baseline;
  StudyResult meta_bfgs;
  StudyResult meta_ga;
};

HistogramStudy histogram_study(const PbvqoProblem& hard, const PbvqoProblem& easy,
                               int n_runs, std::uint64_t seed,
                               const BfgsOptions& options = {},
                               const GaConfig& ga_template = {}, int workers = 1);

namespace detail {
/// Runs fn(0..n-1) on a bounded pool; results must be written to
/// per-index slots by the callers.
void parallel_runs(int n, int workers, const std::function<void(int)>& fn);
}  // namespace detail

/// QAOA layers and parameters.
struct QaoaParams {
  Eigen::VectorXd betas;
  Eigen::VectorXd gammas;

  int depth() const { return static_cast<int>(betas.size()); }
  void validate() const;
};

/// |Psi_f> = prod_j exp(-i beta_j H_mix) exp(-i gamma_j H_p) |+>^N.
StateVector qaoa_state(const ProblemGraph& graph, const QaoaParams& params);

/// <Psi_f| sum ZZ |Psi_f>.
double qaoa_energy(const ProblemGraph& graph, const QaoaParams& params);

/// BFGS ensemble over random QAOA angle initializations in [0, pi)^{2p}.
StudyResult run_qaoa(const ProblemGraph& graph, int depth, int n_restarts,
                     std::uint64_t seed, const BfgsOptions& options = {});

/// Digitized annealing schedule: beta_i = B(i dt) dt, gamma_i = Gamma(i dt) dt.
QaoaParams qaoa_params_from_schedule(const std::function<double(double)>& B,
                                     const std::function<double(double)>& Gamma, int depth,
                                     double total_time);

/// Gate-time model for the QAOA energetic cost: each of the 2p layers
/// exp(-i theta H) runs the Hamiltonian theta*H/tau for a window tau, with
/// theta wrapped to (-pi, pi]; windows are sequential. The default tau packs
/// the whole circuit into unit total time.
struct QaoaGateTimeModel {
  double gate_time = 0.0;  // non-positive: tau = 1 / (2 p)

  double resolved(int depth) const;
};

double qaoa_energetic_cost(const ProblemGraph& graph, const QaoaParams& params,
                           const QaoaGateTimeModel& model = {});

/// Time-averaged Frobenius norm of drift + F[P(t)] coupling over [0, T].
double pbvqo_energetic_cost(const PbvqoProblem& problem, const Eigen::VectorXd& params,
                            int n_quadrature_steps = 0);

struct EnergeticCostComparison {
  double pbvqo_cost = 0.0;
  double qaoa_cost = 0.0;
};

/// Ensemble-averaged energetic costs of converged PBVQO and QAOA runs.
EnergeticCostComparison compare_energetic_cost(const PbvqoProblem& problem,
                                               const StudyResult& pbvqo_result,
                                               const ProblemGraph& graph,
                                               const StudyResult& qaoa_result,
                                               const QaoaGateTimeModel& model = {});

}  // namespace pbvqo
