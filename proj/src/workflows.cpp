#include "pbvqo/workflows.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pbvqo/symmetry.hpp"

namespace pbvqo {

namespace {

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double wrap_angle(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(theta + std::numbers::pi, two_pi);
  if (w < 0.0) w += two_pi;
  return w - std::numbers::pi;
}

}  // namespace

PbvqoProblem PbvqoProblem::ring(int n_qubits, double duration, int ansatz_size,
                                double omega, double coupling_bound) {
  PbvqoProblem p;
  p.model = HardwareModel::uniform(n_qubits, omega, coupling_bound);
  p.graph = ProblemGraph::ring(n_qubits);
  p.ansatz_size = ansatz_size;
  p.duration = duration;
  p.validate();
  return p;
}

void PbvqoProblem::validate() const {
  model.validate();
  graph.validate();
  if (graph.n_nodes != model.n_qubits)
    throw std::invalid_argument("graph node count must equal qubit count");
  if (ansatz_size < 1) throw std::invalid_argument("ansatz_size must be positive");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
}

PulseAnsatz make_ansatz(const PbvqoProblem& problem, const Eigen::VectorXd& params) {
  const int n = problem.ansatz_size;
  if (params.size() != 2 * n)
    throw std::invalid_argument("parameter vector must have length 2n");
  return PulseAnsatz(params.head(n), params.tail(n), problem.duration);
}

PbvqoCostEvaluator::PbvqoCostEvaluator(PbvqoProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
  problem_op_ = std::make_shared<HermitianOperator>(problem_hamiltonian(problem_.graph));
  ground_energy_ = ground_energy(*problem_op_);
  if (RingSector::applicable(problem_.model, problem_.graph))
    sector_ = std::make_shared<RingSector>(problem_.model, problem_.graph);
}

double PbvqoCostEvaluator::operator()(const Eigen::VectorXd& params) const {
  const PulseAnsatz ansatz = make_ansatz(problem_, params);
  if (sector_) return sector_->final_energy(ansatz, problem_.evolution);
  const StateVector final_state =
      evolve(initial_state(problem_.model.n_qubits), problem_.model, ansatz,
             problem_.evolution);
  return expectation(final_state, *problem_op_);
}

CostFunction PbvqoCostEvaluator::as_cost() const {
  return [this](const Eigen::VectorXd& x) { return (*this)(x); };
}

double pbvqo_cost(const PbvqoProblem& problem, const Eigen::VectorXd& params) {
  return PbvqoCostEvaluator(problem)(params);
}

SummaryStats summarize_error_rates(const std::vector<RunRecord>& runs) {
  if (runs.empty()) throw std::invalid_argument("no runs to summarize");
  std::vector<double> r;
  r.reserve(runs.size());
  for (const auto& run : runs) r.push_back(run.final_error_rate);
  std::sort(r.begin(), r.end());
  auto quantile = [&r](double q) {
    const double pos = q * (r.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, r.size() - 1);
    const double frac = pos - lo;
    return r[lo] * (1.0 - frac) + r[hi] * frac;
  };
  return {r.front(), quantile(0.25), quantile(0.5), quantile(0.75), r.back()};
}

Eigen::VectorXd random_initial_params(int ansatz_size, std::mt19937_64& rng) {
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  Eigen::VectorXd x(2 * ansatz_size);
  for (int i = 0; i < ansatz_size; ++i) x[i] = uniform(-5.0, 5.0);
  for (int i = 0; i < ansatz_size; ++i)
    x[ansatz_size + i] = uniform(0.0, 2.0 * std::numbers::pi);
  return x;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t k) {
  // splitmix64 on master_seed + k
  std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

RunRecord bfgs_run(const PbvqoCostEvaluator& evaluator, const Eigen::VectorXd& x0,
                   int run_id, std::uint64_t seed, const BfgsOptions& options,
                   const std::string& note) {
  const auto start = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.run_id = run_id;
  rec.seed = seed;
  rec.initial_params = x0;
  rec.note = note;
  try {
    OptimizerReport report = bfgs_minimize(evaluator.as_cost(), x0, options);
    rec.final_params = report.best_params;
    rec.cost_history = std::move(report.cost_history);
    rec.final_energy = report.best_cost;
    rec.final_error_rate = error_rate(report.best_cost, evaluator.ground());
    rec.converged = report.converged;
  } catch (const std::exception& e) {
    rec.final_params = x0;
    rec.final_energy = std::numeric_limits<double>::quiet_NaN();
    rec.final_error_rate = std::numeric_limits<double>::quiet_NaN();
    rec.converged = false;
    rec.note = note.empty() ? e.what() : note + "; " + e.what();
  }
  rec.wall_time_s = elapsed_s(start);
  return rec;
}

}  // namespace

namespace detail {

void parallel_runs(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) fn(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

StudyResult run_pbvqo(const PbvqoProblem& problem, int n_restarts, std::uint64_t seed,
                      const BfgsOptions& options, int workers) {
  if (n_restarts < 1) throw std::invalid_argument("n_restarts must be >= 1");
  PbvqoCostEvaluator evaluator(problem);
  StudyResult result;
  result.label = "pbvqo";
  result.duration = problem.duration;
  result.runs.resize(n_restarts);
  detail::parallel_runs(n_restarts, workers, [&](int k) {
    const std::uint64_t run_seed = derive_seed(seed, k);
    std::mt19937_64 rng(run_seed);
    const Eigen::VectorXd x0 = random_initial_params(problem.ansatz_size, rng);
    result.runs[k] = bfgs_run(evaluator, x0, k, run_seed, options, "");
  });
  result.summary = summarize_error_rates(result.runs);
  return result;
}

std::vector<StudyResult> sweep_duration(const PbvqoProblem& problem_template,
                                        const std::vector<double>& durations,
                                        int n_restarts, std::uint64_t seed,
                                        const BfgsOptions& options, int workers) {
  if (durations.empty()) throw std::invalid_argument("durations must be nonempty");
  std::vector<StudyResult> results;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    PbvqoProblem p = problem_template;
    p.duration = durations[i];
    p.validate();
    results.push_back(
        run_pbvqo(p, n_restarts, derive_seed(seed, 1000 + i), options, workers));
    results.back().duration = durations[i];
  }
  return results;
}

GaConfig pbvqo_ga_defaults(int ansatz_size, std::uint64_t seed) {
  GaConfig config;
  config.seed = seed;
  for (int i = 0; i < ansatz_size; ++i) config.bounds.push_back({-5.0, 5.0});
  for (int i = 0; i < ansatz_size; ++i)
    config.bounds.push_back({0.0, 2.0 * std::numbers::pi});
  return config;
}

MetaLearnResult meta_learn(const PbvqoProblem& easy, const PbvqoProblem& hard,
                           const GaConfig& ga_config, std::uint64_t seed,
                           const BfgsOptions& options) {
  if (easy.ansatz_size != hard.ansatz_size)
    throw std::invalid_argument("easy and hard problems must share ansatz_size");
  PbvqoCostEvaluator easy_eval(easy);
  PbvqoCostEvaluator hard_eval(hard);

  GaConfig config = ga_config;
  if (config.bounds.empty()) config = pbvqo_ga_defaults(easy.ansatz_size, seed);
  config.seed = seed;
  config.validate();

  MetaLearnResult result;
  result.easy_report = ga_minimize(easy_eval.as_cost(), config);
  result.easy_error_rate = error_rate(result.easy_report.best_cost, easy_eval.ground());
  result.easy_solved = result.easy_error_rate < 0.05;

  const std::string note =
      result.easy_solved ? "meta transfer" : "meta transfer (easy problem unsolved)";
  result.hard_run =
      bfgs_run(hard_eval, result.easy_report.best_params, 0, seed, options, note);
  return result;
}

HistogramStudy histogram_study(const PbvqoProblem& hard, const PbvqoProblem& easy,
                               int n_runs, std::uint64_t seed, const BfgsOptions& options,
                               const GaConfig& ga_template, int workers) {
  if (n_runs < 10) throw std::invalid_argument("histogram study needs at least 10 runs");
  PbvqoCostEvaluator hard_eval(hard);
  PbvqoCostEvaluator easy_eval(easy);

  HistogramStudy study;
  study.baseline.label = "baseline";
  study.meta_bfgs.label = "meta-bfgs";
  study.meta_ga.label = "meta-ga";
  study.baseline.duration = study.meta_bfgs.duration = study.meta_ga.duration =
      hard.duration;
  study.baseline.runs.resize(n_runs);
  study.meta_bfgs.runs.resize(n_runs);
  study.meta_ga.runs.resize(n_runs);

  detail::parallel_runs(n_runs, workers, [&](int k) {
    const std::uint64_t run_seed = derive_seed(seed, 10000 + k);
    std::mt19937_64 rng(run_seed);
    const Eigen::VectorXd x0 = random_initial_params(hard.ansatz_size, rng);
    study.baseline.runs[k] = bfgs_run(hard_eval, x0, k, run_seed, options, "baseline");
  });

  detail::parallel_runs(n_runs, workers, [&](int k) {
    const std::uint64_t run_seed = derive_seed(seed, 20000 + k);
    std::mt19937_64 rng(run_seed);
    const Eigen::VectorXd x0 = random_initial_params(easy.ansatz_size, rng);
    const RunRecord easy_run = bfgs_run(easy_eval, x0, k, run_seed, options, "easy");
    study.meta_bfgs.runs[k] =
        bfgs_run(hard_eval, easy_run.final_params, k, run_seed, options, "meta-bfgs");
  });

  detail::parallel_runs(n_runs, workers, [&](int k) {
    const std::uint64_t run_seed = derive_seed(seed, 30000 + k);
    GaConfig config = ga_template;
    if (config.bounds.empty()) config = pbvqo_ga_defaults(easy.ansatz_size);
    config.seed = run_seed;
    const OptimizerReport ga = ga_minimize(easy_eval.as_cost(), config);
    study.meta_ga.runs[k] =
        bfgs_run(hard_eval, ga.best_params, k, run_seed, options, "meta-ga");
  });

  study.baseline.summary = summarize_error_rates(study.baseline.runs);
  study.meta_bfgs.summary = summarize_error_rates(study.meta_bfgs.runs);
  study.meta_ga.summary = summarize_error_rates(study.meta_ga.runs);
  return study;
}

void QaoaParams::validate() const {
  if (betas.size() != gammas.size())
    throw std::invalid_argument("betas and gammas must have equal length");
}

StateVector qaoa_state(const ProblemGraph& graph, const QaoaParams& params) {
  params.validate();
  graph.validate();
  const int n = graph.n_nodes;
  const Eigen::Index dim = Eigen::Index{1} << n;

  Eigen::VectorXcd psi =
      Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const Eigen::VectorXd diag = qaoa_problem_diagonal(graph);

  for (int layer = 0; layer < params.depth(); ++layer) {
    const double gamma = params.gammas[layer];
    for (Eigen::Index s = 0; s < dim; ++s)
      psi[s] *= std::exp(Complex(0.0, -gamma * diag[s]));

    // exp(-i beta sum sigma^x) acts as a product of single-qubit rotations.
    const double beta = params.betas[layer];
    const Complex c(std::cos(beta), 0.0);
    const Complex s_factor(0.0, -std::sin(beta));
    for (int q = 0; q < n; ++q) {
      const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
      for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
        for (Eigen::Index i = block; i < block + stride; ++i) {
          const Complex a = psi[i];
          const Complex b = psi[i + stride];
          psi[i] = c * a + s_factor * b;
          psi[i + stride] = s_factor * a + c * b;
        }
      }
    }
  }
  return StateVector(n, std::move(psi));
}

double qaoa_energy(const ProblemGraph& graph, const QaoaParams& params) {
  const StateVector psi = qaoa_state(graph, params);
  const Eigen::VectorXd diag = qaoa_problem_diagonal(graph);
  double energy = 0.0;
  for (Eigen::Index s = 0; s < diag.size(); ++s)
    energy += std::norm(psi.amplitudes[s]) * diag[s];
  return energy;
}

StudyResult run_qaoa(const ProblemGraph& graph, int depth, int n_restarts,
                     std::uint64_t seed, const BfgsOptions& options) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (n_restarts < 1) throw std::invalid_argument("n_restarts must be >= 1");
  graph.validate();

  const double ground = ground_energy(qaoa_problem_hamiltonian(graph));
  auto cost = [&graph, depth](const Eigen::VectorXd& x) {
    QaoaParams p{x.head(depth), x.tail(depth)};
    return qaoa_energy(graph, p);
  };

  StudyResult result;
  result.label = "qaoa";
  for (int k = 0; k < n_restarts; ++k) {
    const std::uint64_t run_seed = derive_seed(seed, 40000 + k);
    std::mt19937_64 rng(run_seed);
    Eigen::VectorXd x0(2 * depth);
    for (Eigen::Index i = 0; i < x0.size(); ++i)
      x0[i] = std::numbers::pi * ((rng() >> 11) * 0x1.0p-53);

    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.run_id = k;
    rec.seed = run_seed;
    rec.initial_params = x0;
    rec.note = "qaoa";
    OptimizerReport report = bfgs_minimize(cost, x0, options);
    rec.final_params = report.best_params;
    rec.cost_history = std::move(report.cost_history);
    rec.final_energy = report.best_cost;
    rec.final_error_rate = error_rate(report.best_cost, ground);
    rec.converged = report.converged;
    rec.wall_time_s = elapsed_s(start);
    result.runs.push_back(std::move(rec));
  }
  result.summary = summarize_error_rates(result.runs);
  return result;
}

QaoaParams qaoa_params_from_schedule(const std::function<double(double)>& B,
                                     const std::function<double(double)>& Gamma, int depth,
                                     double total_time) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (!(total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
  const double dt = total_time / depth;
  QaoaParams params{Eigen::VectorXd(depth), Eigen::VectorXd(depth)};
  for (int i = 1; i <= depth; ++i) {
    params.betas[i - 1] = B(i * dt) * dt;
    params.gammas[i - 1] = Gamma(i * dt) * dt;
  }
  return params;
}

double QaoaGateTimeModel::resolved(int depth) const {
  if (gate_time > 0.0) return gate_time;
  return 1.0 / (2.0 * depth);
}

double qaoa_energetic_cost(const ProblemGraph& graph, const QaoaParams& params,
                           const QaoaGateTimeModel& model) {
  params.validate();
  const int p = params.depth();
  if (p < 1) throw std::invalid_argument("need at least one layer");
  const double tau = model.resolved(p);

  const double problem_norm = qaoa_problem_diagonal(graph).norm();
  const double mixer_norm =
      std::sqrt(static_cast<double>(graph.n_nodes) *
                static_cast<double>(Eigen::Index{1} << graph.n_nodes));

  // Each gate window contributes |theta| * ||H||_F regardless of tau; the
  // time normalization is over the 2p sequential windows.
  double integral = 0.0;
  for (int j = 0; j < p; ++j) {
    integral += std::abs(wrap_angle(params.gammas[j])) * problem_norm;
    integral += std::abs(wrap_angle(params.betas[j])) * mixer_norm;
  }
  return integral / (2.0 * p * tau);
}

double pbvqo_energetic_cost(const PbvqoProblem& problem, const Eigen::VectorXd& params,
                            int n_quadrature_steps) {
  const PulseAnsatz ansatz = make_ansatz(problem, params);
  int steps = n_quadrature_steps;
  if (steps <= 0)
    steps = static_cast<int>(
        std::ceil(problem.duration / problem.evolution.resolved_step(problem.duration)));
  return energetic_cost(pbvqo_norm_schedule(problem.model, ansatz), problem.duration,
                        steps);
}

EnergeticCostComparison compare_energetic_cost(const PbvqoProblem& problem,
                                               const StudyResult& pbvqo_result,
                                               const ProblemGraph& graph,
                                               const StudyResult& qaoa_result,
                                               const QaoaGateTimeModel& model) {
  if (pbvqo_result.runs.empty() || qaoa_result.runs.empty())
    throw std::invalid_argument("both ensembles must be nonempty");

  double c_pbvqo = 0.0;
  int counted = 0;
  for (const auto& run : pbvqo_result.runs) {
    if (!run.final_params.size()) continue;
    c_pbvqo += pbvqo_energetic_cost(problem, run.final_params);
    ++counted;
  }
  c_pbvqo /= std::max(counted, 1);

  double c_qaoa = 0.0;
  counted = 0;
  for (const auto& run : qaoa_result.runs) {
    const int p = static_cast<int>(run.final_params.size()) / 2;
    QaoaParams params{run.final_params.head(p), run.final_params.tail(p)};
    c_qaoa += qaoa_energetic_cost(graph, params, model);
    ++counted;
  }
  c_qaoa /= std::max(counted, 1);

  return {c_pbvqo, c_qaoa};
}

}  // namespace pbvqo
