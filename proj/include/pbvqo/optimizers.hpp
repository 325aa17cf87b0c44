#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace pbvqo {

using CostFunction = std::function<double(const Eigen::VectorXd&)>;

struct OptimizerReport {
  Eigen::VectorXd best_params;
  double best_cost = 0.0;
  std::vector<double> cost_history;  // accepted iterates (BFGS) / generation best (GA)
  long evaluations = 0;
  bool converged = false;
  std::uint64_t seed = 0;
};

struct BfgsOptions {
  double gtol = 1e-6;
  double ftol = 1e-10;
  int max_iterations = 500;
  double fd_step = 1e-5;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
};

/// Central finite differences, (f(x+h e_k) - f(x-h e_k)) / 2h per coordinate.
Eigen::VectorXd finite_difference_gradient(const CostFunction& cost,
                                           const Eigen::VectorXd& x, double h,
                                           long* evaluations = nullptr);

/// BFGS with inverse-Hessian update and a strong-Wolfe line search; gradients
/// by central finite differences. A non-finite cost mid-run aborts with the
/// best iterate so far and converged = false.
OptimizerReport bfgs_minimize(const CostFunction& cost, const Eigen::VectorXd& x0,
                              const BfgsOptions& options = {});

struct GaConfig {
  int population_size = 50;
  int generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  double mutation_scale = 0.3;
  int elitism_count = 2;
  std::vector<std::pair<double, double>> bounds;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Generational real-valued GA: tournament selection (size 3), BLX-0.5 blend
/// crossover, additive Gaussian mutation, elitism. Fitness is -cost; returns
/// the best individual ever seen.
OptimizerReport ga_minimize(const CostFunction& cost, const GaConfig& config);

}  // namespace pbvqo
