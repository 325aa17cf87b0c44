#include "pbvqo/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace pbvqo {

namespace {

struct CountedCost {
  const CostFunction& f;
  long count = 0;
  bool tainted = false;  // saw a non-finite value; the caller must abort
  double operator()(const Eigen::VectorXd& x) {
    ++count;
    const double value = f(x);
    if (!std::isfinite(value)) tainted = true;
    return value;
  }
};

}  // namespace

Eigen::VectorXd finite_difference_gradient(const CostFunction& cost,
                                           const Eigen::VectorXd& x, double h,
                                           long* evaluations) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  Eigen::VectorXd grad(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    probe[k] = x[k] + h;
    const double fp = cost(probe);
    probe[k] = x[k] - h;
    const double fm = cost(probe);
    probe[k] = x[k];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw std::runtime_error("non-finite cost in finite-difference gradient");
    grad[k] = (fp - fm) / (2.0 * h);
  }
  if (evaluations) *evaluations += 2 * x.size();
  return grad;
}

namespace {

// Directional derivative of f along p at x + alpha p, by central difference.
double directional_derivative(CountedCost& cost, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& p, double alpha, double h) {
  const double fp = cost(x + (alpha + h) * p);
  const double fm = cost(x + (alpha - h) * p);
  return (fp - fm) / (2.0 * h);
}

struct LineSearchResult {
  double alpha = 0.0;
  double value = 0.0;
  bool ok = false;
};

// Strong-Wolfe line search (bracket + zoom).
LineSearchResult wolfe_search(CountedCost& cost, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& p, double f0, double d0,
                              const BfgsOptions& opt) {
  const double h = opt.fd_step;
  const double c1 = opt.wolfe_c1;
  const double c2 = opt.wolfe_c2;
  const double alpha_max = 1e3;

  auto phi = [&](double a) { return cost(x + a * p); };

  auto zoom = [&](double lo, double hi, double f_lo) -> LineSearchResult {
    for (int iter = 0; iter < 30; ++iter) {
      const double a = 0.5 * (lo + hi);
      const double fa = phi(a);
      if (!std::isfinite(fa)) return {};
      if (fa > f0 + c1 * a * d0 || fa >= f_lo) {
        hi = a;
      } else {
        const double da = directional_derivative(cost, x, p, a, h);
        if (std::abs(da) <= -c2 * d0) return {a, fa, true};
        if (da * (hi - lo) >= 0.0) hi = lo;
        lo = a;
        f_lo = fa;
      }
      if (std::abs(hi - lo) < 1e-14) return {a, fa, true};
    }
    const double a = 0.5 * (lo + hi);
    return {a, phi(a), true};
  };

  double a_prev = 0.0;
  double f_prev = f0;
  double a = 1.0;
  for (int iter = 0; iter < 20; ++iter) {
    const double fa = phi(a);
    if (!std::isfinite(fa)) return {};
    if (fa > f0 + c1 * a * d0 || (iter > 0 && fa >= f_prev)) return zoom(a_prev, a, f_prev);
    const double da = directional_derivative(cost, x, p, a, h);
    if (std::abs(da) <= -c2 * d0) return {a, fa, true};
    if (da >= 0.0) return zoom(a, a_prev, fa);
    a_prev = a;
    f_prev = fa;
    a = std::min(2.0 * a, alpha_max);
    if (a >= alpha_max) return {a_prev, f_prev, true};
  }
  return {a_prev, f_prev, true};
}

}  // namespace

OptimizerReport bfgs_minimize(const CostFunction& cost_fn, const Eigen::VectorXd& x0,
                              const BfgsOptions& opt) {
  CountedCost cost{cost_fn};
  const Eigen::Index n = x0.size();

  OptimizerReport report;
  report.best_params = x0;

  Eigen::VectorXd x = x0;
  double f = cost(x);
  if (!std::isfinite(f)) throw std::invalid_argument("cost not finite at x0");
  report.cost_history.push_back(f);
  report.best_cost = f;

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd grad;
  try {
    grad = finite_difference_gradient(cost_fn, x, opt.fd_step, &cost.count);
  } catch (const std::runtime_error&) {
    report.evaluations = cost.count;
    return report;
  }

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if (grad.norm() < opt.gtol) {
      report.converged = true;
      break;
    }
    Eigen::VectorXd p = -(h_inv * grad);
    double d0 = grad.dot(p);
    if (d0 >= 0.0) {  // stale curvature, restart from steepest descent
      h_inv.setIdentity();
      p = -grad;
      d0 = grad.dot(p);
    }

    const auto ls = wolfe_search(cost, x, p, f, d0, opt);
    if (!ls.ok || !std::isfinite(ls.value) || cost.tainted) break;

    const Eigen::VectorXd x_new = x + ls.alpha * p;
    Eigen::VectorXd grad_new;
    try {
      grad_new = finite_difference_gradient(cost_fn, x_new, opt.fd_step, &cost.count);
    } catch (const std::runtime_error&) {
      break;
    }

    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      h_inv = (eye - rho * s * y.transpose()) * h_inv * (eye - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }

    const double f_drop = f - ls.value;
    x = x_new;
    f = ls.value;
    grad = grad_new;
    report.cost_history.push_back(f);
    if (f < report.best_cost) {
      report.best_cost = f;
      report.best_params = x;
    }
    if (f_drop >= 0.0 && f_drop < opt.ftol) {
      report.converged = true;
      break;
    }
  }

  if (f <= report.best_cost) {
    report.best_cost = f;
    report.best_params = x;
  }
  if (cost.tainted) report.converged = false;
  report.evaluations = cost.count;
  return report;
}

void GaConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("population too small");
  if (generations < 1) throw std::invalid_argument("need at least one generation");
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 ||
      mutation_rate > 1.0)
    throw std::invalid_argument("rates must lie in [0, 1]");
  if (!(mutation_scale > 0.0)) throw std::invalid_argument("mutation_scale must be positive");
  if (elitism_count < 0 || elitism_count >= population_size)
    throw std::invalid_argument("elitism_count must be below population_size");
  if (bounds.empty()) throw std::invalid_argument("bounds must be provided");
  for (auto [lo, hi] : bounds)
    if (!(lo < hi)) throw std::invalid_argument("each bound must satisfy lo < hi");
}

OptimizerReport ga_minimize(const CostFunction& cost_fn, const GaConfig& config) {
  config.validate();
  CountedCost cost{cost_fn};
  const int n = static_cast<int>(config.bounds.size());
  const int pop_size = config.population_size;

  std::mt19937_64 rng(config.seed);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
  };
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Eigen::VectorXd> population(pop_size, Eigen::VectorXd(n));
  std::vector<double> costs(pop_size);
  for (auto& ind : population)
    for (int k = 0; k < n; ++k)
      ind[k] = uniform(config.bounds[k].first, config.bounds[k].second);
  for (int i = 0; i < pop_size; ++i) costs[i] = cost(population[i]);

  OptimizerReport report;
  report.seed = config.seed;
  report.best_cost = std::numeric_limits<double>::infinity();

  auto record_best = [&]() {
    int best = 0;
    for (int i = 1; i < pop_size; ++i)
      if (costs[i] < costs[best]) best = i;
    if (costs[best] < report.best_cost) {
      report.best_cost = costs[best];
      report.best_params = population[best];
    }
    report.cost_history.push_back(report.best_cost);
    return best;
  };
  record_best();

  auto tournament = [&]() -> const Eigen::VectorXd& {
    int best = static_cast<int>(rng() % pop_size);
    for (int k = 1; k < 3; ++k) {
      const int c = static_cast<int>(rng() % pop_size);
      if (costs[c] < costs[best]) best = c;
    }
    return population[best];
  };

  auto clamp = [&](Eigen::VectorXd& ind) {
    for (int k = 0; k < n; ++k)
      ind[k] = std::clamp(ind[k], config.bounds[k].first, config.bounds[k].second);
  };

  for (int gen = 0; gen < config.generations; ++gen) {
    std::vector<int> order(pop_size);
    for (int i = 0; i < pop_size; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return costs[a] < costs[b]; });

    std::vector<Eigen::VectorXd> next;
    next.reserve(pop_size);
    for (int e = 0; e < config.elitism_count; ++e) next.push_back(population[order[e]]);

    while (static_cast<int>(next.size()) < pop_size) {
      Eigen::VectorXd a = tournament();
      Eigen::VectorXd b = tournament();
      if (uniform(0.0, 1.0) < config.crossover_rate) {
        // BLX-alpha blend, alpha = 0.5
        for (int k = 0; k < n; ++k) {
          const double lo = std::min(a[k], b[k]);
          const double hi = std::max(a[k], b[k]);
          const double ext = 0.5 * (hi - lo);
          const double c1 = uniform(lo - ext, hi + ext);
          const double c2 = uniform(lo - ext, hi + ext);
          a[k] = c1;
          b[k] = c2;
        }
      }
      for (Eigen::VectorXd* child : {&a, &b}) {
        for (int k = 0; k < n; ++k)
          if (uniform(0.0, 1.0) < config.mutation_rate)
            (*child)[k] += config.mutation_scale * gauss(rng);
        clamp(*child);
        if (static_cast<int>(next.size()) < pop_size) next.push_back(*child);
      }
    }

    population = std::move(next);
    for (int i = 0; i < pop_size; ++i) costs[i] = cost(population[i]);
    record_best();
  }

  report.converged = true;
  report.evaluations = cost.count;
  return report;
}

}  // namespace pbvqo
