#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pbvqo/optimizers.hpp"
#include "test_helpers.hpp"

using namespace pbvqo;
using pbvqo::testing::make_params;

namespace {

double sphere(const Eigen::VectorXd& x) { return x.squaredNorm(); }

double rosenbrock(const Eigen::VectorXd& x) {
  const double a = 1.0 - x(0);
  const double b = x(1) - x(0) * x(0);
  return a * a + 100.0 * b * b;
}

GaConfig sphere_config(int dims, std::uint64_t seed) {
  GaConfig config;
  config.generations = 100;
  config.seed = seed;
  for (int i = 0; i < dims; ++i) config.bounds.push_back({-5.0, 5.0});
  return config;
}

}  // namespace

TEST_SUITE_BEGIN("optimizers");

TEST_CASE("finite difference gradient") {
  SUBCASE("quadratic slope") {
    const auto cost = [](const Eigen::VectorXd& x) { return x(0) * x(0); };
    const Eigen::VectorXd g =
        finite_difference_gradient(cost, make_params({3.0}), 1e-5);
    CHECK(std::abs(g(0) - 6.0) < 1e-6);
  }
  SUBCASE("linear cost is exact up to rounding") {
    const Eigen::VectorXd c = make_params({2.0, -1.5, 0.25});
    const auto cost = [&](const Eigen::VectorXd& x) { return c.dot(x); };
    const Eigen::VectorXd g =
        finite_difference_gradient(cost, make_params({0.3, 0.1, -0.7}), 1e-5);
    CHECK((g - c).cwiseAbs().maxCoeff() < 1e-9);
  }
  SUBCASE("second-order accuracy: error shrinks ~100x when h shrinks 10x") {
    // Non-quadratic cost so the h^2 truncation term is visible.
    const auto cost = [](const Eigen::VectorXd& x) { return std::exp(x(0)); };
    const Eigen::VectorXd x = make_params({0.5});
    const double exact = std::exp(0.5);
    const double err1 =
        std::abs(finite_difference_gradient(cost, x, 1e-2)(0) - exact);
    const double err2 =
        std::abs(finite_difference_gradient(cost, x, 1e-3)(0) - exact);
    const double exponent = std::log10(err1 / err2);
    CHECK(exponent >= 1.8);
    CHECK(exponent <= 2.2);
  }
  SUBCASE("evaluation counter") {
    long evals = 0;
    finite_difference_gradient(sphere, make_params({1.0, 2.0}), 1e-5, &evals);
    CHECK(evals == 4);
  }
}

TEST_CASE("bfgs on standard benchmarks") {
  SUBCASE("sphere from (3, -4)") {
    const OptimizerReport report = bfgs_minimize(sphere, make_params({3.0, -4.0}));
    CHECK(report.best_cost < 1e-12);
    CHECK(report.converged);
  }
  SUBCASE("rosenbrock from (-1.2, 1)") {
    const OptimizerReport report =
        bfgs_minimize(rosenbrock, make_params({-1.2, 1.0}));
    CHECK(std::abs(report.best_params(0) - 1.0) < 1e-6);
    CHECK(std::abs(report.best_params(1) - 1.0) < 1e-6);
  }
  SUBCASE("diagonal quadratics finish in a few iterations up to dim 6") {
    for (int dims = 2; dims <= 6; ++dims) {
      Eigen::VectorXd scales(dims), x0(dims);
      for (int i = 0; i < dims; ++i) {
        scales(i) = 1.0 + i;
        x0(i) = 2.0 - 0.5 * i;
      }
      const auto cost = [&](const Eigen::VectorXd& x) {
        return (scales.array() * x.array().square()).sum();
      };
      const OptimizerReport report = bfgs_minimize(cost, x0);
      CHECK(report.best_cost < 1e-10);
      // With an exact line search a quadratic would finish in dims steps; the
      // inexact strong-Wolfe search needs a small constant factor more.
      CHECK(static_cast<int>(report.cost_history.size()) <= 2 * dims + 8);
    }
  }
}

TEST_CASE("bfgs report invariants") {
  const OptimizerReport report = bfgs_minimize(rosenbrock, make_params({-1.2, 1.0}));
  for (std::size_t i = 1; i < report.cost_history.size(); ++i)
    CHECK(report.cost_history[i] <= report.cost_history[i - 1] + 1e-15);
  CHECK(report.best_cost ==
        doctest::Approx(*std::min_element(report.cost_history.begin(),
                                          report.cost_history.end())));
  CHECK(report.evaluations > 0);

  SUBCASE("non-finite cost aborts with best iterate, converged = false") {
    // Rosenbrock needs hundreds of evaluations, so the NaN wall at 40 calls
    // is guaranteed to land mid-run rather than after convergence.
    int calls = 0;
    const auto cost = [&](const Eigen::VectorXd& x) {
      return ++calls > 40 ? std::numeric_limits<double>::quiet_NaN()
                          : rosenbrock(x);
    };
    const OptimizerReport aborted = bfgs_minimize(cost, make_params({-1.2, 1.0}));
    CHECK_FALSE(aborted.converged);
    CHECK(std::isfinite(aborted.best_cost));
  }
}

TEST_CASE("genetic algorithm on the sphere benchmark") {
  // Budget-matched random search as the control arm.
  auto random_search_best = [](int evals, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    double best = 1e300;
    for (int i = 0; i < evals; ++i) {
      Eigen::VectorXd x(6);
      for (int d = 0; d < 6; ++d) x(d) = dist(rng);
      best = std::min(best, sphere(x));
    }
    return best;
  };

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const GaConfig config = sphere_config(6, seed);
    const OptimizerReport report = ga_minimize(sphere, config);
    CHECK(report.best_cost < 1e-3);
    CHECK(random_search_best(static_cast<int>(report.evaluations), seed) > 1e-3);
  }
}

TEST_CASE("genetic algorithm invariants") {
  SUBCASE("constant cost") {
    GaConfig config = sphere_config(3, 4);
    config.generations = 10;
    const OptimizerReport report =
        ga_minimize([](const Eigen::VectorXd&) { return 7.25; }, config);
    CHECK(report.best_cost == doctest::Approx(7.25));
  }
  SUBCASE("elitism keeps generation best non-increasing") {
    const OptimizerReport report = ga_minimize(rosenbrock, sphere_config(2, 8));
    REQUIRE(!report.cost_history.empty());
    for (std::size_t i = 1; i < report.cost_history.size(); ++i)
      CHECK(report.cost_history[i] <= report.cost_history[i - 1] + 1e-15);
  }
  SUBCASE("seed determinism") {
    const OptimizerReport a = ga_minimize(sphere, sphere_config(4, 12));
    const OptimizerReport b = ga_minimize(sphere, sphere_config(4, 12));
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.best_params == b.best_params);
    CHECK(a.cost_history == b.cost_history);
  }
  SUBCASE("config validation") {
    GaConfig bad = sphere_config(2, 1);
    bad.elitism_count = bad.population_size;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sphere_config(2, 1);
    bad.crossover_rate = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = sphere_config(2, 1);
    bad.bounds.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }
}

TEST_SUITE_END();
