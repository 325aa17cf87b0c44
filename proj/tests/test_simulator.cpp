#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "pbvqo/hamiltonians.hpp"
#include "pbvqo/simulator.hpp"
#include "pbvqo/symmetry.hpp"
#include "test_helpers.hpp"

using namespace pbvqo;
using pbvqo::testing::baseline_optimum;

namespace {

PulseAnsatz random_ansatz(int n_terms, double duration, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-5.0, 5.0), phase(0.0, 6.28);
  Eigen::VectorXd a(n_terms), p(n_terms);
  for (int i = 0; i < n_terms; ++i) {
    a(i) = amp(rng);
    p(i) = phase(rng);
  }
  return PulseAnsatz(a, p, duration);
}

/// Exact propagator oracle for a time-independent Hamiltonian.
Eigen::VectorXcd exponential_oracle(const Matrix& h, double duration,
                                    const Eigen::VectorXcd& psi0) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXcd phases =
      (Complex(0.0, -duration) * solver.eigenvalues().cast<Complex>().array()).exp();
  return solver.eigenvectors() *
         (phases.array() * (solver.eigenvectors().adjoint() * psi0).array()).matrix();
}

}  // namespace

TEST_SUITE_BEGIN("simulator");

TEST_CASE("initial state") {
  for (int n : {1, 2, 8}) {
    const StateVector psi = initial_state(n);
    CHECK(psi.amplitudes(0) == Complex(1.0));
    CHECK(psi.amplitudes.tail(psi.amplitudes.size() - 1).norm() == 0.0);
  }
}

TEST_CASE("constant pulse matches the single-exponential oracle") {
  const auto model = HardwareModel::uniform(3);
  // All amplitudes zero: the filter pins the coupling at G for all t.
  const PulseAnsatz ansatz(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2), 1.3);
  const Matrix h = drift_hamiltonian(model).matrix() +
                   model.coupling_bound * coupling_operator(model).matrix();
  const StateVector psi0 = initial_state(3);
  const StateVector evolved = evolve(psi0, model, ansatz, EvolutionConfig{});
  const Eigen::VectorXcd expected = exponential_oracle(h, 1.3, psi0.amplitudes);
  CHECK((evolved.amplitudes - expected).norm() < 1e-8);
}

TEST_CASE("norm conserved within 1e-9") {
  const auto model = HardwareModel::uniform(4);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const StateVector evolved =
        evolve(initial_state(4), model, random_ansatz(3, 5.0, seed), EvolutionConfig{});
    CHECK(std::abs(evolved.amplitudes.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("midpoint propagator is second order") {
  // P(t) = 3 cos(pi t) stays above G = 1 on [0, 0.35], so the filter is
  // smooth over the whole window and the order estimate is clean; kinks of
  // |P| crossing G only perturb the constant, not the order.
  const auto model = HardwareModel::uniform(3);
  Eigen::VectorXd amp(1), phase(1);
  amp << 3.0;
  phase << 1.5707963267948966;
  const PulseAnsatz ansatz(amp, phase, 0.35);
  const StateVector psi0 = initial_state(3);
  auto evolve_at = [&](double dt) {
    EvolutionConfig config;
    config.time_step = dt;
    return evolve(psi0, model, ansatz, config).amplitudes;
  };
  const Eigen::VectorXcd reference = evolve_at(0.35 / 2560.0);
  const double err1 = (evolve_at(0.35 / 40.0) - reference).norm();
  const double err2 = (evolve_at(0.35 / 80.0) - reference).norm();
  const double exponent = std::log2(err1 / err2);
  CHECK(exponent >= 1.7);
  CHECK(exponent <= 2.3);
}

TEST_CASE("halving the step moves the energy by less than the tolerance") {
  // At the default T/1000 grid the self-refinement residual for generic
  // pulses sits around 1e-5..1e-3; the tolerance contract kicks in once the
  // grid is fine enough (second-order decay, see the convergence test).
  const auto model = HardwareModel::uniform(4);
  Eigen::VectorXd amp(3), phase(3);
  amp << 0.8, -0.5, 0.3;
  phase << 0.4, 1.1, 2.0;
  const PulseAnsatz ansatz(amp, phase, 5.0);
  const auto problem = problem_hamiltonian(ProblemGraph::ring(4));
  EvolutionConfig config;
  config.time_step = 5.0 / 8000.0;
  const double coarse =
      expectation(evolve(initial_state(4), model, ansatz, config), problem);
  config.time_step /= 2.0;
  const double fine =
      expectation(evolve(initial_state(4), model, ansatz, config), problem);
  CHECK(std::abs(coarse - fine) < EvolutionConfig{}.tolerance);
}

TEST_CASE("baseline optimum reaches the reported error rate") {
  const auto model = HardwareModel::uniform(8);
  const Eigen::VectorXd p = baseline_optimum();
  const PulseAnsatz ansatz(p.head(3), p.tail(3), 5.0);
  const auto problem = problem_hamiltonian(ProblemGraph::ring(8));
  const double energy =
      expectation(evolve(initial_state(8), model, ansatz, EvolutionConfig{}), problem);
  const double r = error_rate(energy, ground_energy(problem));
  CHECK(std::abs(r - 0.168) < 0.02);
}

TEST_CASE("symmetry-reduced block agrees with the dense propagator") {
  for (int n : {2, 4, 6}) {
    const auto model = HardwareModel::uniform(n);
    const ProblemGraph graph = ProblemGraph::ring(n);
    REQUIRE(RingSector::applicable(model, graph));
    const RingSector sector(model, graph);
    const auto problem = problem_hamiltonian(graph);
    for (std::uint64_t seed : {5u, 6u}) {
      const PulseAnsatz ansatz = random_ansatz(3, 3.0, seed + 10 * n);
      const double dense = expectation(
          evolve(initial_state(n), model, ansatz, EvolutionConfig{}), problem);
      CHECK(sector.final_energy(ansatz, EvolutionConfig{}) ==
            doctest::Approx(dense).epsilon(1e-10));
    }
  }
  SUBCASE("non-uniform frequencies fall back to the dense path") {
    HardwareModel model = HardwareModel::uniform(4);
    model.frequencies(2) = 5.0;
    CHECK_FALSE(RingSector::applicable(model, ProblemGraph::ring(4)));
  }
}

TEST_CASE("expectation values") {
  const auto xx = problem_hamiltonian(ProblemGraph::ring(2));
  CHECK(expectation(initial_state(2), xx) == doctest::Approx(0.0));
  const StateVector plus(2, Eigen::VectorXcd::Constant(4, Complex(0.5, 0.0)));
  CHECK(expectation(plus, xx) == doctest::Approx(1.0));
  CHECK(expectation(initial_state(8), drift_hamiltonian(HardwareModel::uniform(8))) ==
        doctest::Approx(24.0));

  SUBCASE("bounded by the spectrum") {
    const auto model = HardwareModel::uniform(3);
    const auto op = coupling_operator(model);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const StateVector evolved =
          evolve(initial_state(3), model, random_ansatz(2, 1.0, seed), EvolutionConfig{});
      const double value = expectation(evolved, op);
      CHECK(value >= solver.eigenvalues()(0) - 1e-10);
      CHECK(value <= solver.eigenvalues()(7) + 1e-10);
    }
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(expectation(initial_state(3), xx), std::invalid_argument);
  }
}

TEST_CASE("error rate") {
  CHECK(error_rate(-8.0, -8.0) == doctest::Approx(0.0));
  CHECK(error_rate(-4.0, -8.0) == doctest::Approx(0.5));
  CHECK(error_rate(-7.552, -8.0) == doctest::Approx(0.056));
  CHECK_THROWS_AS(error_rate(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("x-basis sampling") {
  SUBCASE("|++> always samples 00") {
    const StateVector plus(2, Eigen::VectorXcd::Constant(4, Complex(0.5, 0.0)));
    for (const auto& s : sample_x_basis(plus, 50, 3)) CHECK(s == "00");
  }
  SUBCASE("|00> samples uniformly") {
    const int shots = 4000;
    std::map<std::string, int> counts;
    for (const auto& s : sample_x_basis(initial_state(2), shots, 17)) ++counts[s];
    CHECK(counts.size() == 4);
    for (const auto& [key, count] : counts) {
      // 3 sigma multinomial band around shots/4.
      CHECK(std::abs(count - shots / 4) < 3.0 * std::sqrt(shots * 0.25 * 0.75) + 1.0);
    }
  }
  SUBCASE("8-ring ground state samples alternating strings with cut 8") {
    const ProblemGraph graph = ProblemGraph::ring(8);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(problem_hamiltonian(graph).matrix());
    const StateVector ground(8, solver.eigenvectors().col(0));
    for (const auto& s : sample_x_basis(ground, 40, 23)) {
      CHECK((s == "01010101" || s == "10101010"));
      CHECK(cut_value(s, graph) == 8);
    }
  }
  SUBCASE("same seed, same sequence") {
    const StateVector psi = initial_state(3);
    CHECK(sample_x_basis(psi, 100, 99) == sample_x_basis(psi, 100, 99));
  }
}

TEST_CASE("cut value") {
  const ProblemGraph ring8 = ProblemGraph::ring(8);
  CHECK(cut_value("01010101", ring8) == 8);
  CHECK(cut_value("00000000", ring8) == 0);
  CHECK(cut_value("011", ProblemGraph::ring(3)) == 2);
  CHECK_THROWS_AS(cut_value("01", ring8), std::invalid_argument);
}

TEST_CASE("energetic cost quadrature") {
  CHECK(energetic_cost([](double) { return 3.5; }, 2.0, 100) == doctest::Approx(3.5));
  CHECK(energetic_cost([](double) { return 0.0; }, 1.0, 10) == doctest::Approx(0.0));

  SUBCASE("constant-coupling schedule equals the static Frobenius norm") {
    const auto model = HardwareModel::uniform(3);
    const PulseAnsatz flat(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2), 1.0);
    const Matrix h = drift_hamiltonian(model).matrix() +
                     model.coupling_bound * coupling_operator(model).matrix();
    const auto schedule = pbvqo_norm_schedule(model, flat);
    CHECK(schedule(0.4) == doctest::Approx(h.norm()));
    CHECK(energetic_cost(schedule, 1.0, 50) == doctest::Approx(h.norm()));
  }
  SUBCASE("schedule matches a dense norm at sampled times") {
    const auto model = HardwareModel::uniform(3);
    const PulseAnsatz ansatz = random_ansatz(3, 2.0, 31);
    const auto schedule = pbvqo_norm_schedule(model, ansatz);
    for (double t : {0.0, 0.7, 1.9}) {
      const double f = filter_pulse(evaluate_pulse(ansatz, t), model.coupling_bound);
      const Matrix h = drift_hamiltonian(model).matrix() +
                       f * coupling_operator(model).matrix();
      CHECK(schedule(t) == doctest::Approx(h.norm()).epsilon(1e-12));
    }
  }
}

TEST_SUITE_END();
