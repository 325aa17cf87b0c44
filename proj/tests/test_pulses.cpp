#include <doctest.h>

#include <cmath>
#include <random>

#include "pbvqo/pulses.hpp"
#include "test_helpers.hpp"

using namespace pbvqo;
using pbvqo::testing::baseline_optimum;

namespace {

constexpr double kPi = 3.14159265358979323846;

PulseAnsatz baseline_ansatz(double duration = 5.0) {
  const Eigen::VectorXd p = baseline_optimum();
  return PulseAnsatz(p.head(3), p.tail(3), duration);
}

}  // namespace

TEST_SUITE_BEGIN("pulses");

TEST_CASE("pulse evaluation") {
  SUBCASE("single term peaks at t = 0.5") {
    const PulseAnsatz ansatz(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1), 1.0);
    CHECK(evaluate_pulse(ansatz, 0.5) == doctest::Approx(1.0));
  }
  SUBCASE("all sines vanish at t = 0 with zero phases") {
    const PulseAnsatz ansatz(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(2), 1.0);
    CHECK(evaluate_pulse(ansatz, 0.0) == doctest::Approx(0.0));
  }
  SUBCASE("baseline optimum matches a term-by-term re-evaluation") {
    const PulseAnsatz ansatz = baseline_ansatz();
    for (double t : {0.0, 0.37, 2.5, 5.0}) {
      double expected = 0.0;
      for (int i = 0; i < 3; ++i)
        expected += ansatz.amplitudes(i) *
                    std::sin((2 * i + 1) * kPi * t + ansatz.phases(i));
      CHECK(evaluate_pulse(ansatz, t) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
  SUBCASE("t outside [0, T] rejected") {
    const PulseAnsatz ansatz = baseline_ansatz(1.0);
    CHECK_THROWS_AS(evaluate_pulse(ansatz, -0.1), std::out_of_range);
    CHECK_THROWS_AS(evaluate_pulse(ansatz, 1.1), std::out_of_range);
  }
  SUBCASE("period 2 in t") {
    const PulseAnsatz ansatz = baseline_ansatz(10.0);
    for (double t : {0.1, 1.3, 4.9})
      CHECK(std::abs(evaluate_pulse(ansatz, t + 2.0) - evaluate_pulse(ansatz, t)) <
            1e-12);
  }
  SUBCASE("mismatched amplitude/phase lengths rejected") {
    CHECK_THROWS_AS(PulseAnsatz(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(3), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(PulseAnsatz(Eigen::VectorXd::Ones(2), Eigen::VectorXd::Zero(2), 0.0),
                    std::invalid_argument);
  }
}

TEST_CASE("filter is max(G, |p|)") {
  CHECK(filter_pulse(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(filter_pulse(-2.0, 1.0) == doctest::Approx(2.0));
  CHECK(filter_pulse(1.0, 1.0) == doctest::Approx(1.0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const double p = dist(rng);
    CHECK(filter_pulse(p, 1.5) == doctest::Approx(std::max(1.5, std::abs(p))));
    CHECK(filter_pulse(p, 1.5) == doctest::Approx(filter_pulse(-p, 1.5)));  // even
  }
}

TEST_CASE("coupling bound from circuit constants") {
  CircuitParams params;
  params.coupler_capacitance = 1.0;
  params.qubit_josephson_1 = params.qubit_josephson_2 = 8.0;
  params.squid_josephson = 1.0;
  params.qubit_capacitance_1 = params.qubit_capacitance_2 = 1.0;
  CHECK(coupling_bound(params) == doctest::Approx(2.0));

  SUBCASE("G scales as 1/E_Js") {
    CircuitParams doubled = params;
    doubled.squid_josephson = 2.0;
    CHECK(coupling_bound(doubled) == doctest::Approx(1.0));
  }
  SUBCASE("inverting for E_Js hits a requested bound") {
    for (double g : {0.5, 1.0, 3.0}) {
      const CircuitParams solved = CircuitParams::dimensionless(g);
      CHECK(std::abs(coupling_bound(solved) - g) < 1e-12);
    }
  }
}

TEST_CASE("coupling strength vs external flux") {
  const CircuitParams params = CircuitParams::dimensionless(1.0);
  const double g = coupling_bound(params);
  CHECK(coupling_strength(params, 0.0) / 4.0 == doctest::Approx(g));
  CHECK(coupling_strength(params, kPi / 3.0) / 4.0 == doctest::Approx(2.0 * g));
  CHECK_THROWS_AS(coupling_strength(params, kPi / 2.0), std::invalid_argument);
}

TEST_CASE("flux for coupling") {
  const CircuitParams params = CircuitParams::dimensionless(1.0);
  CHECK(flux_for_coupling(params, 1.0) == doctest::Approx(0.0));
  CHECK(flux_for_coupling(params, 2.0) == doctest::Approx(kPi / 3.0));
  CHECK_THROWS_AS(flux_for_coupling(params, 0.5), std::invalid_argument);

  SUBCASE("round-trip within 1e-10") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(1.0, 50.0);
    for (int i = 0; i < 100; ++i) {
      const double v = dist(rng);
      const double phi = flux_for_coupling(params, v);
      CHECK(phi >= 0.0);
      CHECK(phi < kPi / 2.0);
      CHECK(std::abs(coupling_strength(params, phi) / 4.0 - v) < 1e-10);
    }
  }
}

TEST_CASE("always-on / tunable coupling split") {
  SUBCASE("g1 vanishes at phi_DC = 0") {
    CircuitParams params = CircuitParams::dimensionless(1.0);
    params.dc_flux = 0.0;
    CHECK(coupling_split(params).g1 == doctest::Approx(0.0));
  }
  SUBCASE("g1 = g0 at phi_DC = pi/4") {
    CircuitParams params = CircuitParams::dimensionless(1.0);
    params.dc_flux = kPi / 4.0;
    const CouplingSplit split = coupling_split(params);
    CHECK(split.g1 == doctest::Approx(split.g0));
  }
  SUBCASE("g0 equals coupling_strength at the DC point / 4") {
    CircuitParams params = CircuitParams::dimensionless(2.0);
    params.dc_flux = 0.6;
    const CouplingSplit split = coupling_split(params);
    CHECK(split.g0 == doctest::Approx(coupling_strength(params, params.dc_flux) / 4.0));
    CHECK(split.g1 / split.g0 == doctest::Approx(std::tan(params.dc_flux)));
  }
  SUBCASE("working point near pi/2 rejected") {
    CircuitParams params = CircuitParams::dimensionless(1.0);
    params.dc_flux = kPi / 2.0;
    CHECK_THROWS_AS(coupling_split(params), std::invalid_argument);
  }
}

TEST_CASE("rotating wave coefficients") {
  SUBCASE("opposite amplitudes give a pure XX term") {
    RwaDrive drive;
    drive.amplitude_1 = 0.7;
    drive.amplitude_2 = -0.7;
    const RwaCoefficients c = rwa_coefficients(drive);
    CHECK(c.m_minus == doctest::Approx(1.4));
    CHECK(c.m_plus == doctest::Approx(0.0));
    CHECK(c.n_plus == doctest::Approx(0.0));
    CHECK(c.n_minus == doctest::Approx(0.0));
  }
  SUBCASE("zero drive, zero coefficients") {
    const RwaCoefficients c = rwa_coefficients(RwaDrive{});
    CHECK(c.m_plus == 0.0);
    CHECK(c.m_minus == 0.0);
    CHECK(c.n_plus == 0.0);
    CHECK(c.n_minus == 0.0);
  }
  SUBCASE("quadrature phases move weight to N+") {
    RwaDrive drive;
    drive.amplitude_1 = drive.amplitude_2 = 1.0;
    drive.phase_1 = drive.phase_2 = kPi / 2.0;
    const RwaCoefficients c = rwa_coefficients(drive);
    CHECK(c.n_plus == doctest::Approx(2.0));
    CHECK(c.n_minus == doctest::Approx(0.0));
    CHECK(c.m_plus == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.m_minus == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_SUITE_END();
