#include "pbvqo/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pbvqo {

namespace {
constexpr double kFluxGuard = 1e-9;
}

PulseAnsatz::PulseAnsatz(Eigen::VectorXd amps, Eigen::VectorXd phs, double dur)
    : amplitudes(std::move(amps)), phases(std::move(phs)), duration(dur) {
  if (amplitudes.size() == 0)
    throw std::invalid_argument("pulse ansatz needs at least one term");
  if (amplitudes.size() != phases.size())
    throw std::invalid_argument("amplitudes and phases must have equal length");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
}

double PulseAnsatz::evaluate(double t) const {
  if (t < 0.0 || t > duration)
    throw std::out_of_range("pulse evaluated outside [0, duration]");
  return evaluate_unchecked(t);
}

double PulseAnsatz::evaluate_unchecked(double t) const {
  double value = 0.0;
  for (int i = 0; i < n_terms(); ++i)
    value += amplitudes[i] * std::sin((2 * i + 1) * std::numbers::pi * t + phases[i]);
  return value;
}

double evaluate_pulse(const PulseAnsatz& ansatz, double t) { return ansatz.evaluate(t); }

double filter_pulse(double p_value, double bound) {
  if (!(bound > 0.0)) throw std::invalid_argument("filter bound must be positive");
  return std::max(bound, std::abs(p_value));
}

CircuitParams CircuitParams::dimensionless(double bound) {
  if (!(bound > 0.0)) throw std::invalid_argument("bound must be positive");
  CircuitParams p;
  p.coupler_capacitance = 1.0;
  p.qubit_josephson_1 = 8.0;
  p.qubit_josephson_2 = 8.0;
  p.qubit_capacitance_1 = 1.0;
  p.qubit_capacitance_2 = 1.0;
  p.squid_josephson = 2.0 / bound;  // solves coupling_bound(p) == bound
  p.dc_flux = 0.0;
  return p;
}

void CircuitParams::validate() const {
  if (!(coupler_capacitance > 0.0 && qubit_josephson_1 > 0.0 && qubit_josephson_2 > 0.0 &&
        squid_josephson > 0.0 && qubit_capacitance_1 > 0.0 && qubit_capacitance_2 > 0.0))
    throw std::invalid_argument("all circuit energies and capacitances must be positive");
}

double coupling_bound(const CircuitParams& params) {
  params.validate();
  const double cc = params.coupler_capacitance;
  return cc * cc * params.qubit_josephson_1 * params.qubit_josephson_2 /
         (8.0 * params.squid_josephson * (params.qubit_capacitance_1 + cc) *
          (params.qubit_capacitance_2 + cc));
}

double coupling_strength(const CircuitParams& params, double phi_ext) {
  params.validate();
  const double c = std::abs(std::cos(phi_ext));
  if (c <= kFluxGuard)
    throw std::invalid_argument("flux too close to +-pi/2: coupling diverges");
  const double cc = params.coupler_capacitance;
  const double ejs_eff = 2.0 * params.squid_josephson * c;
  return cc * cc * params.qubit_josephson_1 * params.qubit_josephson_2 /
         (ejs_eff * (params.qubit_capacitance_1 + cc) * (params.qubit_capacitance_2 + cc));
}

double flux_for_coupling(const CircuitParams& params, double filtered_value) {
  const double bound = coupling_bound(params);
  if (filtered_value < bound)
    throw std::invalid_argument("coupling below the always-on bound is unreachable");
  return std::acos(bound / filtered_value);
}

CouplingSplit coupling_split(const CircuitParams& params) {
  const double g0 = coupling_strength(params, params.dc_flux) / 4.0;
  return {g0, g0 * std::tan(params.dc_flux)};
}

RwaCoefficients rwa_coefficients(const RwaDrive& drive) {
  const double c1 = drive.amplitude_1 * std::cos(drive.phase_1);
  const double c2 = drive.amplitude_2 * std::cos(drive.phase_2);
  const double s1 = drive.amplitude_1 * std::sin(drive.phase_1);
  const double s2 = drive.amplitude_2 * std::sin(drive.phase_2);
  return {c1 + c2, c1 - c2, s1 + s2, s1 - s2};
}

}  // namespace pbvqo
