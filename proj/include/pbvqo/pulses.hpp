#pragma once

#include <Eigen/Dense>

namespace pbvqo {

/// Trigonometric pulse series P(t) = sum_i A_i sin[(2i-1) pi t + phi_i].
struct PulseAnsatz {
  Eigen::VectorXd amplitudes;
  Eigen::VectorXd phases;
  double duration = 0.0;

  PulseAnsatz(Eigen::VectorXd amplitudes, Eigen::VectorXd phases, double duration);

  int n_terms() const { return static_cast<int>(amplitudes.size()); }

  /// Raw pulse value at t in [0, duration].
  double evaluate(double t) const;

  /// Unchecked evaluation, used by the propagation loop at midpoints.
  double evaluate_unchecked(double t) const;
};

double evaluate_pulse(const PulseAnsatz& ansatz, double t);

/// Hardware feasibility map: F[P] = max(G, |P|).
double filter_pulse(double p_value, double bound);

/// Circuit constants of the two-qubit coupler cell. Dimensionless units.
struct CircuitParams {
  double coupler_capacitance = 0.0;    // C_c
  double qubit_josephson_1 = 0.0;      // E_J1
  double qubit_josephson_2 = 0.0;      // E_J2
  double squid_josephson = 0.0;        // E_Js
  double qubit_capacitance_1 = 0.0;    // C_1
  double qubit_capacitance_2 = 0.0;    // C_2
  double dc_flux = 0.0;                // phi_DC

  /// Parameter set whose coupling bound equals the given G.
  static CircuitParams dimensionless(double bound);

  void validate() const;
};

/// G = C_c^2 E_J1 E_J2 / [8 E_Js (C_1+C_c)(C_2+C_c)].
double coupling_bound(const CircuitParams& params);

/// g[phi_ext] with E_Js^eff = 2 E_Js |cos phi_ext|; satisfies g/4 = G/|cos phi_ext|.
double coupling_strength(const CircuitParams& params, double phi_ext);

/// Inverts the filtered coupling back to phi_ext = arccos(G / value) in [0, pi/2).
double flux_for_coupling(const CircuitParams& params, double filtered_value);

struct CouplingSplit {
  double g0 = 0.0;
  double g1 = 0.0;
};

/// Always-on and tunable coupling at the DC working point; g1/g0 = tan(phi_DC).
CouplingSplit coupling_split(const CircuitParams& params);

/// Two-tone AC flux drive for the rotating wave approximation.
struct RwaDrive {
  double amplitude_1 = 0.0;
  double amplitude_2 = 0.0;
  double phase_1 = 0.0;
  double phase_2 = 0.0;
  double frequency_1 = 0.0;
  double frequency_2 = 0.0;
};

struct RwaCoefficients {
  double m_plus = 0.0;
  double m_minus = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
};

/// M± = A1 cos(phi1) ± A2 cos(phi2), N± = A1 sin(phi1) ± A2 sin(phi2).
RwaCoefficients rwa_coefficients(const RwaDrive& drive);

}  // namespace pbvqo
