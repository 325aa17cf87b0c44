#include "pbvqo/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pbvqo {

namespace {
constexpr double kNormTol = 1e-9;
}

StateVector::StateVector(int n, Eigen::VectorXcd amps)
    : n_qubits(n), amplitudes(std::move(amps)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw std::invalid_argument("invalid qubit count");
  if (amplitudes.size() != (Eigen::Index{1} << n_qubits))
    throw std::invalid_argument("amplitude vector has wrong dimension");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("state vector must be normalized");
}

double EvolutionConfig::resolved_step(double duration) const {
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  return time_step > 0.0 ? time_step : duration / 1000.0;
}

StateVector initial_state(int n_qubits) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps[0] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

namespace detail {

void apply_step(const Eigen::VectorXd& drift, const Eigen::MatrixXd& coupling,
                double f, double dt, Eigen::VectorXcd& psi) {
  const Eigen::Index dim = psi.size();
  Eigen::VectorXd term_re = psi.real();
  Eigen::VectorXd term_im = psi.imag();
  Eigen::VectorXd acc_re = term_re;
  Eigen::VectorXd acc_im = term_im;
  Eigen::VectorXd h_re(dim), h_im(dim);

  const double cutoff = 1e-15;
  for (int k = 1; k <= 64; ++k) {
    h_re.noalias() = coupling * term_re;
    h_re *= f;
    h_re += drift.cwiseProduct(term_re);
    h_im.noalias() = coupling * term_im;
    h_im *= f;
    h_im += drift.cwiseProduct(term_im);
    // term <- (-i dt / k) H term
    const double factor = dt / k;
    term_re = factor * h_im;
    term_im = -factor * h_re;
    acc_re += term_re;
    acc_im += term_im;
    const double tail = term_re.norm() + term_im.norm();
    if (tail < cutoff) break;
  }
  psi.real() = acc_re;
  psi.imag() = acc_im;
}

void propagate(const Eigen::VectorXd& drift, const Eigen::MatrixXd& coupling,
               double bound, const PulseAnsatz& ansatz, const EvolutionConfig& config,
               Eigen::VectorXcd& psi) {
  const double duration = ansatz.duration;
  const double dt = config.resolved_step(duration);
  const auto steps = static_cast<long>(std::ceil(duration / dt - 1e-12));
  double t = 0.0;
  for (long k = 0; k < steps; ++k) {
    const double h = (k + 1 == steps) ? duration - t : dt;
    const double p = ansatz.evaluate_unchecked(t + 0.5 * h);
    if (!std::isfinite(p)) throw std::runtime_error("non-finite pulse value");
    detail::apply_step(drift, coupling, filter_pulse(p, bound), h, psi);
    t += h;
  }
}

}  // namespace detail

StateVector evolve(const StateVector& state, const HardwareModel& model,
                   const PulseAnsatz& ansatz, const EvolutionConfig& config) {
  model.validate();
  if (state.n_qubits != model.n_qubits)
    throw std::invalid_argument("state dimension does not match model");
  Eigen::VectorXcd psi = state.amplitudes;
  detail::propagate(drift_diagonal(model), coupling_matrix(model), model.coupling_bound,
                    ansatz, config, psi);
  return StateVector(model.n_qubits, std::move(psi));
}

double expectation(const StateVector& state, const HermitianOperator& op) {
  if (op.dim() != state.amplitudes.size())
    throw std::invalid_argument("operator dimension does not match state");
  const Complex value = state.amplitudes.dot(op.matrix() * state.amplitudes);
  if (std::abs(value.imag()) > 1e-10)
    throw std::runtime_error("expectation has non-negligible imaginary part");
  return value.real();
}

double error_rate(double energy, double ground) {
  if (ground == 0.0) throw std::invalid_argument("zero ground energy");
  return std::abs((energy - ground) / ground);
}

std::vector<std::string> sample_x_basis(const StateVector& state, int shots,
                                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const int n = state.n_qubits;
  const Eigen::Index dim = state.amplitudes.size();

  // In-place Walsh-Hadamard rotation into the x basis.
  Eigen::VectorXcd psi = state.amplitudes;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index stride = 1; stride < dim; stride <<= 1) {
    for (Eigen::Index block = 0; block < dim; block += 2 * stride) {
      for (Eigen::Index i = block; i < block + stride; ++i) {
        const Complex a = psi[i];
        const Complex b = psi[i + stride];
        psi[i] = (a + b) * inv_sqrt2;
        psi[i + stride] = (a - b) * inv_sqrt2;
      }
    }
  }

  Eigen::VectorXd cdf(dim);
  double running = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    running += std::norm(psi[i]);
    cdf[i] = running;
  }

  std::mt19937_64 rng(seed);
  std::vector<std::string> samples;
  samples.reserve(shots);
  for (int s = 0; s < shots; ++s) {
    const double u = (rng() >> 11) * 0x1.0p-53 * running;
    const double* hit = std::lower_bound(cdf.data(), cdf.data() + dim, u);
    auto index = static_cast<std::size_t>(hit - cdf.data());
    if (index >= static_cast<std::size_t>(dim)) index = dim - 1;
    std::string bits(n, '0');
    for (int q = 0; q < n; ++q) bits[q] = bit_of(index, q, n) ? '1' : '0';
    samples.push_back(std::move(bits));
  }
  return samples;
}

int cut_value(const std::string& bitstring, const ProblemGraph& graph) {
  if (static_cast<int>(bitstring.size()) != graph.n_nodes)
    throw std::invalid_argument("bitstring length does not match graph");
  int cut = 0;
  for (auto [a, b] : graph.edges)
    if (bitstring[a] != bitstring[b]) ++cut;
  return cut;
}

double energetic_cost(const std::function<double(double)>& norm_at, double duration,
                      int n_steps) {
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  if (n_steps < 1) throw std::invalid_argument("need at least one step");
  const double h = duration / n_steps;
  double sum = 0.5 * (norm_at(0.0) + norm_at(duration));
  for (int k = 1; k < n_steps; ++k) sum += norm_at(k * h);
  return sum * h / duration;
}

std::function<double(double)> pbvqo_norm_schedule(const HardwareModel& model,
                                                  const PulseAnsatz& ansatz) {
  const Eigen::VectorXd drift = drift_diagonal(model);
  const Eigen::MatrixXd coupling = coupling_matrix(model);
  const double drift_sq = drift.squaredNorm();
  const double coupling_sq = coupling.squaredNorm();
  const double cross = drift.cwiseProduct(coupling.diagonal()).sum();
  const double bound = model.coupling_bound;
  return [drift_sq, coupling_sq, cross, bound, ansatz](double t) {
    const double f = filter_pulse(ansatz.evaluate(t), bound);
    return std::sqrt(drift_sq + f * f * coupling_sq + 2.0 * f * cross);
  };
}

}  // namespace pbvqo
