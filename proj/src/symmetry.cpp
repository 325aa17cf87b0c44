#include "pbvqo/symmetry.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace pbvqo {

namespace {

std::uint32_t rotate_bits(std::uint32_t s, int r, int n) {
  if (r == 0) return s;
  const std::uint32_t mask = (1u << n) - 1;
  return ((s << r) | (s >> (n - r))) & mask;
}

std::uint32_t reflect_bits(std::uint32_t s, int n) {
  std::uint32_t out = 0;
  for (int q = 0; q < n; ++q)
    if ((s >> q) & 1u) out |= 1u << (n - 1 - q);
  return out;
}

}  // namespace

bool RingSector::applicable(const HardwareModel& model, const ProblemGraph& graph) {
  if (!model.uniform_frequencies()) return false;
  if (graph.n_nodes != model.n_qubits) return false;
  const auto ring = ProblemGraph::ring(graph.n_nodes).edges;
  std::set<std::pair<int, int>> want, have;
  for (auto [a, b] : ring) want.insert(std::minmax(a, b));
  for (auto [a, b] : graph.edges) have.insert(std::minmax(a, b));
  return want == have;
}

RingSector::RingSector(const HardwareModel& model, const ProblemGraph& graph) {
  model.validate();
  graph.validate();
  if (!applicable(model, graph))
    throw std::invalid_argument("sector reduction needs uniform frequencies and a ring");

  const int n = model.n_qubits;
  const double omega = model.frequencies[0];
  bound_ = model.coupling_bound;

  // Even-weight dihedral orbits; the orbit of 0 comes first by construction.
  std::map<std::uint32_t, int> orbit_of;
  std::vector<std::vector<std::uint32_t>> orbits;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) % 2 != 0) continue;
    if (orbit_of.count(s)) continue;
    std::set<std::uint32_t> members;
    for (int r = 0; r < n; ++r) {
      const std::uint32_t rot = rotate_bits(s, r, n);
      members.insert(rot);
      members.insert(reflect_bits(rot, n));
    }
    for (std::uint32_t m : members) orbit_of[m] = static_cast<int>(orbits.size());
    orbits.emplace_back(members.begin(), members.end());
  }
  initial_index_ = orbit_of.at(0);

  const int d = static_cast<int>(orbits.size());
  drift_.resize(d);
  for (int i = 0; i < d; ++i)
    drift_[i] = 0.5 * omega * (n - 2 * std::popcount(orbits[i].front()));

  coupling_ = Eigen::MatrixXd::Zero(d, d);
  problem_ = Eigen::MatrixXd::Zero(d, d);
  const auto edges = model.topology();
  for (int i = 0; i < d; ++i) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(orbits[i].size()));
    std::map<std::uint32_t, double> yy, xx;
    for (std::uint32_t s : orbits[i]) {
      for (auto [a, b] : edges) {
        const std::uint32_t mask =
            (1u << (n - 1 - a)) | (1u << (n - 1 - b));
        const bool equal = ((s >> (n - 1 - a)) & 1u) == ((s >> (n - 1 - b)) & 1u);
        yy[s ^ mask] += (equal ? -1.0 : 1.0) * amp;
        xx[s ^ mask] += amp;
      }
    }
    for (auto [s2, v] : yy) {
      const int j = orbit_of.at(s2);
      coupling_(j, i) += v / std::sqrt(static_cast<double>(orbits[j].size()));
    }
    for (auto [s2, v] : xx) {
      const int j = orbit_of.at(s2);
      problem_(j, i) += v / std::sqrt(static_cast<double>(orbits[j].size()));
    }
  }
}

double RingSector::final_energy(const PulseAnsatz& ansatz,
                                const EvolutionConfig& config) const {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim());
  psi[initial_index_] = 1.0;
  detail::propagate(drift_, coupling_, bound_, ansatz, config, psi);
  const Complex value = psi.dot(problem_ * psi);
  return value.real();
}

}  // namespace pbvqo
