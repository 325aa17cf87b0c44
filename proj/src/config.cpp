#include "pbvqo/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pbvqo/hamiltonians.hpp"

namespace pbvqo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw std::invalid_argument("config field '" + field + "': " + message);
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& scope) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      fail(scope.empty() ? it.key() : scope + "." + it.key(), "unknown key");
}

template <typename T>
void read_if(const json& j, const char* key, T& target) {
  if (j.contains(key)) {
    try {
      target = j.at(key).get<T>();
    } catch (const json::exception&) {
      fail(key, "wrong type");
    }
  }
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::PbvqoSweep: return "pbvqo-sweep";
    case ExperimentKind::Meta: return "meta";
    case ExperimentKind::Histogram: return "histogram";
    case ExperimentKind::Qaoa: return "qaoa";
    case ExperimentKind::CostCompare: return "cost-compare";
  }
  throw std::logic_error("unreachable");
}

void ExperimentConfig::validate() const {
  if (n_qubits < 2 || n_qubits > kMaxQubits) fail("N", "must be in [2, 14]");
  if (n_easy < 2 || n_easy > n_qubits) fail("N_easy", "must be in [2, N]");
  if (durations.empty()) fail("T", "must be nonempty");
  for (double t : durations)
    if (!(t > 0.0)) fail("T", "durations must be positive");
  if (ansatz_size < 1) fail("n", "must be positive");
  if (!(omega > 0.0)) fail("omega", "must be positive");
  if (!(coupling_bound > 0.0)) fail("G", "must be positive");
  if (qaoa_depth < 1) fail("p", "must be positive");
  if (n_restarts < 1) fail("n_restarts", "must be positive");
  if (output_dir.empty()) fail("output_dir", "must be nonempty");
  if (time_step < 0.0) fail("dt", "must be nonnegative");
  if (!(histogram_bin_width > 0.0)) fail("bin_width", "must be positive");
  if (workers < 1) fail("workers", "must be positive");
  if (bfgs.max_iterations < 1) fail("bfgs.max_iterations", "must be positive");
  if (!(bfgs.fd_step > 0.0)) fail("bfgs.fd_step", "must be positive");
  if (!(bfgs.gtol > 0.0) || !(bfgs.ftol > 0.0)) fail("bfgs", "tolerances must be positive");
  GaConfig ga_check = ga;
  if (ga_check.bounds.empty())
    for (int i = 0; i < 2 * ansatz_size; ++i) ga_check.bounds.push_back({0.0, 1.0});
  try {
    ga_check.validate();
  } catch (const std::invalid_argument& e) {
    fail("ga", e.what());
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config syntax error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  reject_unknown(j,
                 {"kind", "N", "N_easy", "T", "n", "omega", "G", "p", "n_restarts",
                  "seed", "output_dir", "dt", "bin_width", "workers", "bfgs", "ga"},
                 "");

  ExperimentConfig cfg;

  if (!j.contains("kind")) fail("kind", "required");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pbvqo-sweep") cfg.kind = ExperimentKind::PbvqoSweep;
  else if (kind == "meta") cfg.kind = ExperimentKind::Meta;
  else if (kind == "histogram") cfg.kind = ExperimentKind::Histogram;
  else if (kind == "qaoa") cfg.kind = ExperimentKind::Qaoa;
  else if (kind == "cost-compare") cfg.kind = ExperimentKind::CostCompare;
  else fail("kind", "must be one of pbvqo-sweep|meta|histogram|qaoa|cost-compare");

  read_if(j, "N", cfg.n_qubits);
  read_if(j, "N_easy", cfg.n_easy);
  if (j.contains("T")) {
    const json& t = j.at("T");
    cfg.durations.clear();
    if (t.is_array())
      for (const auto& v : t) cfg.durations.push_back(v.get<double>());
    else
      cfg.durations.push_back(t.get<double>());
  }
  read_if(j, "n", cfg.ansatz_size);
  read_if(j, "omega", cfg.omega);
  read_if(j, "G", cfg.coupling_bound);
  read_if(j, "p", cfg.qaoa_depth);
  read_if(j, "n_restarts", cfg.n_restarts);
  read_if(j, "seed", cfg.seed);
  read_if(j, "output_dir", cfg.output_dir);
  read_if(j, "dt", cfg.time_step);
  read_if(j, "bin_width", cfg.histogram_bin_width);
  read_if(j, "workers", cfg.workers);

  if (j.contains("bfgs")) {
    const json& b = j.at("bfgs");
    reject_unknown(b, {"gtol", "ftol", "max_iterations", "fd_step"}, "bfgs");
    read_if(b, "gtol", cfg.bfgs.gtol);
    read_if(b, "ftol", cfg.bfgs.ftol);
    read_if(b, "max_iterations", cfg.bfgs.max_iterations);
    read_if(b, "fd_step", cfg.bfgs.fd_step);
  }
  if (j.contains("ga")) {
    const json& g = j.at("ga");
    reject_unknown(g,
                   {"population_size", "generations", "crossover_rate", "mutation_rate",
                    "mutation_scale", "elitism_count"},
                   "ga");
    read_if(g, "population_size", cfg.ga.population_size);
    read_if(g, "generations", cfg.ga.generations);
    read_if(g, "crossover_rate", cfg.ga.crossover_rate);
    read_if(g, "mutation_rate", cfg.ga.mutation_rate);
    read_if(g, "mutation_scale", cfg.ga.mutation_scale);
    read_if(g, "elitism_count", cfg.ga.elitism_count);
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace pbvqo
