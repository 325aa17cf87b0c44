#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbvqo/optimizers.hpp"

namespace pbvqo {

enum class ExperimentKind { PbvqoSweep, Meta, Histogram, Qaoa, CostCompare };

std::string to_string(ExperimentKind kind);

/// Fully validated experiment description. Unknown keys are rejected; the
/// defaults (omega = 6, G = 1, n = 3, 50 restarts) match the simulation
/// parameters used throughout.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::PbvqoSweep;
  int n_qubits = 8;
  int n_easy = 2;
  std::vector<double> durations = {5.0};
  int ansatz_size = 3;
  double omega = 6.0;
  double coupling_bound = 1.0;
  int qaoa_depth = 3;
  int n_restarts = 50;
  std::uint64_t seed = 0;
  std::string output_dir = "pbvqo-out";
  double time_step = 0.0;  // 0: duration/1000
  double histogram_bin_width = 0.05;
  int workers = 1;
  BfgsOptions bfgs;
  GaConfig ga;  // bounds filled from ansatz_size when empty

  void validate() const;
};

/// Parses and validates a JSON config document.
ExperimentConfig parse_config_text(const std::string& text);

/// Reads the file at `path` and parses it.
ExperimentConfig parse_config(const std::string& path);

}  // namespace pbvqo
