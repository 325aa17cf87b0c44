#pragma once

#include <filesystem>
#include <string>

#include "pbvqo/config.hpp"
#include "pbvqo/workflows.hpp"

namespace pbvqo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationError = 1;
inline constexpr int kExitRuntimeError = 2;

/// Resolves the output directory against PBVQO_OUTPUT_ROOT when relative.
std::filesystem::path resolve_output_dir(const std::string& output_dir);

/// Runs the configured experiment and writes runs.jsonl, summary.csv,
/// plot-data files, and manifest.json into the output directory.
/// Returns kExitOk on success.
int run_experiment(const ExperimentConfig& config);

/// Uniform grid of t, P(t), F[P(t)], phi_ext(t) over [0, T].
struct PulseTrace {
  std::vector<double> t;
  std::vector<double> raw;
  std::vector<double> filtered;
  std::vector<double> flux;
};

PulseTrace export_pulse_trace(const Eigen::VectorXd& params, const PbvqoProblem& problem,
                              int samples);

void write_pulse_trace_csv(const PulseTrace& trace, const std::filesystem::path& path);

/// Recomputes summary.csv from an existing runs.jsonl.
int recompute_report(const std::filesystem::path& run_dir);

}  // namespace pbvqo
