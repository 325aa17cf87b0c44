// Command-line driver: run / validate / export-pulse / report.
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbvqo/experiment.hpp"

namespace {

using namespace pbvqo;

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    values.push_back(std::stod(item));
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PBVQO experiment runner"};
  app.require_subcommand(1);

  // run / validate share the config path and overrides.
  std::string config_path;
  std::uint64_t seed_override = 0;
  bool has_seed = false;
  std::string out_override;
  int workers_override = 0;
  double dt_override = -1.0;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "JSON config file")->required();
    cmd->add_option("--seed", seed_override, "override the master seed")
        ->each([&](const std::string&) { has_seed = true; });
    cmd->add_option("--out", out_override, "override the output directory");
    cmd->add_option("--workers", workers_override, "override the worker count");
    cmd->add_option("--dt-override", dt_override, "override the integrator step");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "run an experiment from a config");
  add_overrides(cmd_run);
  CLI::App* cmd_validate = app.add_subcommand("validate", "check a config and exit");
  add_overrides(cmd_validate);

  // export-pulse: evaluate an ansatz on a grid and write the trace CSV.
  std::string params_csv;
  int ep_qubits = 8, ep_size = 3, ep_samples = 501;
  double ep_duration = 5.0, ep_omega = 6.0, ep_bound = 1.0;
  std::string ep_out = "pulse_trace.csv";
  CLI::App* cmd_export =
      app.add_subcommand("export-pulse", "write t, P, F[P], flux columns");
  cmd_export->add_option("--params", params_csv,
                         "comma-separated A_1..A_n,phi_1..phi_n")->required();
  cmd_export->add_option("--N", ep_qubits, "number of qubits");
  cmd_export->add_option("--T", ep_duration, "pulse duration");
  cmd_export->add_option("--n", ep_size, "ansatz size");
  cmd_export->add_option("--omega", ep_omega, "qubit frequency");
  cmd_export->add_option("--G", ep_bound, "coupling floor");
  cmd_export->add_option("--samples", ep_samples, "grid points");
  cmd_export->add_option("--out", ep_out, "output CSV path");

  std::string report_dir;
  CLI::App* cmd_report =
      app.add_subcommand("report", "recompute summary.csv from runs.jsonl");
  cmd_report->add_option("dir", report_dir, "experiment output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(cmd_run) || app.got_subcommand(cmd_validate)) {
      ExperimentConfig config;
      try {
        config = parse_config(config_path);
        if (has_seed) config.seed = seed_override;
        if (!out_override.empty()) config.output_dir = out_override;
        if (workers_override > 0) config.workers = workers_override;
        if (dt_override >= 0.0) config.time_step = dt_override;
        config.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidationError;
      }
      if (app.got_subcommand(cmd_validate)) {
        std::cout << "ok: " << to_string(config.kind) << " config is valid\n";
        return kExitOk;
      }
      return run_experiment(config);
    }

    if (app.got_subcommand(cmd_export)) {
      std::vector<double> values;
      try {
        values = parse_csv_doubles(params_csv);
      } catch (const std::exception&) {
        std::cerr << "error: --params must be comma-separated numbers\n";
        return kExitValidationError;
      }
      if (static_cast<int>(values.size()) != 2 * ep_size) {
        std::cerr << "error: expected " << 2 * ep_size << " parameters, got "
                  << values.size() << '\n';
        return kExitValidationError;
      }
      PbvqoProblem problem;
      try {
        problem = PbvqoProblem::ring(ep_qubits, ep_duration, ep_size, ep_omega, ep_bound);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidationError;
      }
      const Eigen::VectorXd params =
          Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
      write_pulse_trace_csv(export_pulse_trace(params, problem, ep_samples), ep_out);
      std::cout << "wrote " << ep_out << '\n';
      return kExitOk;
    }

    return recompute_report(report_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}
