#include "pbvqo/experiment.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pbvqo/records.hpp"

namespace pbvqo {

namespace {

using nlohmann::json;

std::ofstream open_or_throw(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_summary(const std::filesystem::path& dir,
                   const std::vector<StudyResult>& studies) {
  auto out = open_or_throw(dir / "summary.csv");
  out << summary_csv_header() << '\n';
  for (const auto& s : studies) out << summary_csv_line(s) << '\n';
}

void write_runs(const std::filesystem::path& dir,
                const std::vector<StudyResult>& studies) {
  auto out = open_or_throw(dir / "runs.jsonl");
  out.precision(17);
  for (const auto& s : studies) write_records(out, s);
}

void write_boxplot(const std::filesystem::path& dir,
                   const std::vector<StudyResult>& studies) {
  auto out = open_or_throw(dir / "boxplot.csv");
  out.precision(17);
  out << "duration,min,q1,median,q3,max,whisker_lo,whisker_hi,best,outliers\n";
  for (const auto& s : studies) {
    const BoxplotRow row = boxplot_row(s);
    out << row.duration << ',' << row.stats.min << ',' << row.stats.q1 << ','
        << row.stats.median << ',' << row.stats.q3 << ',' << row.stats.max << ','
        << row.whisker_lo << ',' << row.whisker_hi << ',' << row.best << ",\"";
    for (std::size_t i = 0; i < row.outliers.size(); ++i)
      out << (i ? ";" : "") << row.outliers[i];
    out << "\"\n";
  }
}

void write_histogram(const std::filesystem::path& dir,
                     const std::vector<StudyResult>& studies, double bin_width) {
  double max_r = 0.0;
  for (const auto& s : studies)
    for (const auto& run : s.runs)
      if (std::isfinite(run.final_error_rate)) max_r = std::max(max_r, run.final_error_rate);
  const int n_bins = std::max(1, static_cast<int>(std::ceil(max_r / bin_width + 1e-12)));

  auto out = open_or_throw(dir / "histogram.csv");
  out << "bin_lo,bin_hi";
  for (const auto& s : studies) out << ',' << s.label;
  out << '\n';
  for (int b = 0; b < n_bins; ++b) {
    out << b * bin_width << ',' << (b + 1) * bin_width;
    for (const auto& s : studies) {
      int count = 0;
      for (const auto& run : s.runs) {
        const double r = run.final_error_rate;
        if (r >= b * bin_width && (r < (b + 1) * bin_width || b + 1 == n_bins))
          ++count;
      }
      out << ',' << count;
    }
    out << '\n';
  }
}

const RunRecord* best_run(const StudyResult& study) {
  const RunRecord* best = nullptr;
  for (const auto& run : study.runs)
    if (std::isfinite(run.final_error_rate) &&
        (!best || run.final_error_rate < best->final_error_rate))
      best = &run;
  return best;
}

void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    bool complete, const std::vector<StudyResult>& studies,
                    const json& extras) {
  json j;
  j["kind"] = to_string(config.kind);
  j["seed"] = config.seed;
  j["complete"] = complete;
  json timings = json::array();
  for (const auto& s : studies) {
    double total = 0.0;
    for (const auto& run : s.runs) total += run.wall_time_s;
    timings.push_back({{"study", s.label}, {"duration", s.duration},
                       {"n_runs", s.runs.size()}, {"wall_time_s", total}});
  }
  j["timings"] = timings;
  if (!extras.is_null()) j["results"] = extras;
  auto out = open_or_throw(dir / "manifest.json");
  out << j.dump(2) << '\n';
}

PbvqoProblem problem_from_config(const ExperimentConfig& config, int n_qubits,
                                 double duration) {
  PbvqoProblem p = PbvqoProblem::ring(n_qubits, duration, config.ansatz_size,
                                      config.omega, config.coupling_bound);
  p.evolution.time_step = config.time_step;
  return p;
}

}  // namespace

std::filesystem::path resolve_output_dir(const std::string& output_dir) {
  std::filesystem::path dir(output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv("PBVQO_OUTPUT_ROOT"))
      dir = std::filesystem::path(root) / dir;
  }
  return dir;
}

PulseTrace export_pulse_trace(const Eigen::VectorXd& params, const PbvqoProblem& problem,
                              int samples) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  const PulseAnsatz ansatz = make_ansatz(problem, params);
  const CircuitParams circuit = CircuitParams::dimensionless(problem.model.coupling_bound);

  PulseTrace trace;
  for (int i = 0; i < samples; ++i) {
    const double t = problem.duration * i / (samples - 1);
    const double p = ansatz.evaluate(t);
    const double f = filter_pulse(p, problem.model.coupling_bound);
    trace.t.push_back(t);
    trace.raw.push_back(p);
    trace.filtered.push_back(f);
    trace.flux.push_back(flux_for_coupling(circuit, f));
  }
  return trace;
}

void write_pulse_trace_csv(const PulseTrace& trace, const std::filesystem::path& path) {
  auto out = open_or_throw(path);
  out.precision(17);
  out << "t,pulse,filtered,flux\n";
  for (std::size_t i = 0; i < trace.t.size(); ++i)
    out << trace.t[i] << ',' << trace.raw[i] << ',' << trace.filtered[i] << ','
        << trace.flux[i] << '\n';
}

int run_experiment(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidationError;
  }

  const auto dir = resolve_output_dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory " << dir << ": " << ec.message() << '\n';
    return kExitRuntimeError;
  }

  std::vector<StudyResult> studies;
  json extras;
  try {
    switch (config.kind) {
      case ExperimentKind::PbvqoSweep: {
        const PbvqoProblem tmpl =
            problem_from_config(config, config.n_qubits, config.durations.front());
        studies = sweep_duration(tmpl, config.durations, config.n_restarts, config.seed,
                                 config.bfgs, config.workers);
        write_boxplot(dir, studies);
        // Pulse and flux rendering for the best run of the last duration.
        if (const RunRecord* best = best_run(studies.back())) {
          const PbvqoProblem p =
              problem_from_config(config, config.n_qubits, studies.back().duration);
          write_pulse_trace_csv(export_pulse_trace(best->final_params, p, 501),
                                dir / "pulse_trace.csv");
        }
        break;
      }
      case ExperimentKind::Meta: {
        const PbvqoProblem easy =
            problem_from_config(config, config.n_easy, config.durations.front());
        const PbvqoProblem hard =
            problem_from_config(config, config.n_qubits, config.durations.front());
        StudyResult transfers;
        transfers.label = "meta-ga";
        transfers.duration = hard.duration;
        StudyResult easy_runs;
        easy_runs.label = "easy-ga";
        easy_runs.duration = easy.duration;
        GaConfig ga = config.ga;
        for (int k = 0; k < config.n_restarts; ++k) {
          MetaLearnResult r =
              meta_learn(easy, hard, ga, derive_seed(config.seed, 50000 + k), config.bfgs);
          r.hard_run.run_id = k;
          transfers.runs.push_back(r.hard_run);
          RunRecord easy_rec;
          easy_rec.run_id = k;
          easy_rec.seed = r.easy_report.seed;
          easy_rec.initial_params = Eigen::VectorXd::Zero(0);
          easy_rec.final_params = r.easy_report.best_params;
          easy_rec.cost_history = r.easy_report.cost_history;
          easy_rec.final_energy = r.easy_report.best_cost;
          easy_rec.final_error_rate = r.easy_error_rate;
          easy_rec.converged = r.easy_solved;
          easy_rec.note = "ga";
          easy_runs.runs.push_back(std::move(easy_rec));
        }
        transfers.summary = summarize_error_rates(transfers.runs);
        easy_runs.summary = summarize_error_rates(easy_runs.runs);
        studies = {easy_runs, transfers};
        if (const RunRecord* best = best_run(transfers))
          write_pulse_trace_csv(export_pulse_trace(best->final_params, hard, 501),
                                dir / "pulse_trace.csv");
        if (const RunRecord* best = best_run(easy_runs))
          write_pulse_trace_csv(export_pulse_trace(best->final_params, easy, 501),
                                dir / "pulse_trace_easy.csv");
        break;
      }
      case ExperimentKind::Histogram: {
        const PbvqoProblem easy =
            problem_from_config(config, config.n_easy, config.durations.front());
        const PbvqoProblem hard =
            problem_from_config(config, config.n_qubits, config.durations.front());
        HistogramStudy h = histogram_study(hard, easy, config.n_restarts, config.seed,
                                           config.bfgs, config.ga, config.workers);
        studies = {h.baseline, h.meta_bfgs, h.meta_ga};
        write_histogram(dir, studies, config.histogram_bin_width);
        break;
      }
      case ExperimentKind::Qaoa: {
        const ProblemGraph graph = ProblemGraph::ring(config.n_qubits);
        studies = {run_qaoa(graph, config.qaoa_depth, config.n_restarts, config.seed,
                            config.bfgs)};
        break;
      }
      case ExperimentKind::CostCompare: {
        const PbvqoProblem problem =
            problem_from_config(config, config.n_qubits, config.durations.front());
        const ProblemGraph graph = ProblemGraph::ring(config.n_qubits);
        StudyResult pbvqo = run_pbvqo(problem, config.n_restarts, config.seed,
                                      config.bfgs, config.workers);
        StudyResult qaoa = run_qaoa(graph, config.qaoa_depth, config.n_restarts,
                                    derive_seed(config.seed, 7), config.bfgs);
        const EnergeticCostComparison cmp =
            compare_energetic_cost(problem, pbvqo, graph, qaoa);
        for (auto& run : pbvqo.runs)
          run.energetic_cost = pbvqo_energetic_cost(problem, run.final_params);
        studies = {pbvqo, qaoa};
        extras = {{"c_pbvqo", cmp.pbvqo_cost},
                  {"c_qaoa", cmp.qaoa_cost},
                  {"cost_ratio", cmp.pbvqo_cost / cmp.qaoa_cost}};
        auto out = open_or_throw(dir / "cost.csv");
        out.precision(17);
        out << "c_pbvqo,c_qaoa,ratio\n"
            << cmp.pbvqo_cost << ',' << cmp.qaoa_cost << ','
            << cmp.pbvqo_cost / cmp.qaoa_cost << '\n';
        break;
      }
    }

    write_runs(dir, studies);
    write_summary(dir, studies);
    write_manifest(dir, config, true, studies, extras);
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    // Preserve whatever completed, marked incomplete.
    try {
      write_runs(dir, studies);
      write_manifest(dir, config, false, studies, extras);
    } catch (...) {
    }
    return kExitRuntimeError;
  }
  return kExitOk;
}

int recompute_report(const std::filesystem::path& run_dir) {
  std::ifstream in(run_dir / "runs.jsonl");
  if (!in) {
    std::cerr << "cannot read " << (run_dir / "runs.jsonl") << '\n';
    return kExitRuntimeError;
  }
  std::vector<std::string> labels;
  std::vector<double> durations;
  const std::vector<RunRecord> records = read_records(in, &labels, &durations);
  if (records.empty()) {
    std::cerr << "no records found\n";
    return kExitRuntimeError;
  }

  // Group into studies by (label, duration) preserving first-seen order.
  std::vector<StudyResult> studies;
  std::map<std::pair<std::string, double>, std::size_t> index;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto key = std::make_pair(labels[i], durations[i]);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, studies.size()).first;
      studies.push_back(StudyResult{{}, {}, labels[i], durations[i]});
    }
    studies[it->second].runs.push_back(records[i]);
  }
  for (auto& s : studies) s.summary = summarize_error_rates(s.runs);
  write_summary(run_dir, studies);
  return kExitOk;
}

}  // namespace pbvqo
