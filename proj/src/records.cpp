#include "pbvqo/records.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace pbvqo {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

}  // namespace

std::string record_to_json(const RunRecord& r, const std::string& study_label,
                           double duration) {
  json j;
  j["run_id"] = r.run_id;
  j["study"] = study_label;
  j["duration"] = duration;
  j["seed"] = r.seed;
  j["initial_params"] = vector_to_json(r.initial_params);
  j["final_params"] = vector_to_json(r.final_params);
  j["cost_history"] = r.cost_history;
  j["final_energy"] = r.final_energy;
  j["final_error_rate"] = r.final_error_rate;
  if (r.energetic_cost) j["energetic_cost"] = *r.energetic_cost;
  j["converged"] = r.converged;
  j["note"] = r.note;
  return j.dump();
}

RunRecord record_from_json(const std::string& line, std::string* study_label,
                           double* duration) {
  const json j = json::parse(line);
  RunRecord r;
  r.run_id = j.at("run_id").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.initial_params = vector_from_json(j.at("initial_params"));
  r.final_params = vector_from_json(j.at("final_params"));
  r.cost_history = j.at("cost_history").get<std::vector<double>>();
  r.final_energy = j.at("final_energy").get<double>();
  r.final_error_rate = j.at("final_error_rate").get<double>();
  if (j.contains("energetic_cost")) r.energetic_cost = j["energetic_cost"].get<double>();
  r.converged = j.at("converged").get<bool>();
  r.note = j.at("note").get<std::string>();
  if (study_label) *study_label = j.at("study").get<std::string>();
  if (duration) *duration = j.at("duration").get<double>();
  return r;
}

void write_records(std::ostream& out, const StudyResult& study) {
  for (const auto& run : study.runs)
    out << record_to_json(run, study.label, study.duration) << '\n';
}

std::vector<RunRecord> read_records(std::istream& in, std::vector<std::string>* labels,
                                    std::vector<double>* durations) {
  std::vector<RunRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string label;
    double duration = 0.0;
    records.push_back(record_from_json(line, &label, &duration));
    if (labels) labels->push_back(label);
    if (durations) durations->push_back(duration);
  }
  return records;
}

BoxplotRow boxplot_row(const StudyResult& study) {
  BoxplotRow row;
  row.duration = study.duration;
  row.stats = summarize_error_rates(study.runs);
  const double iqr = row.stats.q3 - row.stats.q1;
  const double lo_limit = row.stats.q1 - 1.5 * iqr;
  const double hi_limit = row.stats.q3 + 1.5 * iqr;

  row.whisker_lo = row.stats.max;
  row.whisker_hi = row.stats.min;
  row.best = row.stats.min;
  for (const auto& run : study.runs) {
    const double r = run.final_error_rate;
    if (r >= lo_limit && r <= hi_limit) {
      row.whisker_lo = std::min(row.whisker_lo, r);
      row.whisker_hi = std::max(row.whisker_hi, r);
    } else {
      row.outliers.push_back(r);
    }
  }
  return row;
}

std::string summary_csv_header() {
  return "study,duration,n_runs,min,q1,median,q3,max";
}

std::string summary_csv_line(const StudyResult& study) {
  const SummaryStats s = summarize_error_rates(study.runs);
  std::ostringstream out;
  out.precision(17);
  out << study.label << ',' << study.duration << ',' << study.runs.size() << ','
      << s.min << ',' << s.q1 << ',' << s.median << ',' << s.q3 << ',' << s.max;
  return out.str();
}

}  // namespace pbvqo
