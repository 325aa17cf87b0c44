#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pbvqo/workflows.hpp"

namespace pbvqo {

/// One line of machine-readable JSON per run. Wall time is deliberately not
/// part of the record body so reruns with the same master seed are
/// byte-identical; timings go to the manifest instead.
std::string record_to_json(const RunRecord& record, const std::string& study_label,
                           double duration);

RunRecord record_from_json(const std::string& line, std::string* study_label = nullptr,
                           double* duration = nullptr);

void write_records(std::ostream& out, const StudyResult& study);

std::vector<RunRecord> read_records(std::istream& in,
                                    std::vector<std::string>* labels = nullptr,
                                    std::vector<double>* durations = nullptr);

/// Boxplot row: whiskers at 1.5 IQR, outliers beyond them, best = min.
struct BoxplotRow {
  double duration = 0.0;
  SummaryStats stats;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  double best = 0.0;
  std::vector<double> outliers;
};

BoxplotRow boxplot_row(const StudyResult& study);

std::string summary_csv_header();
std::string summary_csv_line(const StudyResult& study);

}  // namespace pbvqo
