#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "allsh/alloop.hpp"

namespace allsh {

// Per-iteration CSV, columns:
// seed,strategy,iteration,labeled_count,labeled_fraction,test_accuracy,
// od_accuracy,sup_loss,cons_loss,wall_clock_ms
std::string iteration_csv(const ExperimentResult& result);
void write_iteration_csv(const ExperimentResult& result, const std::string& path);

nlohmann::json result_to_json(const ExperimentResult& result);
ExperimentResult result_from_json(const nlohmann::json& doc);
void write_result_json(const ExperimentResult& result, const std::string& path);
ExperimentResult read_result_json(const std::string& path);

struct SweepCell {
  std::string strategy;
  std::uint64_t seed = 0;
  std::string result_file;  // relative to the sweep directory
  bool completed = false;
};

// Scans the sweep directory for each cell's result file and writes
// manifest.json marking completed/missing cells.
void write_manifest(const std::vector<SweepCell>& cells, const std::string& dir);
std::vector<SweepCell> scan_cells(std::vector<SweepCell> cells, const std::string& dir);

// Aggregates final accuracies across seeds per (strategy, budget_fraction).
// Columns: strategy,budget_fraction,n_seeds,mean_accuracy,std_accuracy
// (sample standard deviation). Throws NoResults on an empty directory.
std::string report_csv(const std::string& results_dir);

}  // namespace allsh
