#include "allsh/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "allsh/errors.hpp"

namespace fs = std::filesystem;

namespace allsh {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write: " + path);
  out << content;
}

}  // namespace

std::string iteration_csv(const ExperimentResult& result) {
  std::string csv =
      "seed,strategy,iteration,labeled_count,labeled_fraction,test_accuracy,"
      "od_accuracy,sup_loss,cons_loss,wall_clock_ms\n";
  for (const IterationRecord& rec : result.records) {
    const double fraction =
        static_cast<double>(rec.labeled_count) / static_cast<double>(result.train_size);
    csv += std::to_string(result.seed) + ',' + result.strategy_name + ',' +
           std::to_string(rec.iteration) + ',' + std::to_string(rec.labeled_count) + ',' +
           fmt(fraction) + ',' + fmt(rec.test_accuracy) + ',' +
           (rec.od_accuracy ? fmt(*rec.od_accuracy) : std::string()) + ',' +
           fmt(rec.loss.supervised) + ',' + fmt(rec.loss.consistency) + ',' +
           std::to_string(rec.wall_clock_ms) + '\n';
  }
  return csv;
}

void write_iteration_csv(const ExperimentResult& result, const std::string& path) {
  write_text(path, iteration_csv(result));
}

nlohmann::json result_to_json(const ExperimentResult& result) {
  nlohmann::json doc;
  doc["config"] = result.config_json.empty() ? nlohmann::json::object()
                                             : nlohmann::json::parse(result.config_json);
  doc["strategy"] = result.strategy_name;
  doc["seed"] = result.seed;
  doc["train_size"] = result.train_size;
  doc["budget_fraction"] = result.budget_fraction;
  doc["final_accuracy"] = result.final_accuracy;
  nlohmann::json records = nlohmann::json::array();
  for (const IterationRecord& rec : result.records) {
    nlohmann::json r;
    r["iteration"] = rec.iteration;
    r["labeled_count"] = rec.labeled_count;
    r["acquired_ids"] = rec.acquired_ids;
    r["test_accuracy"] = rec.test_accuracy;
    if (rec.od_accuracy) r["od_accuracy"] = *rec.od_accuracy;
    r["sup_loss"] = rec.loss.supervised;
    r["cons_loss"] = rec.loss.consistency;
    r["total_loss"] = rec.loss.total;
    r["wall_clock_ms"] = rec.wall_clock_ms;
    records.push_back(std::move(r));
  }
  doc["records"] = std::move(records);
  return doc;
}

ExperimentResult result_from_json(const nlohmann::json& doc) {
  ExperimentResult result;
  result.config_json = doc.value("config", nlohmann::json::object()).dump();
  result.strategy_name = doc.at("strategy").get<std::string>();
  result.seed = doc.at("seed").get<std::uint64_t>();
  result.train_size = doc.at("train_size").get<std::size_t>();
  result.budget_fraction = doc.at("budget_fraction").get<double>();
  result.final_accuracy = doc.at("final_accuracy").get<double>();
  for (const nlohmann::json& r : doc.at("records")) {
    IterationRecord rec;
    rec.iteration = r.at("iteration").get<int>();
    rec.labeled_count = r.at("labeled_count").get<std::size_t>();
    rec.acquired_ids = r.at("acquired_ids").get<std::vector<int>>();
    rec.test_accuracy = r.at("test_accuracy").get<double>();
    if (r.contains("od_accuracy")) rec.od_accuracy = r["od_accuracy"].get<double>();
    rec.loss.supervised = r.at("sup_loss").get<double>();
    rec.loss.consistency = r.at("cons_loss").get<double>();
    rec.loss.total = r.at("total_loss").get<double>();
    rec.wall_clock_ms = r.at("wall_clock_ms").get<std::int64_t>();
    result.records.push_back(std::move(rec));
  }
  return result;
}

void write_result_json(const ExperimentResult& result, const std::string& path) {
  write_text(path, result_to_json(result).dump(2) + "\n");
}

ExperimentResult read_result_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read result file: " + path);
  return result_from_json(nlohmann::json::parse(in));
}

std::vector<SweepCell> scan_cells(std::vector<SweepCell> cells, const std::string& dir) {
  for (SweepCell& cell : cells)
    cell.completed = fs::exists(fs::path(dir) / cell.result_file);
  return cells;
}

void write_manifest(const std::vector<SweepCell>& cells, const std::string& dir) {
  nlohmann::json doc;
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepCell& cell : scan_cells(cells, dir)) {
    nlohmann::json c;
    c["strategy"] = cell.strategy;
    c["seed"] = cell.seed;
    c["result_file"] = cell.result_file;
    c["status"] = cell.completed ? "ok" : "missing";
    arr.push_back(std::move(c));
  }
  doc["cells"] = std::move(arr);
  write_text((fs::path(dir) / "manifest.json").string(), doc.dump(2) + "\n");
}

std::string report_csv(const std::string& results_dir) {
  std::map<std::pair<std::string, double>, std::vector<double>> groups;
  if (fs::is_directory(results_dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(results_dir))
      if (entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      const ExperimentResult r = read_result_json(file.string());
      groups[{r.strategy_name, r.budget_fraction}].push_back(r.final_accuracy);
    }
  }
  if (groups.empty()) throw NoResults();

  std::string csv = "strategy,budget_fraction,n_seeds,mean_accuracy,std_accuracy\n";
  for (const auto& [key, accs] : groups) {
    const double n = static_cast<double>(accs.size());
    double mean = 0.0;
    for (double a : accs) mean += a;
    mean /= n;
    double var = 0.0;
    if (accs.size() > 1) {
      for (double a : accs) var += (a - mean) * (a - mean);
      var /= (n - 1.0);
    }
    csv += key.first + ',' + fmt(key.second) + ',' + std::to_string(accs.size()) + ',' +
           fmt(mean) + ',' + fmt(std::sqrt(var)) + '\n';
  }
  return csv;
}

}  // namespace allsh
