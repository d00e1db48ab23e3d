#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "allsh/config.hpp"
#include "allsh/errors.hpp"
#include "allsh/report.hpp"
#include "allsh/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitInternalError = 4;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string cell_stem(const std::string& strategy, std::uint64_t seed) {
  return strategy + "_seed" + std::to_string(seed);
}

void run_one(const allsh::ExperimentConfig& config, const allsh::ExperimentSpec& spec,
             std::uint64_t seed, const std::string& out_dir) {
  allsh::ExperimentResult result = allsh::run_experiment(spec, seed);
  result.config_json = config.snapshot.dump();
  const std::string stem = (fs::path(out_dir) / cell_stem(result.strategy_name, seed)).string();
  allsh::write_iteration_csv(result, stem + ".csv");
  allsh::write_result_json(result, stem + ".json");
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  allsh::ExperimentConfig config = allsh::load_config(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  fs::create_directories(config.output_dir);
  const allsh::ExperimentSpec spec = allsh::make_experiment_spec(config);
  for (std::uint64_t seed : config.seeds) run_one(config, spec, seed, config.output_dir);
  std::cout << "wrote " << config.seeds.size() << " result set(s) to " << config.output_dir
            << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& strategies_csv,
              const std::string& seeds_csv) {
  allsh::ExperimentConfig config = allsh::load_config(config_path);
  const std::vector<std::string> strategies = split_csv(strategies_csv);
  if (strategies.empty()) throw allsh::ConfigInvalid("sweep requires at least one strategy");
  if (!seeds_csv.empty()) {
    config.seeds.clear();
    for (const std::string& s : split_csv(seeds_csv)) config.seeds.push_back(std::stoull(s));
  }
  if (config.seeds.empty()) throw allsh::ConfigInvalid("sweep requires at least one seed");
  fs::create_directories(config.output_dir);

  std::vector<allsh::SweepCell> cells;
  for (const std::string& name : strategies) {
    allsh::ExperimentConfig cell_config = config;
    cell_config.strategy = allsh::strategy_from_name(name, config.strategy);
    cell_config.snapshot["strategy"]["kind"] =
        cell_config.strategy.kind == allsh::Strategy::Kind::Allsh ? "allsh" : name;
    cell_config.snapshot["strategy"]["worst_case"] = cell_config.strategy.worst_case;
    const allsh::ExperimentSpec spec = allsh::make_experiment_spec(cell_config);
    for (std::uint64_t seed : config.seeds) {
      run_one(cell_config, spec, seed, config.output_dir);
      cells.push_back({cell_config.strategy.name(), seed,
                       cell_stem(cell_config.strategy.name(), seed) + ".json", false});
    }
  }
  allsh::write_manifest(cells, config.output_dir);
  std::cout << "wrote " << cells.size() << " cell(s) + manifest to " << config.output_dir << "\n";
  return 0;
}

int cmd_report(const std::string& dir) {
  const std::string csv = allsh::report_csv(dir);
  std::ofstream out(fs::path(dir) / "report.csv", std::ios::binary);
  if (!out) throw allsh::Error("cannot write report.csv in " + dir);
  out << csv;
  std::cout << csv;
  return 0;
}

int cmd_gen(const std::string& spec_path, std::uint64_t seed, const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw allsh::SpecInvalid("cannot open spec file: " + spec_path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw allsh::SpecInvalid("spec is not valid JSON: " + spec_path);
  const allsh::SyntheticSpec spec = allsh::parse_synthetic_spec(doc);
  allsh::write_jsonl(allsh::generate_synthetic(spec, seed), out_path);
  std::cout << "wrote " << spec.num_examples << " documents to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALLSH active-learning laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, strategies_csv, seeds_csv, dir, spec_path, out_path;
  std::uint64_t gen_seed = 0;

  CLI::App* run = app.add_subcommand("run", "Run one experiment per configured seed");
  run->add_option("--config", config_path, "Config JSON path")->required();
  run->add_option("--out", out_dir, "Override the output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a strategies x seeds cross product");
  sweep->add_option("--config", config_path, "Config JSON path")->required();
  sweep->add_option("--strategies", strategies_csv, "Comma-separated strategy names")->required();
  sweep->add_option("--seeds", seeds_csv, "Comma-separated seeds (defaults to config seeds)");

  CLI::App* report = app.add_subcommand("report", "Aggregate result files into a summary table");
  report->add_option("--dir", dir, "Results directory")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic JSONL dataset");
  gen->add_option("--spec", spec_path, "Synthetic spec JSON path")->required();
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", out_path, "Output JSONL path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (sweep->parsed()) return cmd_sweep(config_path, strategies_csv, seeds_csv);
    if (report->parsed()) return cmd_report(dir);
    if (gen->parsed()) return cmd_gen(spec_path, gen_seed, out_path);
  } catch (const allsh::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const allsh::SpecInvalid& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const allsh::DatasetError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const allsh::MalformedLine& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const allsh::LabelOutOfRange& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const allsh::EmptyText& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const allsh::NoResults& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitInternalError;
}
