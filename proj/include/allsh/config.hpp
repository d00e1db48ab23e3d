#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "allsh/alloop.hpp"

namespace allsh {

struct DatasetPaths {
  std::string train;
  std::string test;
  std::string od_test;  // optional, empty when absent
  int num_classes = 2;
};

struct SyntheticDataConfig {
  SyntheticSpec spec;        // num_examples reused as the train size
  int num_test = 0;
  std::uint64_t data_seed = 12345;  // shared across run seeds
};

struct ExperimentConfig {
  std::optional<DatasetPaths> dataset;
  std::optional<SyntheticDataConfig> synthetic;
  Strategy strategy;
  BudgetSpec budget;
  TrainConfig train;
  bool curriculum = false;
  std::optional<ImbalanceRates> imbalance;
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";
  int threads = 0;
  bool zero_timing = false;

  nlohmann::json snapshot;  // the validated source document

  int num_classes() const;
};

// Parses and range-checks a config document; throws ConfigInvalid listing
// every violated field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

// Strategy presets accepted by `sweep --strategies`; divergence/augmentation
// parameters are taken from the base config.
Strategy strategy_from_name(const std::string& name, const Strategy& base);

// Loads or generates the datasets and assembles the runnable spec.
ExperimentSpec make_experiment_spec(const ExperimentConfig& config);

SyntheticSpec parse_synthetic_spec(const nlohmann::json& doc);

}  // namespace allsh
