#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "allsh/acquisition.hpp"
#include "allsh/corpus.hpp"
#include "allsh/model.hpp"
#include "allsh/synthetic.hpp"

namespace allsh {

struct BudgetSpec {
  double initial_fraction = 0.001;
  int per_iteration = 50;
  double total_fraction = 0.01;

  void validate() const;
};

struct IterationRecord {
  int iteration = 0;
  std::size_t labeled_count = 0;  // training-set size this record was trained on
  std::vector<int> acquired_ids;  // empty on the final record
  double test_accuracy = 0.0;
  std::optional<double> od_accuracy;
  LossBreakdown loss;
  std::int64_t wall_clock_ms = 0;
};

struct ExperimentResult {
  std::string config_json;  // snapshot, filled by the caller
  std::string strategy_name;
  std::uint64_t seed = 0;
  std::size_t train_size = 0;
  std::vector<IterationRecord> records;
  double final_accuracy = 0.0;
  double budget_fraction = 0.0;
};

struct ImbalanceRates {
  double positive_rate = 1.0;
  double negative_rate = 1.0;
};

// Everything run_experiment needs, already decoupled from the CLI config.
struct ExperimentSpec {
  std::vector<Document> train_docs;
  std::vector<Document> test_docs;
  std::vector<Document> od_test_docs;  // may be empty
  int num_classes = 2;
  Strategy strategy;
  BudgetSpec budget;
  TrainConfig train;
  bool curriculum = false;  // consistency-regularized training when true
  std::optional<ImbalanceRates> imbalance;
  int threads = 0;
  bool zero_timing = false;  // report wall_clock_ms as 0 for bytewise reproducibility
};

// Moves ids from unlabeled to labeled; throws NotInPool for unknown ids.
void oracle_label(PoolState& pool, const std::vector<int>& ids);

// Argmax-prediction accuracy; ties go to the lowest class index.
double evaluate(const ModelParams& params, const std::vector<FeatureVector>& features,
                const std::vector<int>& labels);

ExperimentResult run_experiment(const ExperimentSpec& spec, std::uint64_t seed);

}  // namespace allsh
