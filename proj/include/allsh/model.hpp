#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "allsh/corpus.hpp"
#include "allsh/divergence.hpp"

namespace allsh {

// Multinomial logistic regression weights: W row-major (num_classes x dim).
struct ModelParams {
  int num_classes = 0;
  int dim = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  static ModelParams zeros(int num_classes, int dim);
  double w(int c, int j) const { return weights[static_cast<std::size_t>(c) * dim + j]; }
};

struct TrainConfig {
  double learning_rate = 0.1;
  int iterations = 200;
  int batch_size = 16;
  double ssl_alpha = 0.01;  // coefficient on the consistency term
  std::uint64_t seed = 0;
};

struct LossBreakdown {
  double supervised = 0.0;
  double consistency = 0.0;
  double total = 0.0;
};

struct Gradients {
  std::vector<double> weights;
  std::vector<double> bias;
  explicit Gradients(const ModelParams& p)
      : weights(p.weights.size(), 0.0), bias(p.bias.size(), 0.0) {}
};

using LabeledExample = std::pair<FeatureVector, int>;
using ConsistencyPair = std::pair<FeatureVector, FeatureVector>;

ProbDist predict_proba(const ModelParams& params, const FeatureVector& x);

// Mean cross-entropy over the batch; accumulates d(loss)/dW, d(loss)/db
// into *grad when non-null.
double supervised_loss(const ModelParams& params, const std::vector<LabeledExample>& batch,
                       Gradients* grad);

// Mean KL(p(x) || p(x')) over the batch; gradient flows through both branches.
double consistency_loss(const ModelParams& params, const std::vector<ConsistencyPair>& batch,
                        Gradients* grad);

LossBreakdown full_batch_loss(const ModelParams& params, const std::vector<LabeledExample>& labeled,
                              const std::vector<ConsistencyPair>& pairs, double ssl_alpha);

// Mini-batch gradient descent from zero init; ssl_alpha = 0 (or no pairs)
// trains plain supervised.
ModelParams fit(const std::vector<LabeledExample>& labeled,
                const std::vector<ConsistencyPair>& unlabeled_pairs, const TrainConfig& config,
                int dim, int num_classes);

// JSON checkpoint: dimensions header, then W row-major and b.
void save_checkpoint(const ModelParams& params, const std::string& path);
ModelParams load_checkpoint(const std::string& path);

}  // namespace allsh
