#include "allsh/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "allsh/errors.hpp"
#include "allsh/rng.hpp"

namespace allsh {

ModelParams ModelParams::zeros(int num_classes, int dim) {
  ModelParams p;
  p.num_classes = num_classes;
  p.dim = dim;
  p.weights.assign(static_cast<std::size_t>(num_classes) * dim, 0.0);
  p.bias.assign(static_cast<std::size_t>(num_classes), 0.0);
  return p;
}

static std::vector<double> logits(const ModelParams& params, const FeatureVector& x) {
  std::vector<double> z(params.bias);
  for (const auto& [j, v] : x.weights) {
    if (j < 0 || j >= params.dim) throw DimensionMismatch();
    for (int c = 0; c < params.num_classes; ++c)
      z[static_cast<std::size_t>(c)] += params.w(c, j) * v;
  }
  return z;
}

// In-place softmax with max-subtraction; returns log-sum-exp of the input.
static double softmax_inplace(std::vector<double>& z) {
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return zmax + std::log(sum);
}

ProbDist predict_proba(const ModelParams& params, const FeatureVector& x) {
  std::vector<double> z = logits(params, x);
  softmax_inplace(z);
  return ProbDist(std::move(z));
}

static void accumulate(Gradients* grad, const ModelParams& params, const FeatureVector& x,
                       const std::vector<double>& grad_z, double scale) {
  for (int c = 0; c < params.num_classes; ++c) {
    const double g = grad_z[static_cast<std::size_t>(c)] * scale;
    grad->bias[static_cast<std::size_t>(c)] += g;
    for (const auto& [j, v] : x.weights)
      grad->weights[static_cast<std::size_t>(c) * params.dim + j] += g * v;
  }
}

double supervised_loss(const ModelParams& params, const std::vector<LabeledExample>& batch,
                       Gradients* grad) {
  if (batch.empty()) throw EmptyBatch();
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const auto& [x, label] : batch) {
    std::vector<double> z = logits(params, x);
    const double logit_y = z[static_cast<std::size_t>(label)];
    const double lse = softmax_inplace(z);  // z now holds probabilities
    loss += (lse - logit_y) * inv_n;
    if (grad) {
      z[static_cast<std::size_t>(label)] -= 1.0;  // p - onehot
      accumulate(grad, params, x, z, inv_n);
    }
  }
  return loss;
}

double consistency_loss(const ModelParams& params, const std::vector<ConsistencyPair>& batch,
                        Gradients* grad) {
  if (batch.empty()) throw EmptyBatch();
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  const int nc = params.num_classes;
  for (const auto& [x, x_aug] : batch) {
    std::vector<double> p = logits(params, x);
    std::vector<double> q = logits(params, x_aug);
    softmax_inplace(p);
    softmax_inplace(q);
    double div = 0.0;
    for (int c = 0; c < nc; ++c) div += p[c] * std::log(p[c] / q[c]);
    loss += div * inv_n;
    if (grad) {
      std::vector<double> gp(static_cast<std::size_t>(nc));
      std::vector<double> gq(static_cast<std::size_t>(nc));
      for (int c = 0; c < nc; ++c) {
        gp[c] = p[c] * (std::log(p[c] / q[c]) - div);
        gq[c] = q[c] - p[c];
      }
      accumulate(grad, params, x, gp, inv_n);
      accumulate(grad, params, x_aug, gq, inv_n);
    }
  }
  return loss;
}

LossBreakdown full_batch_loss(const ModelParams& params, const std::vector<LabeledExample>& labeled,
                              const std::vector<ConsistencyPair>& pairs, double ssl_alpha) {
  LossBreakdown lb;
  lb.supervised = supervised_loss(params, labeled, nullptr);
  lb.consistency =
      (ssl_alpha > 0.0 && !pairs.empty()) ? consistency_loss(params, pairs, nullptr) : 0.0;
  lb.total = lb.supervised + ssl_alpha * lb.consistency;
  return lb;
}

ModelParams fit(const std::vector<LabeledExample>& labeled,
                const std::vector<ConsistencyPair>& unlabeled_pairs, const TrainConfig& config,
                int dim, int num_classes) {
  if (labeled.empty()) throw EmptyLabeledSet();
  ModelParams params = ModelParams::zeros(num_classes, dim);
  Rng rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick_labeled(0, labeled.size() - 1);
  const bool use_ssl = config.ssl_alpha > 0.0 && !unlabeled_pairs.empty();

  std::vector<LabeledExample> lbatch;
  std::vector<ConsistencyPair> ubatch;
  for (int step = 0; step < config.iterations; ++step) {
    lbatch.clear();
    for (int i = 0; i < config.batch_size; ++i) lbatch.push_back(labeled[pick_labeled(rng)]);
    Gradients grad(params);
    supervised_loss(params, lbatch, &grad);
    if (use_ssl) {
      std::uniform_int_distribution<std::size_t> pick_pair(0, unlabeled_pairs.size() - 1);
      ubatch.clear();
      for (int i = 0; i < config.batch_size; ++i) ubatch.push_back(unlabeled_pairs[pick_pair(rng)]);
      Gradients ugrad(params);
      consistency_loss(params, ubatch, &ugrad);
      for (std::size_t k = 0; k < grad.weights.size(); ++k)
        grad.weights[k] += config.ssl_alpha * ugrad.weights[k];
      for (std::size_t k = 0; k < grad.bias.size(); ++k)
        grad.bias[k] += config.ssl_alpha * ugrad.bias[k];
    }
    for (std::size_t k = 0; k < params.weights.size(); ++k)
      params.weights[k] -= config.learning_rate * grad.weights[k];
    for (std::size_t k = 0; k < params.bias.size(); ++k)
      params.bias[k] -= config.learning_rate * grad.bias[k];
  }
  return params;
}

void save_checkpoint(const ModelParams& params, const std::string& path) {
  nlohmann::json obj;
  obj["num_classes"] = params.num_classes;
  obj["dim"] = params.dim;
  obj["weights"] = params.weights;
  obj["bias"] = params.bias;
  std::ofstream out(path);
  if (!out) throw Error("cannot write checkpoint: " + path);
  out << obj.dump() << "\n";
}

ModelParams load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read checkpoint: " + path);
  nlohmann::json obj = nlohmann::json::parse(in);
  ModelParams params;
  params.num_classes = obj.at("num_classes").get<int>();
  params.dim = obj.at("dim").get<int>();
  params.weights = obj.at("weights").get<std::vector<double>>();
  params.bias = obj.at("bias").get<std::vector<double>>();
  if (params.weights.size() != static_cast<std::size_t>(params.num_classes) * params.dim ||
      params.bias.size() != static_cast<std::size_t>(params.num_classes))
    throw Error("checkpoint dimensions inconsistent: " + path);
  return params;
}

}  // namespace allsh
