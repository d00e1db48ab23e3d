#pragma once

#include <vector>

namespace allsh {

// Normalized probability vector over class labels. The constructor clamps
// every entry to [kProbEps, 1] and renormalizes, so downstream logs and
// ratios are always finite.
class ProbDist {
 public:
  static constexpr double kProbEps = 1e-12;

  explicit ProbDist(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

struct DivergenceKind {
  enum class Family { KL, JSD, Alpha };
  Family family = Family::KL;
  double alpha = 0.5;  // only read for Family::Alpha

  static DivergenceKind kl() { return {Family::KL, 0.0}; }
  static DivergenceKind jsd() { return {Family::JSD, 0.0}; }
  static DivergenceKind alpha_of(double a);  // rejects a in {0,1}
};

// KL(p||q) in nats.
double kl(const ProbDist& p, const ProbDist& q);

// Jensen-Shannon distance, base-2 logs so the result lies in [0,1].
double jsd(const ProbDist& p, const ProbDist& q);

// 1/(a(a-1)) * sum_i [(p_i/q_i)^a - 1], natural exponentiation.
double alpha_div(const ProbDist& p, const ProbDist& q, double alpha);

// Predictive entropy -sum p ln p, in nats.
double entropy(const ProbDist& p);

double divergence(const DivergenceKind& kind, const ProbDist& p, const ProbDist& q);

}  // namespace allsh
