#include "allsh/divergence.hpp"

#include <cmath>

#include "allsh/errors.hpp"

namespace allsh {

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
  double sum = 0.0;
  for (double& v : probs_) {
    if (!(v > kProbEps)) v = kProbEps;
    if (v > 1.0) v = 1.0;
    sum += v;
  }
  for (double& v : probs_) v /= sum;
}

DivergenceKind DivergenceKind::alpha_of(double a) {
  if (a == 0.0 || a == 1.0) throw AlphaSingular();
  return {Family::Alpha, a};
}

static void check_lengths(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size()) throw LengthMismatch();
}

double kl(const ProbDist& p, const ProbDist& q) {
  check_lengths(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * std::log(p[i] / q[i]);
  return acc < 0.0 ? 0.0 : acc;
}

double jsd(const ProbDist& p, const ProbDist& q) {
  check_lengths(p, q);
  // KL terms against the mixture in base 2; the mixture needs no clamping
  // since both inputs are already clamped.
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    acc += 0.5 * (p[i] * std::log2(p[i] / m) + q[i] * std::log2(q[i] / m));
  }
  if (acc < 0.0) acc = 0.0;
  return std::sqrt(acc);
}

double alpha_div(const ProbDist& p, const ProbDist& q, double alpha) {
  if (alpha == 0.0 || alpha == 1.0) throw AlphaSingular();
  check_lengths(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::pow(p[i] / q[i], alpha) - 1.0;
  return acc / (alpha * (alpha - 1.0));
}

double entropy(const ProbDist& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc -= p[i] * std::log(p[i]);
  return acc < 0.0 ? 0.0 : acc;
}

double divergence(const DivergenceKind& kind, const ProbDist& p, const ProbDist& q) {
  switch (kind.family) {
    case DivergenceKind::Family::KL: return kl(p, q);
    case DivergenceKind::Family::JSD: return jsd(p, q);
    case DivergenceKind::Family::Alpha: return alpha_div(p, q, kind.alpha);
  }
  throw Error("unknown divergence kind");
}

}  // namespace allsh
