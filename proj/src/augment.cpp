#include "allsh/augment.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "allsh/errors.hpp"

namespace allsh {

ReplacementSampler::ReplacementSampler(const CorpusStats& stats) {
  cumulative_.reserve(stats.corpus_score.size());
  double acc = 0.0;
  for (double s : stats.corpus_score) {
    acc += stats.max_corpus_score - s;
    cumulative_.push_back(acc);
  }
}

int ReplacementSampler::sample(Rng& rng, int exclude_index) const {
  const double total = cumulative_.back();
  if (!(total > 0.0) || cumulative_.size() < 2) return exclude_index;
  std::uniform_real_distribution<double> unit(0.0, total);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double u = unit(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    int idx = static_cast<int>(it - cumulative_.begin());
    if (idx >= static_cast<int>(cumulative_.size())) idx = static_cast<int>(cumulative_.size()) - 1;
    if (idx != exclude_index) return idx;
  }
  // Excluded token carries nearly all mass; fall back to its neighbor.
  return exclude_index == 0 ? 1 : exclude_index - 1;
}

std::vector<double> tfidf_replace_probs(const TokenizedExample& ex, const CorpusStats& stats,
                                        double p_aug) {
  if (ex.tokens.empty()) throw EmptySentence();
  const double len = static_cast<double>(ex.tokens.size());
  std::unordered_map<int, int> counts;
  for (const std::string& tok : ex.tokens) {
    int idx = stats.vocab.lookup(tok);
    if (idx >= 0) ++counts[idx];
  }
  std::vector<double> scores(ex.tokens.size(), 0.0);
  double c = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
    int idx = stats.vocab.lookup(ex.tokens[i]);
    if (idx >= 0) scores[i] = static_cast<double>(counts[idx]) / len * stats.idf[idx];
    c = std::max(c, scores[i]);
    mean += scores[i];
  }
  mean /= len;
  if (!(mean > 0.0)) return {};  // DegenerateZ: copy stays untouched
  std::vector<double> probs(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i)
    probs[i] = std::min(p_aug * (c - scores[i]) / mean, 1.0);
  return probs;
}

TokenizedExample tfidf_replace(const TokenizedExample& ex, const CorpusStats& stats,
                               const ReplacementSampler& sampler, double p_aug,
                               std::uint64_t seed) {
  const std::vector<double> probs = tfidf_replace_probs(ex, stats, p_aug);
  TokenizedExample out = ex;
  if (probs.empty()) return out;
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (unit(rng) < probs[i]) {
      const int self = stats.vocab.lookup(out.tokens[i]);
      const int repl = sampler.sample(rng, self);
      if (repl >= 0 && repl < stats.vocab.size()) out.tokens[i] = stats.vocab.tokens[repl];
    }
  }
  return out;
}

TokenizedExample tfidf_replace(const TokenizedExample& ex, const CorpusStats& stats,
                               double p_aug, std::uint64_t seed) {
  return tfidf_replace(ex, stats, ReplacementSampler(stats), p_aug, seed);
}

TokenizedExample word_dropout(const TokenizedExample& ex, double drop_prob, std::uint64_t seed) {
  if (ex.tokens.empty()) throw EmptySentence();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TokenizedExample out;
  out.id = ex.id;
  out.label = ex.label;
  for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
    const bool drop = unit(rng) < drop_prob;
    const bool last_chance = out.tokens.empty() && i + 1 == ex.tokens.size();
    if (!drop || last_chance) out.tokens.push_back(ex.tokens[i]);
  }
  return out;
}

Augmenter::Augmenter(const CorpusStats& stats, AugmentationPolicy policy)
    : stats_(stats), policy_(policy), sampler_(stats) {}

TokenizedExample Augmenter::apply(const TokenizedExample& ex, std::uint64_t seed) const {
  switch (policy_.kind) {
    case AugmentKind::TfIdfReplace:
      return tfidf_replace(ex, stats_, sampler_, policy_.p_aug, seed);
    case AugmentKind::WordDropout:
      return word_dropout(ex, policy_.drop_prob, seed);
  }
  throw Error("unknown augmentation kind");
}

AugmentedSet Augmenter::generate_k(const TokenizedExample& ex, int k,
                                   std::uint64_t global_seed) const {
  if (k < 1) throw Error("K must be >= 1");
  AugmentedSet set;
  set.original_id = ex.id;
  set.copies.reserve(static_cast<std::size_t>(k));
  set.copy_seeds.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::uint64_t seed =
        derive_seed(global_seed, static_cast<std::uint64_t>(ex.id), static_cast<std::uint64_t>(i));
    set.copy_seeds.push_back(seed);
    set.copies.push_back(apply(ex, seed));
  }
  return set;
}

}  // namespace allsh
