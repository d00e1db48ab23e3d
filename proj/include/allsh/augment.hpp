#pragma once

#include <cstdint>
#include <vector>

#include "allsh/corpus.hpp"
#include "allsh/rng.hpp"

namespace allsh {

enum class AugmentKind { TfIdfReplace, WordDropout };

struct AugmentationPolicy {
  AugmentKind kind = AugmentKind::TfIdfReplace;
  double p_aug = 0.3;      // TF-IDF replacement magnitude
  double drop_prob = 0.1;  // word-dropout only
};

struct AugmentedSet {
  int original_id = 0;
  std::vector<TokenizedExample> copies;
  std::vector<std::uint64_t> copy_seeds;  // copy i reproducible from its seed
};

// Samples replacement tokens with probability proportional to
// (S_max - corpus_score), built once per corpus and shared across threads.
class ReplacementSampler {
 public:
  explicit ReplacementSampler(const CorpusStats& stats);

  // Token index drawn from the weighting, never equal to exclude_index.
  int sample(Rng& rng, int exclude_index) const;

 private:
  std::vector<double> cumulative_;
};

TokenizedExample tfidf_replace(const TokenizedExample& ex, const CorpusStats& stats,
                               const ReplacementSampler& sampler, double p_aug,
                               std::uint64_t seed);

// Convenience overload building a one-shot sampler.
TokenizedExample tfidf_replace(const TokenizedExample& ex, const CorpusStats& stats,
                               double p_aug, std::uint64_t seed);

// Per-token replacement probabilities r_i = min(p_aug*(C - s_i)/Z, 1);
// all-zero sentence scores yield an empty result meaning "no replacement".
std::vector<double> tfidf_replace_probs(const TokenizedExample& ex, const CorpusStats& stats,
                                        double p_aug);

TokenizedExample word_dropout(const TokenizedExample& ex, double drop_prob, std::uint64_t seed);

// Holds everything one augmentation policy needs; apply() is pure given the
// seed, so pool-wide generation parallelizes without a shared RNG stream.
class Augmenter {
 public:
  Augmenter(const CorpusStats& stats, AugmentationPolicy policy);

  TokenizedExample apply(const TokenizedExample& ex, std::uint64_t seed) const;
  AugmentedSet generate_k(const TokenizedExample& ex, int k, std::uint64_t global_seed) const;

  const AugmentationPolicy& policy() const { return policy_; }

 private:
  const CorpusStats& stats_;
  AugmentationPolicy policy_;
  ReplacementSampler sampler_;
};

}  // namespace allsh
