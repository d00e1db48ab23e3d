#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "allsh/augment.hpp"
#include "allsh/corpus.hpp"
#include "allsh/divergence.hpp"
#include "allsh/model.hpp"

namespace allsh {

struct Strategy {
  enum class Kind { Random, Entropy, Allsh };
  Kind kind = Kind::Allsh;
  DivergenceKind divergence = DivergenceKind::kl();
  AugmentationPolicy policy;
  int k = 4;
  bool worst_case = false;

  std::string name() const;
};

struct AcquisitionScore {
  int example_id = 0;
  double score = 0.0;
  std::vector<double> per_copy;  // Allsh only: divergence per augmented copy
};

double lmax_score(const std::vector<double>& per_copy);

// Scores every unlabeled id. examples/features are indexed by id. The scan
// over the pool is an OpenMP parallel map; results are identical to the
// serial reference for any thread count (per-id seed derivation).
// threads <= 0 uses the OpenMP default.
std::vector<AcquisitionScore> score_pool(const Strategy& strategy, const ModelParams& params,
                                         const PoolState& pool,
                                         const std::vector<TokenizedExample>& examples,
                                         const std::vector<FeatureVector>& features,
                                         const CorpusStats& stats, std::uint64_t seed,
                                         int threads = 0);

// Serial reference implementation, kept for testing and benchmarking.
std::vector<AcquisitionScore> score_pool_serial(const Strategy& strategy,
                                                const ModelParams& params, const PoolState& pool,
                                                const std::vector<TokenizedExample>& examples,
                                                const std::vector<FeatureVector>& features,
                                                const CorpusStats& stats, std::uint64_t seed);

// Top s_acq ids by descending score, ties by ascending id; clips to pool size.
std::vector<int> select_top(std::vector<AcquisitionScore> scores, int s_acq);

}  // namespace allsh
