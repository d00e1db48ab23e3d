#include "allsh/acquisition.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "allsh/errors.hpp"
#include "allsh/rng.hpp"

namespace allsh {

namespace {

// Domain tag separating the Random strategy's uniform stream from
// augmentation seed derivation.
constexpr std::uint64_t kRandomStreamTag = 0x72616e646f6dULL;

AcquisitionScore score_one(const Strategy& strategy, const ModelParams& params, int id,
                           const std::vector<TokenizedExample>& examples,
                           const std::vector<FeatureVector>& features, const CorpusStats& stats,
                           const Augmenter* augmenter, std::uint64_t seed) {
  AcquisitionScore out;
  out.example_id = id;
  switch (strategy.kind) {
    case Strategy::Kind::Random:
      out.score = hash_to_unit(derive_seed(seed, kRandomStreamTag, static_cast<std::uint64_t>(id)));
      break;
    case Strategy::Kind::Entropy:
      out.score = entropy(predict_proba(params, features[static_cast<std::size_t>(id)]));
      break;
    case Strategy::Kind::Allsh: {
      const ProbDist p = predict_proba(params, features[static_cast<std::size_t>(id)]);
      const AugmentedSet set =
          augmenter->generate_k(examples[static_cast<std::size_t>(id)], strategy.k, seed);
      out.per_copy.reserve(set.copies.size());
      for (const TokenizedExample& copy : set.copies) {
        const ProbDist q = predict_proba(params, featurize(copy, stats));
        out.per_copy.push_back(divergence(strategy.divergence, p, q));
      }
      out.score = strategy.worst_case ? lmax_score(out.per_copy) : out.per_copy.front();
      break;
    }
  }
  return out;
}

}  // namespace

std::string Strategy::name() const {
  switch (kind) {
    case Kind::Random: return "random";
    case Kind::Entropy: return "entropy";
    case Kind::Allsh: return worst_case ? "allsh_wca" : "allsh";
  }
  return "unknown";
}

double lmax_score(const std::vector<double>& per_copy) {
  if (per_copy.empty()) throw EmptyList();
  return *std::max_element(per_copy.begin(), per_copy.end());
}

std::vector<AcquisitionScore> score_pool(const Strategy& strategy, const ModelParams& params,
                                         const PoolState& pool,
                                         const std::vector<TokenizedExample>& examples,
                                         const std::vector<FeatureVector>& features,
                                         const CorpusStats& stats, std::uint64_t seed,
                                         int threads) {
  if (pool.unlabeled_ids.empty()) throw EmptyPool();
  if (params.num_classes == 0) throw Error("model not trained");

  const Augmenter augmenter(stats, strategy.policy);
  const Augmenter* aug = strategy.kind == Strategy::Kind::Allsh ? &augmenter : nullptr;

  const std::size_t n = pool.unlabeled_ids.size();
  std::vector<AcquisitionScore> scores(n);
#ifdef _OPENMP
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nthreads)
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] =
        score_one(strategy, params, pool.unlabeled_ids[i], examples, features, stats, aug, seed);
  }
#else
  (void)threads;
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] =
        score_one(strategy, params, pool.unlabeled_ids[i], examples, features, stats, aug, seed);
  }
#endif
  return scores;
}

std::vector<AcquisitionScore> score_pool_serial(const Strategy& strategy,
                                                const ModelParams& params, const PoolState& pool,
                                                const std::vector<TokenizedExample>& examples,
                                                const std::vector<FeatureVector>& features,
                                                const CorpusStats& stats, std::uint64_t seed) {
  if (pool.unlabeled_ids.empty()) throw EmptyPool();
  if (params.num_classes == 0) throw Error("model not trained");

  const Augmenter augmenter(stats, strategy.policy);
  const Augmenter* aug = strategy.kind == Strategy::Kind::Allsh ? &augmenter : nullptr;

  std::vector<AcquisitionScore> scores;
  scores.reserve(pool.unlabeled_ids.size());
  for (int id : pool.unlabeled_ids)
    scores.push_back(score_one(strategy, params, id, examples, features, stats, aug, seed));
  return scores;
}

std::vector<int> select_top(std::vector<AcquisitionScore> scores, int s_acq) {
  if (s_acq < 1) throw Error("s_acq must be >= 1");
  std::sort(scores.begin(), scores.end(), [](const AcquisitionScore& a, const AcquisitionScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.example_id < b.example_id;
  });
  const std::size_t take = std::min(scores.size(), static_cast<std::size_t>(s_acq));
  std::vector<int> ids;
  ids.reserve(take);
  for (std::size_t i = 0; i < take; ++i) ids.push_back(scores[i].example_id);
  return ids;
}

}  // namespace allsh
