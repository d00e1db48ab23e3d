#include "allsh/alloop.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>

#include "allsh/errors.hpp"
#include "allsh/rng.hpp"

namespace allsh {

namespace {

constexpr std::uint64_t kImbalanceTag = 1;
constexpr std::uint64_t kSplitTag = 2;
constexpr std::uint64_t kFitTag = 3;
constexpr std::uint64_t kScoreTag = 4;
constexpr std::uint64_t kCurriculumTag = 5;

struct Prepared {
  std::vector<TokenizedExample> tokenized;
  std::vector<FeatureVector> features;
  std::vector<int> labels;
};

Prepared prepare(const std::vector<Document>& docs, const CorpusStats& stats) {
  Prepared p;
  p.tokenized = tokenize_documents(docs);
  p.features.reserve(docs.size());
  p.labels.reserve(docs.size());
  for (const TokenizedExample& ex : p.tokenized) {
    p.features.push_back(featurize(ex, stats));
    p.labels.push_back(ex.label);
  }
  return p;
}

}  // namespace

void BudgetSpec::validate() const {
  if (!(initial_fraction > 0.0) || !(total_fraction > 0.0) || total_fraction > 1.0)
    throw ConfigInvalid("budget fractions must lie in (0, 1]");
  // 0 < initial < total <= 0.15 is the expected regime; outside it the run
  // still proceeds (a total at or below the initial fraction degenerates to
  // a single train/evaluate pass).
  if (!(initial_fraction < total_fraction) || total_fraction > 0.15)
    std::cerr << "warning: budget outside the expected regime (initial "
              << initial_fraction << ", total " << total_fraction << ")\n";
}

void oracle_label(PoolState& pool, const std::vector<int>& ids) {
  for (int id : ids) {
    auto it = std::lower_bound(pool.unlabeled_ids.begin(), pool.unlabeled_ids.end(), id);
    if (it == pool.unlabeled_ids.end() || *it != id) throw NotInPool(id);
    pool.unlabeled_ids.erase(it);
    pool.labeled_ids.push_back(id);
  }
}

double evaluate(const ModelParams& params, const std::vector<FeatureVector>& features,
                const std::vector<int>& labels) {
  if (features.empty()) throw EmptyTestSet();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const ProbDist p = predict_proba(params, features[i]);
    int best = 0;
    for (std::size_t c = 1; c < p.size(); ++c)
      if (p[c] > p[best]) best = static_cast<int>(c);
    if (best == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(features.size());
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::uint64_t seed) {
  spec.budget.validate();

  std::vector<Document> train = spec.train_docs;
  if (spec.imbalance) {
    train = subsample_imbalanced(train, spec.imbalance->positive_rate,
                                 spec.imbalance->negative_rate, derive_seed(seed, kImbalanceTag));
    for (std::size_t i = 0; i < train.size(); ++i) train[i].id = static_cast<int>(i);
  }
  const std::size_t n = train.size();
  if (n == 0) throw DatasetError("empty training set");

  Prepared tr;
  tr.tokenized = tokenize_documents(train);
  const CorpusStats stats = build_stats(tr.tokenized);
  tr.features.reserve(n);
  tr.labels.reserve(n);
  for (const TokenizedExample& ex : tr.tokenized) {
    tr.features.push_back(featurize(ex, stats));
    tr.labels.push_back(ex.label);
  }
  const Prepared test = prepare(spec.test_docs, stats);
  const bool has_od = !spec.od_test_docs.empty();
  const Prepared od = has_od ? prepare(spec.od_test_docs, stats) : Prepared{};

  PoolState pool =
      initial_seed_split(train, spec.budget.initial_fraction, derive_seed(seed, kSplitTag));
  check_pool_partition(pool, n);

  const std::size_t target = std::min(
      n, static_cast<std::size_t>(
             std::ceil(spec.budget.total_fraction * static_cast<double>(n))));
  if (pool.labeled_ids.size() < target && spec.budget.per_iteration < 1)
    throw BudgetUnreachable();

  const Augmenter augmenter(stats, spec.strategy.policy);
  const int dim = stats.vocab.size();

  ExperimentResult result;
  result.seed = seed;
  result.strategy_name = spec.strategy.name();
  result.train_size = n;
  result.budget_fraction = spec.budget.total_fraction;

  for (int iteration = 0;; ++iteration) {
    const auto t0 = std::chrono::steady_clock::now();
    IterationRecord rec;
    rec.iteration = iteration;
    rec.labeled_count = pool.labeled_ids.size();

    std::vector<LabeledExample> labeled;
    labeled.reserve(pool.labeled_ids.size());
    for (int id : pool.labeled_ids)
      labeled.emplace_back(tr.features[static_cast<std::size_t>(id)],
                           tr.labels[static_cast<std::size_t>(id)]);

    std::vector<ConsistencyPair> pairs;
    if (spec.curriculum && spec.train.ssl_alpha > 0.0) {
      const std::uint64_t pair_seed =
          derive_seed(seed, kCurriculumTag, static_cast<std::uint64_t>(iteration));
      pairs.reserve(pool.unlabeled_ids.size());
      for (int id : pool.unlabeled_ids) {
        const TokenizedExample& ex = tr.tokenized[static_cast<std::size_t>(id)];
        const TokenizedExample aug =
            augmenter.apply(ex, derive_seed(pair_seed, static_cast<std::uint64_t>(id)));
        pairs.emplace_back(tr.features[static_cast<std::size_t>(id)], featurize(aug, stats));
      }
    }

    TrainConfig tc = spec.train;
    tc.seed = derive_seed(seed, kFitTag, static_cast<std::uint64_t>(iteration));
    if (!spec.curriculum) tc.ssl_alpha = 0.0;
    const ModelParams params = fit(labeled, pairs, tc, dim, spec.num_classes);

    rec.loss = full_batch_loss(params, labeled, pairs, tc.ssl_alpha);
    rec.test_accuracy = evaluate(params, test.features, test.labels);
    if (has_od) rec.od_accuracy = evaluate(params, od.features, od.labels);

    const bool done = pool.labeled_ids.size() >= target || pool.unlabeled_ids.empty();
    if (!done) {
      const std::vector<AcquisitionScore> scores =
          score_pool(spec.strategy, params, pool, tr.tokenized, tr.features, stats,
                     derive_seed(seed, kScoreTag, static_cast<std::uint64_t>(iteration)),
                     spec.threads);
      const int remaining = static_cast<int>(target - pool.labeled_ids.size());
      rec.acquired_ids = select_top(scores, std::min(spec.budget.per_iteration, remaining));
      oracle_label(pool, rec.acquired_ids);
      check_pool_partition(pool, n);
    }

    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_clock_ms =
        spec.zero_timing
            ? 0
            : std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    result.records.push_back(std::move(rec));
    if (done) break;
  }

  result.final_accuracy = result.records.back().test_accuracy;
  return result;
}

}  // namespace allsh
