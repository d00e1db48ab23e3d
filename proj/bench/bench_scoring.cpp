// Pool-scoring throughput: serial reference vs OpenMP parallel map.
#include <benchmark/benchmark.h>

#include <random>

#include "allsh/acquisition.hpp"
#include "allsh/synthetic.hpp"

using namespace allsh;

namespace {

struct ScoringSetup {
  std::vector<TokenizedExample> tokenized;
  std::vector<FeatureVector> features;
  CorpusStats stats;
  PoolState pool;
  ModelParams params;
  Strategy strategy;

  explicit ScoringSetup(int n) {
    SyntheticSpec spec;
    spec.num_examples = n;
    spec.vocab_size = 2000;
    spec.tokens_per_doc = 30;
    spec.class_separation = 1.5;
    spec.noise_token_fraction = 0.3;
    tokenized = tokenize_documents(generate_synthetic(spec, 42));
    stats = build_stats(tokenized);
    for (const auto& ex : tokenized) features.push_back(featurize(ex, stats));
    for (int i = 0; i < n; ++i) pool.unlabeled_ids.push_back(i);
    params = ModelParams::zeros(2, stats.vocab.size());
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 0.3);
    for (double& w : params.weights) w = gauss(rng);
    strategy.kind = Strategy::Kind::Allsh;
    strategy.worst_case = true;
    strategy.k = 4;
  }
};

void bm_score_pool_serial(benchmark::State& state) {
  const ScoringSetup setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto scores = score_pool_serial(setup.strategy, setup.params, setup.pool, setup.tokenized,
                                    setup.features, setup.stats, 99);
    benchmark::DoNotOptimize(scores);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_score_pool_openmp(benchmark::State& state) {
  const ScoringSetup setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto scores = score_pool(setup.strategy, setup.params, setup.pool, setup.tokenized,
                             setup.features, setup.stats, 99, 0);
    benchmark::DoNotOptimize(scores);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(bm_score_pool_serial)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_score_pool_openmp)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
