#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "allsh/acquisition.hpp"
#include "allsh/errors.hpp"
#include "allsh/synthetic.hpp"
#include "oracles.hpp"

using namespace allsh;

namespace {

struct Fixture {
  std::vector<TokenizedExample> tokenized;
  std::vector<FeatureVector> features;
  CorpusStats stats;
  PoolState pool;
  ModelParams params;

  explicit Fixture(int n, bool trained = true) {
    SyntheticSpec spec;
    spec.num_examples = n;
    spec.vocab_size = 60;
    spec.tokens_per_doc = 8;
    spec.class_separation = 3.0;
    spec.noise_token_fraction = 0.2;
    const auto docs = generate_synthetic(spec, 99);
    tokenized = tokenize_documents(docs);
    stats = build_stats(tokenized);
    for (const auto& ex : tokenized) features.push_back(featurize(ex, stats));
    for (int i = 0; i < n; ++i) pool.unlabeled_ids.push_back(i);
    params = ModelParams::zeros(2, stats.vocab.size());
    if (trained) {
      std::mt19937_64 rng(5);
      std::normal_distribution<double> gauss(0.0, 0.5);
      for (double& w : params.weights) w = gauss(rng);
    }
  }

  Strategy allsh_strategy(bool worst_case, int k = 4) const {
    Strategy s;
    s.kind = Strategy::Kind::Allsh;
    s.worst_case = worst_case;
    s.k = k;
    s.policy = {AugmentKind::TfIdfReplace, 0.3, 0.1};
    return s;
  }
};

}  // namespace

TEST_CASE("lmax_score") {
  CHECK(lmax_score({0.0}) == 0.0);
  CHECK(lmax_score({0.2, 0.7, 0.4}) == 0.7);
  CHECK_THROWS_AS(lmax_score({}), EmptyList);
}

TEST_CASE("select_top") {
  auto mk = [](int id, double s) { return AcquisitionScore{id, s, {}}; };
  SUBCASE("largest scores first") {
    const auto ids = select_top({mk(0, 0.9), mk(1, 0.1), mk(2, 0.5)}, 2);
    CHECK(ids == std::vector<int>{0, 2});
  }
  SUBCASE("ties broken by ascending id") {
    const auto ids = select_top({mk(9, 1.0), mk(3, 1.0), mk(5, 1.0), mk(1, 1.0)}, 3);
    CHECK(ids == std::vector<int>{1, 3, 5});
  }
  SUBCASE("clips to pool size") {
    const auto ids = select_top({mk(2, 0.3), mk(0, 0.8)}, 10);
    CHECK(ids == std::vector<int>{0, 2});
  }
  SUBCASE("matches a full-sort oracle on random lists") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
      const int n = 1 + static_cast<int>(rng() % 20);
      std::vector<AcquisitionScore> scores;
      for (int i = 0; i < n; ++i)
        scores.push_back(mk(i, rng() % 4 == 0 ? 0.5 : unit(rng)));  // force ties
      const int s_acq = 1 + static_cast<int>(rng() % 8);

      std::vector<std::pair<double, int>> ref;
      for (const auto& sc : scores) ref.emplace_back(-sc.score, sc.example_id);
      std::sort(ref.begin(), ref.end());
      std::vector<int> want;
      for (int i = 0; i < std::min<int>(s_acq, n); ++i) want.push_back(ref[i].second);

      CHECK(select_top(scores, s_acq) == want);
    }
  }
}

TEST_CASE("uniform predictor degenerates as specified") {
  Fixture f(40, /*trained=*/false);

  SUBCASE("allsh scores are all zero, selection falls to the tie rule") {
    const auto scores = score_pool(f.allsh_strategy(true), f.params, f.pool, f.tokenized,
                                   f.features, f.stats, 7);
    for (const auto& s : scores) CHECK(s.score <= 1e-12);
    CHECK(select_top(scores, 5) == std::vector<int>{0, 1, 2, 3, 4});
  }
  SUBCASE("entropy scores equal ln(num_classes)") {
    Strategy s;
    s.kind = Strategy::Kind::Entropy;
    const auto scores = score_pool(s, f.params, f.pool, f.tokenized, f.features, f.stats, 7);
    for (const auto& sc : scores)
      CHECK(sc.score == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("worst_case takes the per-copy maximum") {
  Fixture f(30);
  const auto scores = score_pool(f.allsh_strategy(true), f.params, f.pool, f.tokenized,
                                 f.features, f.stats, 13);
  for (const auto& s : scores) {
    REQUIRE(s.per_copy.size() == 4);
    CHECK(s.score == *std::max_element(s.per_copy.begin(), s.per_copy.end()));
  }
}

TEST_CASE("plain allsh scores copy 0") {
  Fixture f(30);
  const auto scores = score_pool(f.allsh_strategy(false), f.params, f.pool, f.tokenized,
                                 f.features, f.stats, 13);
  for (const auto& s : scores) CHECK(s.score == s.per_copy.front());
}

TEST_CASE("allsh scores match a brute-force recomputation") {
  Fixture f(50);
  const auto strategy = f.allsh_strategy(true);
  const auto scores = score_pool(strategy, f.params, f.pool, f.tokenized, f.features, f.stats, 21);
  const Augmenter augmenter(f.stats, strategy.policy);
  for (const auto& s : scores) {
    const auto& ex = f.tokenized[static_cast<std::size_t>(s.example_id)];
    const auto set = augmenter.generate_k(ex, strategy.k, 21);
    const auto p = predict_proba(f.params, f.features[static_cast<std::size_t>(s.example_id)]);
    double best = -1.0;
    for (const auto& copy : set.copies) {
      const auto q = predict_proba(f.params, featurize(copy, f.stats));
      double d = 0.0;  // literal KL over the clamped distributions
      for (std::size_t c = 0; c < p.size(); ++c) d += p[c] * std::log(p[c] / q[c]);
      best = std::max(best, d < 0.0 ? 0.0 : d);
    }
    CHECK(std::abs(s.score - best) <= 1e-12);
  }
}

TEST_CASE("lmax score is monotone in K over nested copy sets") {
  Fixture f(60);
  std::vector<std::vector<AcquisitionScore>> by_k;
  for (int k : {1, 2, 4, 8})
    by_k.push_back(score_pool(f.allsh_strategy(true, k), f.params, f.pool, f.tokenized,
                              f.features, f.stats, 33));
  for (std::size_t step = 1; step < by_k.size(); ++step)
    for (std::size_t i = 0; i < by_k[step].size(); ++i)
      CHECK(by_k[step][i].score >= by_k[step - 1][i].score - 1e-15);
}

TEST_CASE("parallel scoring equals the serial reference") {
  Fixture f(80);
  for (const Strategy& strategy :
       {f.allsh_strategy(true), f.allsh_strategy(false),
        Strategy{Strategy::Kind::Random, DivergenceKind::kl(), {}, 1, false},
        Strategy{Strategy::Kind::Entropy, DivergenceKind::kl(), {}, 1, false}}) {
    const auto serial =
        score_pool_serial(strategy, f.params, f.pool, f.tokenized, f.features, f.stats, 55);
    for (int threads : {1, 4, 8}) {
      const auto par = score_pool(strategy, f.params, f.pool, f.tokenized, f.features, f.stats,
                                  55, threads);
      REQUIRE(par.size() == serial.size());
      for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].example_id == serial[i].example_id);
        CHECK(par[i].score == serial[i].score);
        CHECK(par[i].per_copy == serial[i].per_copy);
      }
    }
  }
}

TEST_CASE("scoring covers every unlabeled id and mutates nothing") {
  Fixture f(40);
  // Make the pool a strict subset.
  f.pool.labeled_ids = {0, 5};
  f.pool.unlabeled_ids.clear();
  for (int i = 0; i < 40; ++i)
    if (i != 0 && i != 5) f.pool.unlabeled_ids.push_back(i);
  const auto pool_before = f.pool.unlabeled_ids;
  const auto weights_before = f.params.weights;

  const auto scores = score_pool(f.allsh_strategy(true), f.params, f.pool, f.tokenized,
                                 f.features, f.stats, 3);
  REQUIRE(scores.size() == pool_before.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    CHECK(scores[i].example_id == pool_before[i]);
    CHECK(std::isfinite(scores[i].score));
  }
  CHECK(f.pool.unlabeled_ids == pool_before);
  CHECK(f.params.weights == weights_before);
}

TEST_CASE("empty pool rejected") {
  Fixture f(10);
  f.pool.unlabeled_ids.clear();
  f.pool.labeled_ids = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  CHECK_THROWS_AS(
      score_pool(f.allsh_strategy(true), f.params, f.pool, f.tokenized, f.features, f.stats, 1),
      EmptyPool);
}
