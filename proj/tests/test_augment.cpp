#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "allsh/augment.hpp"
#include "allsh/errors.hpp"

using namespace allsh;

namespace {

// Hand-built stats: three tokens with idf picked so the sentence (a b c)
// has TF-IDF scores (2, 1, 1).
CorpusStats fabricated_stats() {
  CorpusStats stats;
  stats.vocab.index = {{"a", 0}, {"b", 1}, {"c", 2}};
  stats.vocab.tokens = {"a", "b", "c"};
  stats.vocab.df = {1, 2, 2};
  stats.vocab.num_docs = 3;
  stats.idf = {6.0, 3.0, 3.0};
  stats.corpus_score = {0.2, 0.5, 0.3};
  stats.max_corpus_score = 0.5;
  return stats;
}

}  // namespace

TEST_CASE("replacement probabilities follow the printed formula") {
  const auto stats = fabricated_stats();
  const TokenizedExample ex{0, {"a", "b", "c"}, 0};
  // scores (2,1,1): C=2, Z=4/3, r = (0, 0.225, 0.225) at p_aug=0.3.
  const auto probs = tfidf_replace_probs(ex, stats, 0.3);
  REQUIRE(probs.size() == 3);
  CHECK(probs[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(0.225).epsilon(1e-12));
  CHECK(probs[2] == doctest::Approx(0.225).epsilon(1e-12));
}

TEST_CASE("max-score token is never replaced") {
  const auto stats = fabricated_stats();
  const TokenizedExample ex{0, {"a", "b", "c"}, 0};
  const ReplacementSampler sampler(stats);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto copy = tfidf_replace(ex, stats, sampler, 0.9, seed);
    CHECK(copy.tokens[0] == "a");
  }
}

TEST_CASE("empirical replacement frequency tracks r_i") {
  const auto stats = fabricated_stats();
  const TokenizedExample ex{0, {"a", "b", "c"}, 0};
  const ReplacementSampler sampler(stats);
  const auto probs = tfidf_replace_probs(ex, stats, 0.3);
  std::vector<int> replaced(3, 0);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const auto copy = tfidf_replace(ex, stats, sampler, 0.3, static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < 3; ++i)
      if (copy.tokens[i] != ex.tokens[i]) ++replaced[i];
  }
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(replaced[i] / double(trials) - probs[i]) <= 0.02);
}

TEST_CASE("degenerate all-zero scores leave the copy untouched") {
  auto stats = fabricated_stats();
  const TokenizedExample ex{0, {"zz", "qq"}, 0};  // all OOV: every score is 0
  CHECK(tfidf_replace_probs(ex, stats, 0.3).empty());
  CHECK(tfidf_replace(ex, stats, 0.3, 5).tokens == ex.tokens);
}

TEST_CASE("empty sentence rejected") {
  const auto stats = fabricated_stats();
  CHECK_THROWS_AS(tfidf_replace(TokenizedExample{0, {}, 0}, stats, 0.3, 1), EmptySentence);
  CHECK_THROWS_AS(word_dropout(TokenizedExample{0, {}, 0}, 0.5, 1), EmptySentence);
}

TEST_CASE("replacement stays inside the vocabulary") {
  const auto stats = fabricated_stats();
  const ReplacementSampler sampler(stats);
  const TokenizedExample ex{0, {"a", "b", "c", "b", "c"}, 0};
  std::unordered_set<std::string> allowed(stats.vocab.tokens.begin(), stats.vocab.tokens.end());
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto copy = tfidf_replace(ex, stats, sampler, 0.9, seed);
    REQUIRE(copy.tokens.size() == ex.tokens.size());
    for (const auto& tok : copy.tokens) CHECK(allowed.count(tok) == 1);
  }
}

TEST_CASE("word_dropout") {
  SUBCASE("drop_prob 0 is the identity") {
    const TokenizedExample ex{3, {"x", "y", "z"}, 1};
    const auto copy = word_dropout(ex, 0.0, 99);
    CHECK(copy.tokens == ex.tokens);
    CHECK(copy.id == 3);
    CHECK(copy.label == 1);
  }
  SUBCASE("single-token sentence survives aggressive dropout") {
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      CHECK(word_dropout({0, {"only"}, 0}, 0.9, seed).tokens.size() == 1);
  }
  SUBCASE("deleted count is binomially plausible") {
    TokenizedExample ex{0, {}, 0};
    for (int i = 0; i < 1000; ++i) ex.tokens.push_back("t" + std::to_string(i));
    const auto copy = word_dropout(ex, 0.1, 31);
    const auto deleted = ex.tokens.size() - copy.tokens.size();
    CHECK(deleted >= 70);
    CHECK(deleted <= 130);
  }
}

TEST_CASE("generate_k") {
  const auto stats = fabricated_stats();
  const Augmenter augmenter(stats, AugmentationPolicy{AugmentKind::TfIdfReplace, 0.5, 0.1});
  const TokenizedExample ex{7, {"a", "b", "c"}, 0};

  SUBCASE("K=1 yields a single copy") {
    CHECK(augmenter.generate_k(ex, 1, 5).copies.size() == 1);
  }
  SUBCASE("same (seed, id) twice is byte-identical") {
    const auto s1 = augmenter.generate_k(ex, 4, 123);
    const auto s2 = augmenter.generate_k(ex, 4, 123);
    REQUIRE(s1.copies.size() == s2.copies.size());
    CHECK(s1.copy_seeds == s2.copy_seeds);
    for (std::size_t i = 0; i < s1.copies.size(); ++i)
      CHECK(s1.copies[i].tokens == s2.copies[i].tokens);
  }
  SUBCASE("copy seeds are nested across K") {
    const auto small = augmenter.generate_k(ex, 2, 123);
    const auto big = augmenter.generate_k(ex, 6, 123);
    for (std::size_t i = 0; i < small.copies.size(); ++i) {
      CHECK(small.copy_seeds[i] == big.copy_seeds[i]);
      CHECK(small.copies[i].tokens == big.copies[i].tokens);
    }
  }
  SUBCASE("each copy is reproducible from its recorded seed") {
    const auto set = augmenter.generate_k(ex, 3, 77);
    for (std::size_t i = 0; i < set.copies.size(); ++i)
      CHECK(augmenter.apply(ex, set.copy_seeds[i]).tokens == set.copies[i].tokens);
  }
}
