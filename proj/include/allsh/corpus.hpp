#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace allsh {

struct Document {
  int id = 0;
  std::string text;
  int label = 0;
};

struct TokenizedExample {
  int id = 0;
  std::vector<std::string> tokens;
  int label = 0;
};

struct Vocabulary {
  std::unordered_map<std::string, int> index;  // token -> dense index
  std::vector<std::string> tokens;             // index -> token
  std::vector<int> df;                         // document frequency per index
  int num_docs = 0;

  int size() const { return static_cast<int>(tokens.size()); }
  // -1 for out-of-vocabulary tokens.
  int lookup(const std::string& tok) const {
    auto it = index.find(tok);
    return it == index.end() ? -1 : it->second;
  }
};

struct CorpusStats {
  Vocabulary vocab;
  std::vector<double> idf;           // ln((N+1)/(df+1)) + 1
  std::vector<double> corpus_score;  // total_count/total_tokens * idf
  double max_corpus_score = 0.0;
};

// Sparse TF-IDF vector, entries sorted by token index, L2-normalized
// (all-OOV documents keep an empty, zero-norm vector).
struct FeatureVector {
  std::vector<std::pair<int, double>> weights;
};

struct PoolState {
  std::vector<int> labeled_ids;    // insertion-ordered
  std::vector<int> unlabeled_ids;  // ascending ids
  std::size_t initial_size = 0;

  std::size_t budget_spent() const { return labeled_ids.size() - initial_size; }
};

std::vector<Document> load_jsonl(const std::string& path, int num_classes);

std::vector<std::string> tokenize(const std::string& text);

// Tokenizes every document; documents whose token list comes out empty are
// rejected (EmptyText carrying the document id + 1 as its line number).
std::vector<TokenizedExample> tokenize_documents(const std::vector<Document>& docs);

CorpusStats build_stats(const std::vector<TokenizedExample>& docs);

FeatureVector featurize(const TokenizedExample& ex, const CorpusStats& stats);

std::vector<Document> subsample_imbalanced(const std::vector<Document>& docs,
                                           double positive_rate, double negative_rate,
                                           std::uint64_t seed);

PoolState initial_seed_split(const std::vector<Document>& docs, double fraction,
                             std::uint64_t seed);

// Checks the labeled/unlabeled partition invariant against the id universe
// 0..n-1; throws on violation.
void check_pool_partition(const PoolState& pool, std::size_t n);

}  // namespace allsh
