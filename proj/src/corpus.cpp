#include "allsh/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "allsh/errors.hpp"
#include "allsh/rng.hpp"

namespace allsh {

std::vector<Document> load_jsonl(const std::string& path, int num_classes) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset file: " + path);
  std::vector<Document> docs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) throw MalformedLine(line_no, "blank line");
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object() || !obj.contains("text") ||
        !obj.contains("label") || !obj["text"].is_string() ||
        !obj["label"].is_number_integer()) {
      throw MalformedLine(line_no, "expected {\"text\": string, \"label\": int}");
    }
    Document doc;
    doc.id = line_no - 1;
    doc.text = obj["text"].get<std::string>();
    doc.label = obj["label"].get<int>();
    if (doc.label < 0 || doc.label >= num_classes) throw LabelOutOfRange(line_no);
    if (doc.text.empty()) throw EmptyText(line_no);
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<TokenizedExample> tokenize_documents(const std::vector<Document>& docs) {
  std::vector<TokenizedExample> out;
  out.reserve(docs.size());
  for (const Document& d : docs) {
    TokenizedExample ex{d.id, tokenize(d.text), d.label};
    if (ex.tokens.empty()) throw EmptyText(d.id + 1);
    out.push_back(std::move(ex));
  }
  return out;
}

CorpusStats build_stats(const std::vector<TokenizedExample>& docs) {
  if (docs.empty()) throw EmptyCorpus();
  CorpusStats stats;
  Vocabulary& vocab = stats.vocab;
  vocab.num_docs = static_cast<int>(docs.size());

  std::vector<std::int64_t> total_count;
  std::int64_t total_tokens = 0;
  for (const TokenizedExample& ex : docs) {
    std::unordered_set<int> seen;
    for (const std::string& tok : ex.tokens) {
      int idx = vocab.lookup(tok);
      if (idx < 0) {
        idx = vocab.size();
        vocab.index.emplace(tok, idx);
        vocab.tokens.push_back(tok);
        vocab.df.push_back(0);
        total_count.push_back(0);
      }
      ++total_count[idx];
      ++total_tokens;
      seen.insert(idx);
    }
    for (int idx : seen) ++vocab.df[idx];
  }

  const double n = static_cast<double>(vocab.num_docs);
  stats.idf.resize(vocab.size());
  stats.corpus_score.resize(vocab.size());
  for (int i = 0; i < vocab.size(); ++i) {
    stats.idf[i] = std::log((n + 1.0) / (vocab.df[i] + 1.0)) + 1.0;
    stats.corpus_score[i] =
        static_cast<double>(total_count[i]) / static_cast<double>(total_tokens) * stats.idf[i];
    stats.max_corpus_score = std::max(stats.max_corpus_score, stats.corpus_score[i]);
  }
  return stats;
}

FeatureVector featurize(const TokenizedExample& ex, const CorpusStats& stats) {
  std::unordered_map<int, int> counts;
  for (const std::string& tok : ex.tokens) {
    int idx = stats.vocab.lookup(tok);
    if (idx >= 0) ++counts[idx];  // OOV tokens dropped
  }
  FeatureVector fv;
  fv.weights.reserve(counts.size());
  const double len = static_cast<double>(ex.tokens.size());
  for (const auto& [idx, cnt] : counts)
    fv.weights.emplace_back(idx, static_cast<double>(cnt) / len * stats.idf[idx]);
  std::sort(fv.weights.begin(), fv.weights.end());

  double norm_sq = 0.0;
  for (const auto& [idx, w] : fv.weights) norm_sq += w * w;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& [idx, w] : fv.weights) w *= inv;
  }
  return fv;
}

std::vector<Document> subsample_imbalanced(const std::vector<Document>& docs,
                                           double positive_rate, double negative_rate,
                                           std::uint64_t seed) {
  for (const Document& d : docs)
    if (d.label > 1) throw NotBinary();
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Document> kept;
  for (const Document& d : docs) {
    const double rate = d.label == 1 ? positive_rate : negative_rate;
    const double u = unit(rng);
    if (rate >= 1.0 || u < rate) kept.push_back(d);
  }
  return kept;
}

PoolState initial_seed_split(const std::vector<Document>& docs, double fraction,
                             std::uint64_t seed) {
  if (!(fraction > 0.0) || !(fraction < 1.0)) throw FractionOutOfRange(fraction);
  const std::size_t n = docs.size();
  const std::size_t k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));

  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = docs[i].id;

  // Partial Fisher-Yates: the first k slots become the seed set.
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(ids[i], ids[pick(rng)]);
  }

  PoolState pool;
  pool.labeled_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
  pool.unlabeled_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end());
  std::sort(pool.unlabeled_ids.begin(), pool.unlabeled_ids.end());
  pool.initial_size = k;
  return pool;
}

void check_pool_partition(const PoolState& pool, std::size_t n) {
  std::vector<char> seen(n, 0);
  auto mark = [&](int id) {
    if (id < 0 || static_cast<std::size_t>(id) >= n || seen[static_cast<std::size_t>(id)])
      throw Error("pool partition invariant violated at id " + std::to_string(id));
    seen[static_cast<std::size_t>(id)] = 1;
  };
  for (int id : pool.labeled_ids) mark(id);
  for (int id : pool.unlabeled_ids) mark(id);
  if (pool.labeled_ids.size() + pool.unlabeled_ids.size() != n)
    throw Error("pool partition does not cover the id universe");
}

}  // namespace allsh
