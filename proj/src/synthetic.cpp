#include "allsh/synthetic.hpp"

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "allsh/errors.hpp"
#include "allsh/rng.hpp"

namespace allsh {

void SyntheticSpec::validate() const {
  std::string problems;
  auto bad = [&](const std::string& msg) { problems += (problems.empty() ? "" : "; ") + msg; };
  if (num_examples < 1) bad("num_examples must be >= 1");
  if (num_classes < 2) bad("num_classes must be >= 2");
  if (vocab_size < 2 * num_classes) bad("vocab_size too small for per-class signal blocks");
  if (tokens_per_doc < 1) bad("tokens_per_doc must be >= 1");
  if (class_separation < 0.0) bad("class_separation must be >= 0");
  if (noise_token_fraction < 0.0 || noise_token_fraction > 1.0)
    bad("noise_token_fraction must be in [0,1]");
  if (!problems.empty()) throw SpecInvalid(problems);
}

std::vector<Document> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.validate();
  const int signal_per_class = spec.vocab_size / (spec.num_classes + 1);
  const int noise_start = signal_per_class * spec.num_classes;
  const int noise_size = spec.vocab_size - noise_start;
  const double own_prob = spec.class_separation / (1.0 + spec.class_separation);

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick_class(0, spec.num_classes - 1);
  std::uniform_int_distribution<int> pick_signal(0, signal_per_class - 1);
  std::uniform_int_distribution<int> pick_noise(0, noise_size - 1);

  std::vector<Document> docs;
  docs.reserve(static_cast<std::size_t>(spec.num_examples));
  for (int i = 0; i < spec.num_examples; ++i) {
    const int label = i % spec.num_classes;
    std::string text;
    for (int t = 0; t < spec.tokens_per_doc; ++t) {
      int token_id;
      if (unit(rng) < spec.noise_token_fraction) {
        token_id = noise_start + pick_noise(rng);
      } else {
        const int block = unit(rng) < own_prob ? label : pick_class(rng);
        token_id = block * signal_per_class + pick_signal(rng);
      }
      if (t > 0) text += ' ';
      text += 'w' + std::to_string(token_id);
    }
    docs.push_back(Document{i, std::move(text), label});
  }
  return docs;
}

void write_jsonl(const std::vector<Document>& docs, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) throw DatasetError("cannot write: " + path);
  for (const Document& d : docs) {
    nlohmann::json obj;
    obj["text"] = d.text;
    obj["label"] = d.label;
    out << obj.dump() << "\n";
  }
}

}  // namespace allsh
