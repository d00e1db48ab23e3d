#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "allsh/corpus.hpp"

namespace allsh {

struct SyntheticSpec {
  int num_examples = 0;
  int num_classes = 2;
  int vocab_size = 1000;
  int tokens_per_doc = 20;
  double class_separation = 1.0;       // >= 0; 0 means no class signal
  double noise_token_fraction = 0.3;   // in [0,1]

  void validate() const;  // throws SpecInvalid listing violations
};

// Each class owns a disjoint block of signal tokens; a shared noise block
// takes the remainder of the vocabulary. A token is drawn from the noise
// block with probability noise_token_fraction, otherwise from the document's
// own class block with probability sep/(1+sep) and from a uniformly random
// class block with the remaining mass. Labels are balanced round-robin.
std::vector<Document> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

void write_jsonl(const std::vector<Document>& docs, const std::string& path);

}  // namespace allsh
