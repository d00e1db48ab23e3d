#pragma once

#include <stdexcept>
#include <string>

namespace allsh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dataset / corpus errors.
struct MalformedLine : Error {
  int line_no;
  explicit MalformedLine(int line, const std::string& what)
      : Error("malformed line " + std::to_string(line) + ": " + what), line_no(line) {}
};
struct LabelOutOfRange : Error {
  int line_no;
  explicit LabelOutOfRange(int line)
      : Error("label out of range at line " + std::to_string(line)), line_no(line) {}
};
struct EmptyText : Error {
  int line_no;
  explicit EmptyText(int line)
      : Error("empty text at line " + std::to_string(line)), line_no(line) {}
};
struct EmptyCorpus : Error {
  EmptyCorpus() : Error("corpus has no documents") {}
};
struct NotBinary : Error {
  NotBinary() : Error("operation requires a binary (2-class) dataset") {}
};
struct FractionOutOfRange : Error {
  explicit FractionOutOfRange(double f)
      : Error("fraction " + std::to_string(f) + " outside (0,1)") {}
};

// Divergence errors.
struct LengthMismatch : Error {
  LengthMismatch() : Error("probability vectors have different lengths") {}
};
struct AlphaSingular : Error {
  AlphaSingular() : Error("alpha-divergence is singular at alpha in {0,1}") {}
};

// Augmentation errors.
struct EmptySentence : Error {
  EmptySentence() : Error("cannot augment an empty sentence") {}
};

// Model errors.
struct DimensionMismatch : Error {
  DimensionMismatch() : Error("feature/parameter dimension mismatch") {}
};
struct EmptyBatch : Error {
  EmptyBatch() : Error("loss over an empty batch") {}
};
struct EmptyLabeledSet : Error {
  EmptyLabeledSet() : Error("training requires a non-empty labeled set") {}
};

// Acquisition / loop errors.
struct EmptyPool : Error {
  EmptyPool() : Error("unlabeled pool is empty") {}
};
struct EmptyList : Error {
  EmptyList() : Error("empty score list") {}
};
struct NotInPool : Error {
  int id;
  explicit NotInPool(int id_) : Error("id " + std::to_string(id_) + " not in unlabeled pool"), id(id_) {}
};
struct EmptyTestSet : Error {
  EmptyTestSet() : Error("evaluation requires a non-empty test set") {}
};
struct BudgetUnreachable : Error {
  BudgetUnreachable() : Error("per-iteration acquisition size is 0 but budget not yet met") {}
};

// CLI errors.
struct ConfigInvalid : Error {
  using Error::Error;
};
struct DatasetError : Error {
  using Error::Error;
};
struct SpecInvalid : Error {
  using Error::Error;
};
struct NoResults : Error {
  NoResults() : Error("no result files found") {}
};

}  // namespace allsh
