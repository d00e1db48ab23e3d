#include "allsh/config.hpp"

#include <filesystem>
#include <fstream>

#include "allsh/errors.hpp"

namespace allsh {

namespace {

class Checker {
 public:
  explicit Checker(const nlohmann::json& doc) : doc_(doc) {}

  void fail(const std::string& field, const std::string& why) {
    problems_.push_back(field + ": " + why);
  }

  template <typename T>
  T get(const nlohmann::json& obj, const std::string& field, T fallback) {
    if (!obj.contains(field)) return fallback;
    try {
      return obj.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(field, "wrong type");
      return fallback;
    }
  }

  void finish() const {
    if (problems_.empty()) return;
    std::string msg = "invalid config:";
    for (const std::string& p : problems_) msg += "\n  - " + p;
    throw ConfigInvalid(msg);
  }

  const nlohmann::json& doc_;
  std::vector<std::string> problems_;
};

DivergenceKind parse_divergence(Checker& ck, const nlohmann::json& obj) {
  const std::string name = ck.get<std::string>(obj, "divergence", "kl");
  if (name == "kl") return DivergenceKind::kl();
  if (name == "jsd") return DivergenceKind::jsd();
  if (name == "alpha") {
    const double alpha = ck.get<double>(obj, "alpha", 0.5);
    if (alpha == 0.0 || alpha == 1.0) {
      ck.fail("strategy.alpha", "alpha-divergence singular at 0 and 1");
      return DivergenceKind::kl();
    }
    return DivergenceKind::alpha_of(alpha);
  }
  ck.fail("strategy.divergence", "unknown kind '" + name + "'");
  return DivergenceKind::kl();
}

Strategy parse_strategy(Checker& ck, const nlohmann::json& obj) {
  Strategy s;
  const std::string kind = ck.get<std::string>(obj, "kind", "allsh");
  if (kind == "random") s.kind = Strategy::Kind::Random;
  else if (kind == "entropy") s.kind = Strategy::Kind::Entropy;
  else if (kind == "allsh") s.kind = Strategy::Kind::Allsh;
  else ck.fail("strategy.kind", "unknown kind '" + kind + "'");

  s.divergence = parse_divergence(ck, obj);
  s.k = ck.get<int>(obj, "K", 4);
  if (s.k < 1) ck.fail("strategy.K", "must be >= 1");
  s.worst_case = ck.get<bool>(obj, "worst_case", false);

  const std::string aug = ck.get<std::string>(obj, "augmentation", "tfidf_replace");
  if (aug == "tfidf_replace") s.policy.kind = AugmentKind::TfIdfReplace;
  else if (aug == "word_dropout") s.policy.kind = AugmentKind::WordDropout;
  else ck.fail("strategy.augmentation", "unknown policy '" + aug + "'");

  s.policy.p_aug = ck.get<double>(obj, "p_aug", 0.3);
  if (!(s.policy.p_aug > 0.0) || s.policy.p_aug > 1.0)
    ck.fail("strategy.p_aug", "must lie in (0,1]");
  s.policy.drop_prob = ck.get<double>(obj, "drop_prob", 0.1);
  if (s.policy.drop_prob < 0.0 || s.policy.drop_prob >= 1.0)
    ck.fail("strategy.drop_prob", "must lie in [0,1)");
  return s;
}

}  // namespace

int ExperimentConfig::num_classes() const {
  if (dataset) return dataset->num_classes;
  if (synthetic) return synthetic->spec.num_classes;
  return 2;
}

SyntheticSpec parse_synthetic_spec(const nlohmann::json& doc) {
  SyntheticSpec spec;
  Checker ck(doc);
  spec.num_examples = ck.get<int>(doc, "num_examples", 0);
  spec.num_classes = ck.get<int>(doc, "num_classes", 2);
  spec.vocab_size = ck.get<int>(doc, "vocab_size", 1000);
  spec.tokens_per_doc = ck.get<int>(doc, "tokens_per_doc", 20);
  spec.class_separation = ck.get<double>(doc, "class_separation", 1.0);
  spec.noise_token_fraction = ck.get<double>(doc, "noise_token_fraction", 0.3);
  ck.finish();
  spec.validate();
  return spec;
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  cfg.snapshot = doc;
  Checker ck(doc);

  if (doc.contains("dataset") == doc.contains("synthetic"))
    ck.fail("dataset", "exactly one of 'dataset' and 'synthetic' is required");

  if (doc.contains("dataset") && doc["dataset"].is_object()) {
    const nlohmann::json& d = doc["dataset"];
    DatasetPaths paths;
    paths.train = ck.get<std::string>(d, "train", "");
    paths.test = ck.get<std::string>(d, "test", "");
    paths.od_test = ck.get<std::string>(d, "od_test", "");
    paths.num_classes = ck.get<int>(d, "num_classes", 2);
    if (paths.num_classes < 2) ck.fail("dataset.num_classes", "must be >= 2");
    for (const auto& [field, path] :
         {std::pair{"dataset.train", paths.train}, std::pair{"dataset.test", paths.test}}) {
      if (path.empty()) ck.fail(field, "required");
      else if (!std::filesystem::exists(path)) ck.fail(field, "file not found: " + path);
    }
    if (!paths.od_test.empty() && !std::filesystem::exists(paths.od_test))
      ck.fail("dataset.od_test", "file not found: " + paths.od_test);
    cfg.dataset = paths;
  }

  if (doc.contains("synthetic") && doc["synthetic"].is_object()) {
    const nlohmann::json& s = doc["synthetic"];
    SyntheticDataConfig sd;
    sd.spec.num_examples = ck.get<int>(s, "num_train", 0);
    sd.spec.num_classes = ck.get<int>(s, "num_classes", 2);
    sd.spec.vocab_size = ck.get<int>(s, "vocab_size", 1000);
    sd.spec.tokens_per_doc = ck.get<int>(s, "tokens_per_doc", 20);
    sd.spec.class_separation = ck.get<double>(s, "class_separation", 1.0);
    sd.spec.noise_token_fraction = ck.get<double>(s, "noise_token_fraction", 0.3);
    sd.num_test = ck.get<int>(s, "num_test", 0);
    sd.data_seed = ck.get<std::uint64_t>(s, "data_seed", 12345);
    try {
      sd.spec.validate();
    } catch (const SpecInvalid& e) {
      ck.fail("synthetic", e.what());
    }
    if (sd.num_test < 1) ck.fail("synthetic.num_test", "must be >= 1");
    cfg.synthetic = sd;
  }

  cfg.strategy = parse_strategy(ck, doc.value("strategy", nlohmann::json::object()));

  const nlohmann::json budget = doc.value("budget", nlohmann::json::object());
  cfg.budget.initial_fraction = ck.get<double>(budget, "initial_fraction", 0.001);
  cfg.budget.per_iteration = ck.get<int>(budget, "per_iteration", 50);
  cfg.budget.total_fraction = ck.get<double>(budget, "total_fraction", 0.01);
  if (!(cfg.budget.initial_fraction > 0.0) || cfg.budget.initial_fraction >= 1.0)
    ck.fail("budget.initial_fraction", "must lie in (0,1)");
  if (!(cfg.budget.total_fraction > 0.0) || cfg.budget.total_fraction > 1.0)
    ck.fail("budget.total_fraction", "must lie in (0,1]");
  if (cfg.budget.per_iteration < 0) ck.fail("budget.per_iteration", "must be >= 0");

  const nlohmann::json train = doc.value("train", nlohmann::json::object());
  cfg.train.learning_rate = ck.get<double>(train, "learning_rate", 0.1);
  cfg.train.iterations = ck.get<int>(train, "iterations", 200);
  cfg.train.batch_size = ck.get<int>(train, "batch_size", 16);
  cfg.train.ssl_alpha = ck.get<double>(train, "ssl_alpha", 0.01);
  if (!(cfg.train.learning_rate > 0.0)) ck.fail("train.learning_rate", "must be > 0");
  if (cfg.train.iterations < 1) ck.fail("train.iterations", "must be >= 1");
  if (cfg.train.batch_size < 1) ck.fail("train.batch_size", "must be >= 1");
  if (cfg.train.ssl_alpha < 0.0) ck.fail("train.ssl_alpha", "must be >= 0");

  cfg.curriculum = ck.get<bool>(doc, "curriculum", false);

  if (doc.contains("imbalance") && doc["imbalance"].is_object()) {
    const nlohmann::json& im = doc["imbalance"];
    ImbalanceRates rates;
    rates.positive_rate = ck.get<double>(im, "positive_rate", 1.0);
    rates.negative_rate = ck.get<double>(im, "negative_rate", 1.0);
    for (const auto& [field, r] : {std::pair{"imbalance.positive_rate", rates.positive_rate},
                                   std::pair{"imbalance.negative_rate", rates.negative_rate}}) {
      if (!(r > 0.0) || r > 1.0) ck.fail(field, "must lie in (0,1]");
    }
    if (cfg.num_classes() != 2) ck.fail("imbalance", "requires a binary dataset");
    cfg.imbalance = rates;
  }

  cfg.seeds = ck.get<std::vector<std::uint64_t>>(doc, "seeds", {});
  if (cfg.seeds.empty()) ck.fail("seeds", "at least one seed is required");
  cfg.output_dir = ck.get<std::string>(doc, "output_dir", "out");
  cfg.threads = ck.get<int>(doc, "threads", 0);
  cfg.zero_timing = ck.get<bool>(doc, "zero_timing", false);

  ck.finish();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigInvalid("config is not valid JSON: " + path);
  return parse_config(doc);
}

Strategy strategy_from_name(const std::string& name, const Strategy& base) {
  Strategy s = base;
  if (name == "random") {
    s.kind = Strategy::Kind::Random;
  } else if (name == "entropy") {
    s.kind = Strategy::Kind::Entropy;
  } else if (name == "allsh") {
    s.kind = Strategy::Kind::Allsh;
    s.worst_case = false;
  } else if (name == "allsh_wca") {
    s.kind = Strategy::Kind::Allsh;
    s.worst_case = true;
  } else {
    throw ConfigInvalid("unknown strategy name: " + name);
  }
  return s;
}

ExperimentSpec make_experiment_spec(const ExperimentConfig& config) {
  ExperimentSpec spec;
  if (config.dataset) {
    spec.num_classes = config.dataset->num_classes;
    spec.train_docs = load_jsonl(config.dataset->train, spec.num_classes);
    spec.test_docs = load_jsonl(config.dataset->test, spec.num_classes);
    if (!config.dataset->od_test.empty())
      spec.od_test_docs = load_jsonl(config.dataset->od_test, spec.num_classes);
  } else {
    const SyntheticDataConfig& sd = *config.synthetic;
    spec.num_classes = sd.spec.num_classes;
    spec.train_docs = generate_synthetic(sd.spec, derive_seed(sd.data_seed, 0xA));
    SyntheticSpec test_spec = sd.spec;
    test_spec.num_examples = sd.num_test;
    spec.test_docs = generate_synthetic(test_spec, derive_seed(sd.data_seed, 0xB));
  }
  spec.strategy = config.strategy;
  spec.budget = config.budget;
  spec.train = config.train;
  spec.curriculum = config.curriculum;
  spec.imbalance = config.imbalance;
  spec.threads = config.threads;
  spec.zero_timing = config.zero_timing;
  return spec;
}

}  // namespace allsh
