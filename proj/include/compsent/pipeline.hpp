#pragma once

// Glue from labeled sentences to trained classifiers: preparation
// (tokenize, locate, partition, replace, scope), feature-space fitting on
// training data only, model training and a serializable fitted bundle.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compsent/corpus.hpp"
#include "compsent/eval.hpp"
#include "compsent/features.hpp"
#include "compsent/models.hpp"
#include "compsent/preprocess.hpp"
#include "compsent/rules.hpp"

namespace compsent {

struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FeatureKind { Bow, Ngrams, PosNgrams, Jjr, AvgEmbedding, DepPath };

struct FeatureSpec {
  std::vector<FeatureKind> kinds = {FeatureKind::Bow};
  Weighting weighting = Weighting::Binary;
  int ngram_lo = 1, ngram_hi = 3;  // token n-gram orders for Ngrams
  long min_df = 1;
  std::size_t pos_capacity = 500;
  std::size_t hash_dim = 4096;
  DepPathMode dep_mode = DepPathMode::Customized;
  std::string embedding_path;  // required with AvgEmbedding
};

enum class ModelKind { Gbdt, Logreg, NaiveBayes, Majority, Rule };

struct PipelineSpec {
  Scope scope = Scope::Middle();
  ReplacementStrategy replacement = ReplacementStrategy::Distinct;
  FeatureSpec features;
  ModelKind model = ModelKind::Gbdt;
  TrainConfig train;
  double logreg_l2 = 1e-4;
  int logreg_iterations = 200;
  double nb_alpha = 1.0;
  std::string lexicon_path;  // required with ModelKind::Rule
  Parallelism parallelism = Parallelism::OpenMP;
};

// Tokenized sentence with located targets; label is reoriented to the
// first-mentioned item when the targets occur in reverse order.
struct PreparedSentence {
  Tokens tokens;
  TargetSpans spans;
  bool swapped = false;
  bool locatable = false;
  Label label = Label::None;
  std::vector<std::string> scope_tokens;
  std::vector<std::string> scope_tags;
  DependencyPath dep_path;  // NOPATH unless the record carries a parse
};

PreparedSentence prepare_sentence(const LabeledSentence& s,
                                  const PipelineSpec& spec);

struct PrepDiagnostics {
  long total = 0;
  long unlocatable = 0;
  std::vector<std::string> skipped_ids;
};

// Sentences whose targets cannot both be located are dropped from
// training and evaluation; the diagnostics record them.
Dataset filter_locatable(const Dataset& ds, PrepDiagnostics* diag = nullptr);

class Pipeline {
 public:
  PipelineSpec spec;
  Vocabulary vocab;
  PosNgramSpace pos_space;
  EmbeddingTable embeddings;
  std::string embedding_source;  // verbatim copy kept for the bundle
  CueLexicon lexicon;
  std::unique_ptr<Model> model;

  static Pipeline fit(const PipelineSpec& spec, const Dataset& train);

  SparseVector features_of(const PreparedSentence& p) const;
  Prediction predict_one(const LabeledSentence& s) const;
  std::vector<Label> predict(const Dataset& ds) const;

  void save(std::ostream& out) const;
  void save_file(const std::string& path) const;
  static Pipeline load(std::istream& in);
  static Pipeline load_file(const std::string& path);
};

// Adapter for the evaluation harness: fits on the first dataset
// (feature spaces included), predicts the second.
FitPredict make_fit_predict(const PipelineSpec& spec);

// Name <-> value plumbing shared by the config reader and the bundle
// format. The *_from_string functions return nullopt on unknown names.
const char* feature_kind_name(FeatureKind k);
const char* model_kind_name(ModelKind k);
const char* replacement_name(ReplacementStrategy r);
const char* weighting_name(Weighting w);
const char* dep_mode_name(DepPathMode m);
std::string scope_to_string(const Scope& s);
std::optional<FeatureKind> feature_kind_from_string(const std::string& s);
std::optional<ModelKind> model_kind_from_string(const std::string& s);
std::optional<ReplacementStrategy> replacement_from_string(const std::string& s);
std::optional<Weighting> weighting_from_string(const std::string& s);
std::optional<DepPathMode> dep_mode_from_string(const std::string& s);
std::optional<Scope> scope_from_string(const std::string& s);

}  // namespace compsent
