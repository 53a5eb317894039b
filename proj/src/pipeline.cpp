#include "compsent/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "model_io.hpp"

namespace compsent {

namespace {

Label flip_direction(Label l) {
  if (l == Label::Better) return Label::Worse;
  if (l == Label::Worse) return Label::Better;
  return Label::None;
}

bool wants(const FeatureSpec& f, FeatureKind k) {
  return std::find(f.kinds.begin(), f.kinds.end(), k) != f.kinds.end();
}

std::vector<std::string> slice(const std::vector<std::string>& xs, int begin,
                               int end) {  // [begin, end)
  return {xs.begin() + begin, xs.begin() + end};
}

void append(std::vector<std::string>& out, const std::vector<std::string>& xs) {
  out.insert(out.end(), xs.begin(), xs.end());
}

std::vector<std::string> surfaces(const Tokens& toks) {
  std::vector<std::string> out;
  out.reserve(toks.size());
  for (const auto& t : toks) out.push_back(t.surface);
  return out;
}

}  // namespace

PreparedSentence prepare_sentence(const LabeledSentence& s,
                                  const PipelineSpec& spec) {
  PreparedSentence p;
  p.tokens = tokenize(s.text);
  p.label = s.label;
  LocatedTargets loc;
  try {
    loc = locate_targets(p.tokens, s.object_a, s.object_b);
  } catch (const TargetsNotFound&) {
    return p;
  } catch (const OverlapError&) {
    return p;
  }
  p.spans = loc.spans;
  p.swapped = loc.swapped;
  p.locatable = true;
  if (p.swapped) p.label = flip_direction(p.label);

  std::vector<std::string> tags =
      s.pos.size() == p.tokens.size() ? s.pos : pos_tag(p.tokens);

  SentenceParts parts =
      apply_replacement(partition(p.tokens, p.spans), spec.replacement);
  int n = static_cast<int>(p.tokens.size());
  std::vector<std::string> tg_beginning = slice(tags, 0, p.spans.first.begin);
  std::vector<std::string> tg_middle =
      slice(tags, p.spans.first.end + 1, p.spans.second.begin);
  std::vector<std::string> tg_ending = slice(tags, p.spans.second.end + 1, n);
  std::vector<std::string> tg_first, tg_second;
  switch (spec.replacement) {
    case ReplacementStrategy::Keep:
      tg_first = slice(tags, p.spans.first.begin, p.spans.first.end + 1);
      tg_second = slice(tags, p.spans.second.begin, p.spans.second.end + 1);
      break;
    case ReplacementStrategy::Remove:
      break;
    case ReplacementStrategy::Oblivious:
    case ReplacementStrategy::Distinct:
      tg_first = {"NNP"};  // replacement markers read as proper nouns
      tg_second = {"NNP"};
      break;
  }

  p.scope_tokens = surfaces(select_scope(parts, spec.scope));
  if (spec.scope.full) {
    append(p.scope_tags, tg_beginning);
    append(p.scope_tags, tg_first);
    append(p.scope_tags, tg_middle);
    append(p.scope_tags, tg_second);
    append(p.scope_tags, tg_ending);
  } else {
    if (spec.scope.beginning) append(p.scope_tags, tg_beginning);
    if (spec.scope.middle) append(p.scope_tags, tg_middle);
    if (spec.scope.ending) append(p.scope_tags, tg_ending);
  }

  if (wants(spec.features, FeatureKind::DepPath) && !s.conll.empty()) {
    DependencyGraph graph = parse_conll(s.conll);
    if (graph.tokens.size() == p.tokens.size()) {
      PathSpans ps{p.spans.first.begin, p.spans.first.end,
                   p.spans.second.begin, p.spans.second.end};
      p.dep_path = extract_dependency_path(graph, ps, spec.features.dep_mode);
    }
  }
  return p;
}

Dataset filter_locatable(const Dataset& ds, PrepDiagnostics* diag) {
  Dataset out;
  out.provenance = ds.provenance;
  PrepDiagnostics local;
  for (const auto& s : ds.sentences) {
    ++local.total;
    bool ok = true;
    try {
      locate_targets(tokenize(s.text), s.object_a, s.object_b);
    } catch (const TargetsNotFound&) {
      ok = false;
    } catch (const OverlapError&) {
      ok = false;
    }
    if (ok) {
      out.sentences.push_back(s);
    } else {
      ++local.unlocatable;
      local.skipped_ids.push_back(s.id);
    }
  }
  if (diag) *diag = std::move(local);
  return out;
}

SparseVector Pipeline::features_of(const PreparedSentence& p) const {
  std::vector<SparseVector> parts;
  for (FeatureKind k : spec.features.kinds) {
    switch (k) {
      case FeatureKind::Bow:
      case FeatureKind::Ngrams:
        parts.push_back(vocab.vectorize(p.scope_tokens, spec.features.weighting));
        break;
      case FeatureKind::PosNgrams:
        parts.push_back(pos_space.vectorize(p.scope_tags));
        break;
      case FeatureKind::Jjr:
        parts.push_back(contains_jjr(p.scope_tags));
        break;
      case FeatureKind::AvgEmbedding:
        parts.push_back(to_sparse(average_embedding(p.scope_tokens, embeddings)));
        break;
      case FeatureKind::DepPath:
        parts.push_back(hash_path_features(p.dep_path, spec.features.hash_dim));
        break;
    }
  }
  return concat_features(parts);
}

Pipeline Pipeline::fit(const PipelineSpec& spec, const Dataset& train) {
  Pipeline pl;
  pl.spec = spec;

  if (spec.model == ModelKind::Rule) {
    if (spec.lexicon_path.empty())
      throw PipelineError("rule model needs a lexicon path");
    pl.lexicon = load_cue_lexicon_file(spec.lexicon_path);
    return pl;
  }

  std::vector<PreparedSentence> prepared;
  std::vector<Label> labels;
  for (const auto& s : train.sentences) {
    PreparedSentence p = prepare_sentence(s, spec);
    if (!p.locatable) continue;
    labels.push_back(p.label);
    prepared.push_back(std::move(p));
  }
  if (prepared.empty()) throw PipelineError("no trainable sentences");

  if (spec.model == ModelKind::Majority) {
    pl.model = std::make_unique<MajorityModel>(majority_baseline(labels));
    return pl;
  }

  if (spec.features.kinds.empty())
    throw PipelineError("learned models need at least one feature kind");
  if (wants(spec.features, FeatureKind::Bow) &&
      wants(spec.features, FeatureKind::Ngrams))
    throw PipelineError("bow and ngrams are alternative token featurizations");

  if (wants(spec.features, FeatureKind::Bow) ||
      wants(spec.features, FeatureKind::Ngrams)) {
    bool unigrams = wants(spec.features, FeatureKind::Bow);
    std::vector<std::vector<std::string>> docs;
    docs.reserve(prepared.size());
    for (const auto& p : prepared) docs.push_back(p.scope_tokens);
    pl.vocab = Vocabulary::fit(docs, unigrams ? 1 : spec.features.ngram_lo,
                               unigrams ? 1 : spec.features.ngram_hi,
                               spec.features.min_df);
  }
  if (wants(spec.features, FeatureKind::PosNgrams)) {
    std::vector<std::vector<std::string>> tag_seqs;
    tag_seqs.reserve(prepared.size());
    for (const auto& p : prepared) tag_seqs.push_back(p.scope_tags);
    pl.pos_space = PosNgramSpace::fit(tag_seqs, spec.features.pos_capacity);
  }
  if (wants(spec.features, FeatureKind::AvgEmbedding)) {
    if (spec.features.embedding_path.empty())
      throw PipelineError("avg-embedding needs an embedding path");
    std::ifstream in(spec.features.embedding_path, std::ios::binary);
    if (!in)
      throw PipelineError("cannot open " + spec.features.embedding_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    pl.embedding_source = buf.str();
    std::istringstream parse(pl.embedding_source);
    pl.embeddings = EmbeddingTable::load(parse);
  }

  std::vector<SparseVector> X;
  X.reserve(prepared.size());
  for (const auto& p : prepared) X.push_back(pl.features_of(p));

  switch (spec.model) {
    case ModelKind::Gbdt:
      pl.model = std::make_unique<GradientBoostedEnsemble>(
          train_gbdt(X, labels, spec.train, spec.parallelism));
      break;
    case ModelKind::Logreg:
      pl.model = std::make_unique<LogisticRegressionModel>(
          train_logreg(X, labels, spec.logreg_l2, spec.logreg_iterations,
                       spec.parallelism));
      break;
    case ModelKind::NaiveBayes:
      pl.model = std::make_unique<NaiveBayesModel>(
          train_naive_bayes(X, labels, spec.nb_alpha));
      break;
    default:
      throw PipelineError("unhandled model kind");
  }
  return pl;
}

Prediction Pipeline::predict_one(const LabeledSentence& s) const {
  PreparedSentence p = prepare_sentence(s, spec);
  Prediction out;
  if (!p.locatable) {
    out.label = Label::None;
    out.probs[static_cast<int>(Label::None)] = 1.0;
    return out;
  }
  if (spec.model == ModelKind::Rule) {
    out.label = rule_classify(p.tokens, p.spans, lexicon);
    out.probs[static_cast<int>(out.label)] = 1.0;
  } else {
    if (!model) throw PipelineError("pipeline has no trained model");
    out = model->predict(features_of(p));
  }
  // Internally everything is oriented on the first-mentioned item; stored
  // labels are relative to object_a, so restore that orientation here.
  if (p.swapped) {
    out.label = flip_direction(out.label);
    std::swap(out.probs[static_cast<int>(Label::Better)],
              out.probs[static_cast<int>(Label::Worse)]);
  }
  return out;
}

std::vector<Label> Pipeline::predict(const Dataset& ds) const {
  std::vector<Label> out;
  out.reserve(ds.sentences.size());
  for (const auto& s : ds.sentences) out.push_back(predict_one(s).label);
  return out;
}

FitPredict make_fit_predict(const PipelineSpec& spec) {
  return [spec](const Dataset& train, const Dataset& test) {
    Pipeline pl = Pipeline::fit(spec, train);
    return pl.predict(test);
  };
}

// --- names ---------------------------------------------------------------

const char* feature_kind_name(FeatureKind k) {
  switch (k) {
    case FeatureKind::Bow: return "bow";
    case FeatureKind::Ngrams: return "ngrams";
    case FeatureKind::PosNgrams: return "pos-ngrams";
    case FeatureKind::Jjr: return "jjr";
    case FeatureKind::AvgEmbedding: return "avg-embedding";
    case FeatureKind::DepPath: return "dep-path";
  }
  return "?";
}

const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Gbdt: return "gbdt";
    case ModelKind::Logreg: return "logreg";
    case ModelKind::NaiveBayes: return "nb";
    case ModelKind::Majority: return "majority";
    case ModelKind::Rule: return "rule";
  }
  return "?";
}

const char* replacement_name(ReplacementStrategy r) {
  switch (r) {
    case ReplacementStrategy::Keep: return "keep";
    case ReplacementStrategy::Remove: return "remove";
    case ReplacementStrategy::Oblivious: return "oblivious";
    case ReplacementStrategy::Distinct: return "distinct";
  }
  return "?";
}

const char* weighting_name(Weighting w) {
  switch (w) {
    case Weighting::Binary: return "binary";
    case Weighting::Tf: return "tf";
    case Weighting::TfIdf: return "tfidf";
  }
  return "?";
}

const char* dep_mode_name(DepPathMode m) {
  return m == DepPathMode::Original ? "original" : "customized";
}

std::string scope_to_string(const Scope& s) {
  if (s.full) return "full";
  std::string out;
  if (s.beginning) out += "beginning";
  if (s.middle) out += out.empty() ? "middle" : ",middle";
  if (s.ending) out += out.empty() ? "ending" : ",ending";
  return out;
}

std::optional<FeatureKind> feature_kind_from_string(const std::string& s) {
  for (FeatureKind k : {FeatureKind::Bow, FeatureKind::Ngrams,
                        FeatureKind::PosNgrams, FeatureKind::Jjr,
                        FeatureKind::AvgEmbedding, FeatureKind::DepPath})
    if (s == feature_kind_name(k)) return k;
  return std::nullopt;
}

std::optional<ModelKind> model_kind_from_string(const std::string& s) {
  for (ModelKind k : {ModelKind::Gbdt, ModelKind::Logreg, ModelKind::NaiveBayes,
                      ModelKind::Majority, ModelKind::Rule})
    if (s == model_kind_name(k)) return k;
  return std::nullopt;
}

std::optional<ReplacementStrategy> replacement_from_string(const std::string& s) {
  for (ReplacementStrategy r :
       {ReplacementStrategy::Keep, ReplacementStrategy::Remove,
        ReplacementStrategy::Oblivious, ReplacementStrategy::Distinct})
    if (s == replacement_name(r)) return r;
  return std::nullopt;
}

std::optional<Weighting> weighting_from_string(const std::string& s) {
  for (Weighting w : {Weighting::Binary, Weighting::Tf, Weighting::TfIdf})
    if (s == weighting_name(w)) return w;
  return std::nullopt;
}

std::optional<DepPathMode> dep_mode_from_string(const std::string& s) {
  if (s == "original") return DepPathMode::Original;
  if (s == "customized") return DepPathMode::Customized;
  return std::nullopt;
}

std::optional<Scope> scope_from_string(const std::string& s) {
  if (s == "full") return Scope::Full();
  Scope scope;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string part = s.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part == "beginning")
      scope.beginning = true;
    else if (part == "middle")
      scope.middle = true;
    else if (part == "ending")
      scope.ending = true;
    else
      return std::nullopt;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return scope.valid() ? std::optional<Scope>(scope) : std::nullopt;
}

// --- bundle --------------------------------------------------------------

void Pipeline::save(std::ostream& out) const {
  out << "COMPSENT_PIPELINE 1\n";
  out << "scope " << scope_to_string(spec.scope) << '\n';
  out << "replacement " << replacement_name(spec.replacement) << '\n';
  out << "features";
  for (FeatureKind k : spec.features.kinds) out << ' ' << feature_kind_name(k);
  out << '\n';
  out << "weighting " << weighting_name(spec.features.weighting) << '\n';
  out << "ngram_range " << spec.features.ngram_lo << ' ' << spec.features.ngram_hi
      << '\n';
  out << "min_df " << spec.features.min_df << '\n';
  out << "pos_capacity " << spec.features.pos_capacity << '\n';
  out << "hash_dim " << spec.features.hash_dim << '\n';
  out << "dep_mode " << dep_mode_name(spec.features.dep_mode) << '\n';
  out << "model " << model_kind_name(spec.model) << '\n';
  out << "estimators " << spec.train.estimators << '\n';
  out << "shrinkage ";
  detail::put_num(out, spec.train.shrinkage);
  out << '\n';
  out << "max_depth " << spec.train.max_depth << '\n';
  out << "min_child_weight ";
  detail::put_num(out, spec.train.min_child_weight);
  out << '\n';
  out << "train_seed " << spec.train.seed << '\n';
  out << "logreg_l2 ";
  detail::put_num(out, spec.logreg_l2);
  out << '\n';
  out << "logreg_iterations " << spec.logreg_iterations << '\n';
  out << "nb_alpha ";
  detail::put_num(out, spec.nb_alpha);
  out << '\n';

  bool has_vocab = wants(spec.features, FeatureKind::Bow) ||
                   wants(spec.features, FeatureKind::Ngrams);
  bool has_pos = wants(spec.features, FeatureKind::PosNgrams);
  bool uses_emb = wants(spec.features, FeatureKind::AvgEmbedding);
  if (spec.model == ModelKind::Rule || spec.model == ModelKind::Majority)
    has_vocab = has_pos = uses_emb = false;

  out << "vocab " << (has_vocab ? 1 : 0) << '\n';
  if (has_vocab) vocab.save(out);
  out << "pos " << (has_pos ? 1 : 0) << '\n';
  if (has_pos) pos_space.save(out);
  out << "embedding_bytes " << (uses_emb ? embedding_source.size() : 0) << '\n';
  if (uses_emb) out << embedding_source << '\n';

  if (spec.model == ModelKind::Rule) {
    std::vector<std::string> better(lexicon.better_words.begin(),
                                    lexicon.better_words.end());
    std::vector<std::string> worse(lexicon.worse_words.begin(),
                                   lexicon.worse_words.end());
    std::sort(better.begin(), better.end());
    std::sort(worse.begin(), worse.end());
    out << "lexicon " << better.size() << ' ' << worse.size() << '\n';
    for (const auto& w : better) out << w << '\n';
    for (const auto& w : worse) out << w << '\n';
  } else {
    out << "model_payload\n";
    serialize_model(*model, out);
  }
  out << "end_pipeline\n";
}

void Pipeline::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PipelineError("cannot write " + path);
  save(out);
}

namespace {

std::string expect_key(std::istream& in, const std::string& key) {
  std::string k, v;
  if (!(in >> k)) throw PipelineError("truncated pipeline bundle");
  if (k != key)
    throw PipelineError("bundle key '" + k + "' where '" + key + "' expected");
  if (!(in >> v)) throw PipelineError("truncated pipeline bundle");
  return v;
}

}  // namespace

Pipeline Pipeline::load(std::istream& in) {
  std::string magic;
  long version = 0;
  in >> magic >> version;
  if (!in || magic != "COMPSENT_PIPELINE")
    throw PipelineError("not a pipeline bundle");
  if (version != 1)
    throw PipelineError("unsupported bundle version " + std::to_string(version));

  Pipeline pl;
  auto scope = scope_from_string(expect_key(in, "scope"));
  if (!scope) throw PipelineError("bad scope in bundle");
  pl.spec.scope = *scope;
  auto repl = replacement_from_string(expect_key(in, "replacement"));
  if (!repl) throw PipelineError("bad replacement in bundle");
  pl.spec.replacement = *repl;

  std::string key;
  in >> key;
  if (key != "features") throw PipelineError("bundle missing feature list");
  pl.spec.features.kinds.clear();
  std::string rest;
  std::getline(in, rest);
  std::istringstream feats(rest);
  std::string name;
  while (feats >> name) {
    auto k = feature_kind_from_string(name);
    if (!k) throw PipelineError("unknown feature '" + name + "' in bundle");
    pl.spec.features.kinds.push_back(*k);
  }

  auto weighting = weighting_from_string(expect_key(in, "weighting"));
  if (!weighting) throw PipelineError("bad weighting in bundle");
  pl.spec.features.weighting = *weighting;
  in >> key >> pl.spec.features.ngram_lo >> pl.spec.features.ngram_hi;
  if (!in || key != "ngram_range") throw PipelineError("bad ngram_range");
  pl.spec.features.min_df = std::stol(expect_key(in, "min_df"));
  pl.spec.features.pos_capacity = std::stoul(expect_key(in, "pos_capacity"));
  pl.spec.features.hash_dim = std::stoul(expect_key(in, "hash_dim"));
  auto mode = dep_mode_from_string(expect_key(in, "dep_mode"));
  if (!mode) throw PipelineError("bad dep_mode in bundle");
  pl.spec.features.dep_mode = *mode;
  auto model_kind = model_kind_from_string(expect_key(in, "model"));
  if (!model_kind) throw PipelineError("bad model kind in bundle");
  pl.spec.model = *model_kind;
  pl.spec.train.estimators = std::stoi(expect_key(in, "estimators"));
  {
    in >> key;
    if (key != "shrinkage") throw PipelineError("bad shrinkage");
    pl.spec.train.shrinkage = detail::get_num(in);
  }
  pl.spec.train.max_depth = std::stoi(expect_key(in, "max_depth"));
  {
    in >> key;
    if (key != "min_child_weight") throw PipelineError("bad min_child_weight");
    pl.spec.train.min_child_weight = detail::get_num(in);
  }
  pl.spec.train.seed = std::stoull(expect_key(in, "train_seed"));
  {
    in >> key;
    if (key != "logreg_l2") throw PipelineError("bad logreg_l2");
    pl.spec.logreg_l2 = detail::get_num(in);
  }
  pl.spec.logreg_iterations = std::stoi(expect_key(in, "logreg_iterations"));
  {
    in >> key;
    if (key != "nb_alpha") throw PipelineError("bad nb_alpha");
    pl.spec.nb_alpha = detail::get_num(in);
  }

  if (expect_key(in, "vocab") == "1") pl.vocab = Vocabulary::load(in);
  if (expect_key(in, "pos") == "1") pl.pos_space = PosNgramSpace::load(in);
  std::size_t emb_bytes = std::stoul(expect_key(in, "embedding_bytes"));
  if (emb_bytes > 0) {
    in.ignore();  // newline after the byte count
    pl.embedding_source.resize(emb_bytes);
    in.read(pl.embedding_source.data(), static_cast<std::streamsize>(emb_bytes));
    if (!in) throw PipelineError("truncated embedding block");
    std::istringstream parse(pl.embedding_source);
    pl.embeddings = EmbeddingTable::load(parse);
  }

  in >> key;
  if (key == "lexicon") {
    std::size_t nb = 0, nw = 0;
    in >> nb >> nw;
    if (!in) throw PipelineError("truncated lexicon block");
    std::string word;
    for (std::size_t i = 0; i < nb; ++i) {
      in >> word;
      pl.lexicon.better_words.insert(word);
    }
    for (std::size_t i = 0; i < nw; ++i) {
      in >> word;
      pl.lexicon.worse_words.insert(word);
    }
    if (!in) throw PipelineError("truncated lexicon block");
  } else if (key == "model_payload") {
    pl.model = deserialize_model(in);
    if (pl.model->type() != model_kind_name(pl.spec.model))
      throw PipelineError("bundle model type '" + pl.model->type() +
                          "' does not match spec '" +
                          model_kind_name(pl.spec.model) + "'");
  } else {
    throw PipelineError("unexpected bundle section '" + key + "'");
  }
  std::string tail;
  if (!(in >> tail) || tail != "end_pipeline")
    throw PipelineError("truncated pipeline bundle");
  return pl;
}

Pipeline Pipeline::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("cannot open " + path);
  return load(in);
}

}  // namespace compsent
