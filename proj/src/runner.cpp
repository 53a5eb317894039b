#include "compsent/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "compsent/eval.hpp"
#include "compsent/report.hpp"

namespace compsent {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, bool& out) {
  if (v == "true" || v == "yes" || v == "1") { out = true; return true; }
  if (v == "false" || v == "no" || v == "0") { out = false; return true; }
  return false;
}

bool parse_double(const std::string& v, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(v, &used);
    return used == v.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_int(const std::string& v, int& out) {
  try {
    std::size_t used = 0;
    out = std::stoi(v, &used);
    return used == v.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_u64(const std::string& v, std::uint64_t& out) {
  try {
    std::size_t used = 0;
    out = std::stoull(v, &used);
    return used == v.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::optional<EvalMode> mode_from_string(const std::string& s) {
  if (s == "holdout") return EvalMode::Holdout;
  if (s == "cv") return EvalMode::Cv;
  if (s == "cross-domain") return EvalMode::CrossDomain;
  if (s == "baseline") return EvalMode::Baseline;
  return std::nullopt;
}

bool parse_features(const std::string& v, std::vector<FeatureKind>& out,
                    std::string& bad) {
  std::vector<FeatureKind> kinds;
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (part.empty()) continue;
    auto k = feature_kind_from_string(part);
    if (!k) { bad = part; return false; }
    kinds.push_back(*k);
  }
  out = std::move(kinds);
  return true;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

const char* eval_mode_name(EvalMode m) {
  switch (m) {
    case EvalMode::Holdout: return "holdout";
    case EvalMode::Cv: return "cv";
    case EvalMode::CrossDomain: return "cross-domain";
    case EvalMode::Baseline: return "baseline";
  }
  return "?";
}

bool apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value,
                   std::vector<std::string>& problems) {
  auto fail = [&](const std::string& msg) {
    problems.push_back(key + ": " + msg);
    return false;
  };

  if (key == "dataset") { cfg.dataset_path = value; return true; }
  if (key == "format") {
    if (value != "jsonl" && value != "csv")
      return fail("expected jsonl or csv, got '" + value + "'");
    cfg.dataset_format = value;
    return true;
  }
  if (key.rfind("csv.column.", 0) == 0) {
    std::string field = key.substr(11);
    if (field != "id" && field != "text" && field != "object_a" &&
        field != "object_b" && field != "label" && field != "domain" &&
        field != "confidence")
      return fail("unknown CSV field '" + field + "'");
    cfg.csv_columns.columns[field] = value;
    return true;
  }
  if (key == "csv.default-domain") {
    cfg.csv_columns.default_domain = value;
    return true;
  }
  if (key == "min-confidence") {
    double d;
    if (!parse_double(value, d) || d < 0.0 || d > 1.0)
      return fail("expected a number in [0,1], got '" + value + "'");
    cfg.min_confidence = d;
    return true;
  }
  if (key == "mode") {
    auto m = mode_from_string(value);
    if (!m) return fail("expected holdout, cv, cross-domain or baseline");
    cfg.mode = *m;
    return true;
  }
  if (key == "scope") {
    auto s = scope_from_string(value);
    if (!s) return fail("unknown scope '" + value + "'");
    cfg.pipeline.scope = *s;
    return true;
  }
  if (key == "replacement") {
    auto r = replacement_from_string(value);
    if (!r) return fail("expected keep, remove, oblivious or distinct");
    cfg.pipeline.replacement = *r;
    return true;
  }
  if (key == "features") {
    std::string bad;
    if (!parse_features(value, cfg.pipeline.features.kinds, bad))
      return fail("unknown feature kind '" + bad + "'");
    return true;
  }
  if (key == "weighting") {
    auto w = weighting_from_string(value);
    if (!w) return fail("expected binary, tf or tfidf");
    cfg.pipeline.features.weighting = *w;
    return true;
  }
  if (key == "ngram-lo") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.features.ngram_lo = n;
    return true;
  }
  if (key == "ngram-hi") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.features.ngram_hi = n;
    return true;
  }
  if (key == "min-df") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.features.min_df = n;
    return true;
  }
  if (key == "pos-capacity") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.features.pos_capacity = static_cast<std::size_t>(n);
    return true;
  }
  if (key == "hash-dim") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.features.hash_dim = static_cast<std::size_t>(n);
    return true;
  }
  if (key == "dep-mode") {
    auto m = dep_mode_from_string(value);
    if (!m) return fail("expected original or customized");
    cfg.pipeline.features.dep_mode = *m;
    return true;
  }
  if (key == "embeddings") {
    cfg.pipeline.features.embedding_path = value;
    return true;
  }
  if (key == "model") {
    auto m = model_kind_from_string(value);
    if (!m) return fail("expected gbdt, logreg, nb, majority or rule");
    cfg.pipeline.model = *m;
    return true;
  }
  if (key == "gbdt.estimators") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.train.estimators = n;
    return true;
  }
  if (key == "gbdt.shrinkage") {
    double d;
    if (!parse_double(value, d) || d <= 0.0 || d > 1.0)
      return fail("expected a number in (0,1], got '" + value + "'");
    cfg.pipeline.train.shrinkage = d;
    return true;
  }
  if (key == "gbdt.max-depth") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.train.max_depth = n;
    return true;
  }
  if (key == "gbdt.min-child-weight") {
    double d;
    if (!parse_double(value, d) || d < 0.0)
      return fail("expected a number >= 0");
    cfg.pipeline.train.min_child_weight = d;
    return true;
  }
  if (key == "logreg.l2") {
    double d;
    if (!parse_double(value, d) || d < 0.0)
      return fail("expected a number >= 0");
    cfg.pipeline.logreg_l2 = d;
    return true;
  }
  if (key == "logreg.iterations") {
    int n;
    if (!parse_int(value, n) || n < 1) return fail("expected an integer >= 1");
    cfg.pipeline.logreg_iterations = n;
    return true;
  }
  if (key == "nb.alpha") {
    double d;
    if (!parse_double(value, d) || d <= 0.0) return fail("expected a number > 0");
    cfg.pipeline.nb_alpha = d;
    return true;
  }
  if (key == "lexicon") {
    cfg.pipeline.lexicon_path = value;
    return true;
  }
  if (key == "parallelism") {
    if (value == "serial") { cfg.pipeline.parallelism = Parallelism::Serial; return true; }
    if (value == "openmp") { cfg.pipeline.parallelism = Parallelism::OpenMP; return true; }
    return fail("expected serial or openmp");
  }
  if (key == "holdout-fraction") {
    double d;
    if (!parse_double(value, d) || d <= 0.0 || d >= 1.0)
      return fail("expected a number in (0,1), got '" + value + "'");
    cfg.holdout_fraction = d;
    return true;
  }
  if (key == "folds") {
    int n;
    if (!parse_int(value, n) || n < 2) return fail("expected an integer >= 2");
    cfg.folds = n;
    return true;
  }
  if (key == "seed") {
    std::uint64_t s;
    if (!parse_u64(value, s)) return fail("expected an unsigned integer");
    cfg.seed = s;
    return true;
  }
  if (key == "output-dir") { cfg.output_dir = value; return true; }
  if (key == "chart") {
    bool b;
    if (!parse_bool(value, b)) return fail("expected true or false");
    cfg.chart = b;
    return true;
  }
  if (key == "errors") {
    bool b;
    if (!parse_bool(value, b)) return fail("expected true or false");
    cfg.write_errors = b;
    return true;
  }
  problems.push_back("unknown config key '" + key + "'");
  return false;
}

namespace {

void apply_line(ExperimentConfig& cfg, const std::string& raw,
                const std::string& where,
                std::vector<std::string>& problems) {
  std::string line = raw;
  std::size_t hash = line.find('#');
  if (hash != std::string::npos) line.resize(hash);
  line = trim(line);
  if (line.empty()) return;
  std::size_t eq = line.find('=');
  if (eq == std::string::npos) {
    problems.push_back(where + ": expected key=value, got '" + line + "'");
    return;
  }
  std::string key = trim(line.substr(0, eq));
  std::string value = trim(line.substr(eq + 1));
  if (key.empty()) {
    problems.push_back(where + ": empty key");
    return;
  }
  std::vector<std::string> local;
  apply_setting(cfg, key, value, local);
  for (auto& p : local) problems.push_back(where + ": " + p);
}

}  // namespace

void load_config_file(ExperimentConfig& cfg, const std::string& path,
                      std::vector<std::string>& problems) {
  std::ifstream in(path);
  if (!in) {
    problems.push_back("cannot open config file " + path);
    return;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    apply_line(cfg, line, path + ":" + std::to_string(lineno), problems);
  }
}

void apply_overrides(ExperimentConfig& cfg,
                     const std::vector<std::string>& overrides,
                     std::vector<std::string>& problems) {
  for (const auto& o : overrides) apply_line(cfg, o, "override", problems);
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.dataset_path.empty())
    problems.push_back("dataset: no path configured");
  else if (!std::filesystem::exists(cfg.dataset_path))
    problems.push_back("dataset: file not found: " + cfg.dataset_path);

  if (cfg.dataset_format == "csv") {
    for (const char* field : {"text", "object_a", "object_b", "label"})
      if (!cfg.csv_columns.columns.count(field))
        problems.push_back(std::string("csv.column.") + field +
                           ": required for csv format");
  }

  bool learned = cfg.pipeline.model == ModelKind::Gbdt ||
                 cfg.pipeline.model == ModelKind::Logreg ||
                 cfg.pipeline.model == ModelKind::NaiveBayes;
  if (learned && cfg.pipeline.features.kinds.empty())
    problems.push_back("features: learned models need at least one kind");
  if (cfg.pipeline.model == ModelKind::Rule) {
    if (cfg.pipeline.lexicon_path.empty())
      problems.push_back("lexicon: required for the rule model");
    else if (!std::filesystem::exists(cfg.pipeline.lexicon_path))
      problems.push_back("lexicon: file not found: " +
                         cfg.pipeline.lexicon_path);
  }
  if (cfg.mode == EvalMode::Baseline &&
      !(cfg.pipeline.model == ModelKind::Rule ||
        cfg.pipeline.model == ModelKind::Majority))
    problems.push_back("mode: baseline expects the rule or majority model");

  bool wants_embeddings = false;
  for (auto k : cfg.pipeline.features.kinds)
    if (k == FeatureKind::AvgEmbedding) wants_embeddings = true;
  if (wants_embeddings) {
    if (cfg.pipeline.features.embedding_path.empty())
      problems.push_back("embeddings: required for avg-embedding features");
    else if (!std::filesystem::exists(cfg.pipeline.features.embedding_path))
      problems.push_back("embeddings: file not found: " +
                         cfg.pipeline.features.embedding_path);
  }

  bool bow = false, ngrams = false;
  for (auto k : cfg.pipeline.features.kinds) {
    if (k == FeatureKind::Bow) bow = true;
    if (k == FeatureKind::Ngrams) ngrams = true;
  }
  if (bow && ngrams)
    problems.push_back(
        "features: bow and ngrams are alternative token featurizations");
  if (cfg.pipeline.features.ngram_lo > cfg.pipeline.features.ngram_hi)
    problems.push_back("ngram-lo: must not exceed ngram-hi");
  return problems;
}

void apply_thread_cap() {
#ifdef _OPENMP
  const char* env = std::getenv("COMPSENT_THREADS");
  if (!env) return;
  int n = 0;
  if (parse_int(std::string(env), n) && n > 0) omp_set_num_threads(n);
#endif
}

namespace {

Dataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.dataset_format == "csv") {
    std::ifstream in(cfg.dataset_path, std::ios::binary);
    if (!in) throw DataError("cannot open " + cfg.dataset_path);
    return load_csv(in, cfg.csv_columns, cfg.dataset_path);
  }
  return load_jsonl_file(cfg.dataset_path);
}

void maybe_write_errors(const ExperimentConfig& cfg, const Dataset& ds,
                        const std::vector<Label>& pred) {
  if (!cfg.write_errors) return;
  ErrorReport er = error_report(ds, pred);
  write_text_file(join_path(cfg.output_dir, "errors.csv"), errors_to_csv(er));
  write_text_file(join_path(cfg.output_dir, "errors.md"),
                  errors_to_markdown(er));
}

std::vector<ChartBar> report_bars(const EvalReport& r) {
  std::vector<ChartBar> bars;
  for (int c = 0; c < kNumLabels; ++c)
    bars.push_back({std::string("F1 ") + label_name(static_cast<Label>(c)),
                    r.per_class[c].f1, 0.0});
  bars.push_back({"micro-F1", r.micro_f1, 0.0});
  return bars;
}

int run_holdout(const ExperimentConfig& cfg, const Dataset& usable,
                std::ostream& log) {
  auto split = stratified_holdout_split(usable, cfg.holdout_fraction, cfg.seed);
  log << "train " << split.first.sentences.size() << " rows, test "
      << split.second.sentences.size() << " rows\n";
  Pipeline pl = Pipeline::fit(cfg.pipeline, split.first);
  std::vector<Label> pred = pl.predict(split.second);
  EvalReport report = evaluate_dataset(split.second, pred);
  write_text_file(join_path(cfg.output_dir, "report.csv"),
                  report_to_csv(report));
  write_text_file(join_path(cfg.output_dir, "report.md"),
                  report_to_markdown(report));
  if (cfg.chart)
    write_text_file(join_path(cfg.output_dir, "report.svg"),
                    bar_chart_svg(report_bars(report), "holdout evaluation"));
  maybe_write_errors(cfg, split.second, pred);
  pl.save_file(join_path(cfg.output_dir, "model.bundle"));
  log << "holdout micro-F1 " << fmt4(report.micro_f1) << "\n";
  return kExitOk;
}

int run_cv(const ExperimentConfig& cfg, const Dataset& usable,
           std::ostream& log) {
  CvResult cv =
      cross_validate(usable, make_fit_predict(cfg.pipeline), cfg.folds, cfg.seed);
  write_text_file(join_path(cfg.output_dir, "cv.csv"), cv_to_csv(cv));
  write_text_file(join_path(cfg.output_dir, "cv.md"), cv_to_markdown(cv));
  if (cfg.chart) {
    std::vector<ChartBar> bars;
    for (std::size_t i = 0; i < cv.folds.size(); ++i)
      bars.push_back({"fold " + std::to_string(i + 1), cv.folds[i].micro_f1,
                      0.0});
    bars.push_back({"mean", cv.mean_micro_f1, cv.stddev_micro_f1});
    write_text_file(join_path(cfg.output_dir, "cv.svg"),
                    bar_chart_svg(bars, "cross-validation micro-F1"));
  }
  log << "cv mean micro-F1 " << fmt4(cv.mean_micro_f1) << " (stddev "
      << fmt4(cv.stddev_micro_f1) << ")\n";
  return kExitOk;
}

int run_cross_domain(const ExperimentConfig& cfg, const Dataset& usable,
                     std::ostream& log) {
  CrossDomainResult m =
      cross_domain_eval(usable, make_fit_predict(cfg.pipeline), cfg.folds,
                        cfg.seed);
  write_text_file(join_path(cfg.output_dir, "cross_domain.csv"),
                  cross_domain_to_csv(m));
  write_text_file(join_path(cfg.output_dir, "cross_domain.md"),
                  cross_domain_to_markdown(m));
  if (cfg.chart) {
    std::vector<ChartBar> bars;
    for (std::size_t i = 0; i < m.domains.size(); ++i)
      for (std::size_t j = 0; j < m.domains.size(); ++j)
        bars.push_back({m.domains[i] + ">" + m.domains[j], m.micro_f1[i][j],
                        0.0});
    write_text_file(join_path(cfg.output_dir, "cross_domain.svg"),
                    bar_chart_svg(bars, "cross-domain micro-F1"));
  }
  log << "cross-domain matrix over " << m.domains.size() << " domains\n";
  return kExitOk;
}

// Baseline mode reports the configured baseline twice: on the holdout test
// split and on the full corpus with per-domain breakdowns.
int run_baseline(const ExperimentConfig& cfg, const Dataset& usable,
                 std::ostream& log) {
  auto split = stratified_holdout_split(usable, cfg.holdout_fraction, cfg.seed);
  Pipeline pl = Pipeline::fit(cfg.pipeline, split.first);
  std::vector<Label> pred = pl.predict(split.second);
  EvalReport holdout = evaluate_dataset(split.second, pred);
  write_text_file(join_path(cfg.output_dir, "baseline_holdout.csv"),
                  report_to_csv(holdout));
  write_text_file(join_path(cfg.output_dir, "baseline_holdout.md"),
                  report_to_markdown(holdout));

  std::vector<Label> pred_full = pl.predict(usable);
  EvalReport full = evaluate_dataset(usable, pred_full);
  write_text_file(join_path(cfg.output_dir, "baseline_full.csv"),
                  report_to_csv(full));
  write_text_file(join_path(cfg.output_dir, "baseline_full.md"),
                  report_to_markdown(full));
  if (cfg.chart)
    write_text_file(join_path(cfg.output_dir, "baseline.svg"),
                    bar_chart_svg(report_bars(holdout), "baseline holdout"));
  maybe_write_errors(cfg, split.second, pred);
  log << "baseline holdout micro-F1 " << fmt4(holdout.micro_f1)
      << ", full corpus " << fmt4(full.micro_f1) << "\n";
  return kExitOk;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  auto problems = validate(cfg);
  if (!problems.empty()) {
    for (const auto& p : problems) log << "config error: " << p << "\n";
    return kExitConfig;
  }
  apply_thread_cap();
  try {
    std::filesystem::create_directories(cfg.output_dir);
    Dataset raw = load_dataset(cfg);
    Dataset confident = filter_by_confidence(raw, cfg.min_confidence);
    PrepDiagnostics diag;
    Dataset usable = filter_locatable(confident, &diag);
    log << "loaded " << raw.sentences.size() << " rows, "
        << confident.sentences.size() << " at confidence >= "
        << fmt4(cfg.min_confidence) << ", " << usable.sentences.size()
        << " with locatable targets\n";
    if (usable.sentences.empty()) {
      log << "data error: no usable sentences\n";
      return kExitData;
    }
    switch (cfg.mode) {
      case EvalMode::Holdout: return run_holdout(cfg, usable, log);
      case EvalMode::Cv: return run_cv(cfg, usable, log);
      case EvalMode::CrossDomain: return run_cross_domain(cfg, usable, log);
      case EvalMode::Baseline: return run_baseline(cfg, usable, log);
    }
    log << "config error: unhandled mode\n";
    return kExitConfig;
  } catch (const DataError& e) {
    log << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace compsent
