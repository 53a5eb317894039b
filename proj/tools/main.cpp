#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"

#include "compsent/mine.hpp"
#include "compsent/report.hpp"
#include "compsent/runner.hpp"

using namespace compsent;

namespace {

int config_errors(const std::vector<std::string>& problems) {
  for (const auto& p : problems) std::cerr << "config error: " << p << "\n";
  return problems.empty() ? kExitOk : kExitConfig;
}

// Shared --config/--set plumbing for the experiment subcommands.
struct ConfigArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string dataset;
  std::string output_dir;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "experiment config file (key=value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", overrides,
                    "config override as key=value (repeatable)");
    cmd->add_option("--dataset", dataset, "dataset path (shorthand)");
    cmd->add_option("--output-dir", output_dir, "report directory (shorthand)");
  }

  int build(ExperimentConfig& cfg, EvalMode mode) const {
    std::vector<std::string> problems;
    if (!config_path.empty()) load_config_file(cfg, config_path, problems);
    apply_overrides(cfg, overrides, problems);
    if (!dataset.empty()) apply_setting(cfg, "dataset", dataset, problems);
    if (!output_dir.empty())
      apply_setting(cfg, "output-dir", output_dir, problems);
    cfg.mode = mode;
    if (int rc = config_errors(problems); rc != kExitOk) return rc;
    return kExitOk;
  }
};

struct CsvArgs {
  std::vector<std::string> columns;  // field=column
  std::string default_domain;

  void attach(CLI::App* cmd) {
    cmd->add_option("--csv-column", columns,
                    "CSV column mapping as field=column (repeatable; fields: "
                    "id, text, object_a, object_b, label, domain, confidence)");
    cmd->add_option("--default-domain", default_domain,
                    "domain for CSV rows without a domain column");
  }

  int apply(ExperimentConfig& cfg) const {
    std::vector<std::string> problems;
    for (const auto& spec : columns) {
      std::size_t eq = spec.find('=');
      if (eq == std::string::npos) {
        problems.push_back("--csv-column expects field=column, got '" + spec +
                           "'");
        continue;
      }
      apply_setting(cfg, "csv.column." + spec.substr(0, eq),
                    spec.substr(eq + 1), problems);
    }
    if (!default_domain.empty())
      apply_setting(cfg, "csv.default-domain", default_domain, problems);
    return config_errors(problems);
  }
};

Dataset load_input(const std::string& path, const std::string& format,
                   const CsvColumnMap& columns) {
  if (format == "csv") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return load_csv(in, columns, path);
  }
  return load_jsonl_file(path);
}

int write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitRuntime;
  }
  out << content;
  return kExitOk;
}

int cmd_ingest(const std::string& input, const std::string& format,
               const CsvArgs& csv, double min_confidence,
               const std::string& output) {
  ExperimentConfig cfg;
  if (int rc = csv.apply(cfg); rc != kExitOk) return rc;
  try {
    Dataset ds = load_input(input, format, cfg.csv_columns);
    if (min_confidence > 0.0) ds = filter_by_confidence(ds, min_confidence);
    save_jsonl_file(ds, output);
    std::cout << "wrote " << ds.sentences.size() << " rows to " << output
              << "\n";
    return kExitOk;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_stats(const std::string& input, const std::string& format,
              const CsvArgs& csv, double min_confidence, bool as_csv,
              const std::string& output) {
  ExperimentConfig cfg;
  if (int rc = csv.apply(cfg); rc != kExitOk) return rc;
  try {
    Dataset ds = load_input(input, format, cfg.csv_columns);
    Dataset kept = filter_by_confidence(ds, min_confidence);
    StatsReport stats = dataset_stats(kept);
    return write_or_print(output, as_csv ? stats_to_csv(stats)
                                         : stats_to_markdown(stats));
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_train(const ConfigArgs& args, const std::string& model_out) {
  ExperimentConfig cfg;
  if (int rc = args.build(cfg, EvalMode::Holdout); rc != kExitOk) return rc;
  if (int rc = config_errors(validate(cfg)); rc != kExitOk) return rc;
  apply_thread_cap();
  try {
    Dataset raw = load_input(cfg.dataset_path, cfg.dataset_format,
                             cfg.csv_columns);
    Dataset usable =
        filter_locatable(filter_by_confidence(raw, cfg.min_confidence));
    if (usable.sentences.empty()) {
      std::cerr << "data error: no usable sentences\n";
      return kExitData;
    }
    Pipeline pl = Pipeline::fit(cfg.pipeline, usable);
    std::string path = model_out.empty()
                           ? cfg.output_dir + "/model.bundle"
                           : model_out;
    pl.save_file(path);
    std::cout << "trained on " << usable.sentences.size()
              << " sentences, saved " << path << "\n";
    return kExitOk;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_predict(const std::string& model_path, const std::string& input,
                const std::string& output) {
  apply_thread_cap();
  try {
    Pipeline pl = Pipeline::load_file(model_path);
    Dataset ds = load_jsonl_file(input);
    std::ostringstream out;
    out << "id\tlabel\tp_none\tp_better\tp_worse\n";
    for (const auto& s : ds.sentences) {
      Prediction pr = pl.predict_one(s);
      out << s.id << '\t' << label_name(pr.label);
      for (int c = 0; c < kNumLabels; ++c) out << '\t' << fmt4(pr.probs[c]);
      out << '\n';
    }
    return write_or_print(output, out.str());
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_report(const std::string& input, const std::string& predictions,
               double min_confidence, const std::string& output_dir,
               bool chart, bool errors) {
  try {
    Dataset ds =
        filter_by_confidence(load_jsonl_file(input), min_confidence);
    std::ifstream in(predictions);
    if (!in) throw DataError("cannot open " + predictions);
    std::unordered_map<std::string, Label> by_id;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) { first = false; continue; }  // header
      if (line.empty()) continue;
      std::size_t t1 = line.find('\t');
      if (t1 == std::string::npos)
        throw DataError("prediction line has no tab: " + line);
      std::size_t t2 = line.find('\t', t1 + 1);
      std::string id = line.substr(0, t1);
      std::string name = t2 == std::string::npos
                             ? line.substr(t1 + 1)
                             : line.substr(t1 + 1, t2 - t1 - 1);
      auto label = parse_label(name);
      if (!label) throw DataError("unknown label '" + name + "'");
      by_id[id] = *label;
    }
    std::vector<Label> pred;
    pred.reserve(ds.sentences.size());
    for (const auto& s : ds.sentences) {
      auto it = by_id.find(s.id);
      if (it == by_id.end())
        throw DataError("no prediction for sentence " + s.id);
      pred.push_back(it->second);
    }
    std::filesystem::create_directories(output_dir);
    EvalReport report = evaluate_dataset(ds, pred);
    auto path = [&](const char* name) { return output_dir + "/" + name; };
    std::ofstream(path("report.csv"), std::ios::binary)
        << report_to_csv(report);
    std::ofstream(path("report.md"), std::ios::binary)
        << report_to_markdown(report);
    if (chart) {
      std::vector<ChartBar> bars;
      for (int c = 0; c < kNumLabels; ++c)
        bars.push_back({std::string("F1 ") + label_name(static_cast<Label>(c)),
                        report.per_class[c].f1, 0.0});
      bars.push_back({"micro-F1", report.micro_f1, 0.0});
      std::ofstream(path("report.svg"), std::ios::binary)
          << bar_chart_svg(bars, "evaluation");
    }
    if (errors) {
      ErrorReport er = error_report(ds, pred);
      std::ofstream(path("errors.csv"), std::ios::binary) << errors_to_csv(er);
      std::ofstream(path("errors.md"), std::ios::binary)
          << errors_to_markdown(er);
    }
    std::cout << "micro-F1 " << fmt4(report.micro_f1) << "\n";
    return kExitOk;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_experiment(const ConfigArgs& args, EvalMode mode) {
  ExperimentConfig cfg;
  if (int rc = args.build(cfg, mode); rc != kExitOk) return rc;
  if (mode == EvalMode::Baseline && cfg.pipeline.model != ModelKind::Rule &&
      cfg.pipeline.model != ModelKind::Majority)
    cfg.pipeline.model = ModelKind::Rule;
  return run_experiment(cfg, std::cout);
}

// Seed item lists: one item per line, optionally "item<TAB>type";
// '#' starts a comment.
std::vector<std::pair<std::string, std::string>> load_items(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MineError("cannot open " + path);
  std::vector<std::pair<std::string, std::string>> items;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      items.emplace_back(line, "unknown");
    else
      items.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return items;
}

int cmd_mine_index(const std::string& sentences, const std::string& output) {
  try {
    SentenceIndex index = build_index_file(sentences);
    index.save_file(output);
    std::cout << "indexed " << index.size() << " sentences into " << output
              << "\n";
    return kExitOk;
  } catch (const MineError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_mine_pairs(const std::string& items_path, const std::string& stoplist,
                   const std::string& output) {
  try {
    auto pairs = generate_pairs(load_items(items_path));
    if (!stoplist.empty())
      pairs = apply_stoplist(pairs, load_stoplist_file(stoplist));
    std::ostringstream out;
    for (const auto& p : pairs)
      out << p.item_a << '\t' << p.item_b << '\t' << p.pair_type << '\n';
    return write_or_print(output, out.str());
  } catch (const MineError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_mine_query(const std::string& index_path, const std::string& item_a,
                   const std::string& item_b, const std::string& cues) {
  try {
    SentenceIndex index = SentenceIndex::load_file(index_path);
    TargetPair pair{item_a, item_b, "query"};
    std::vector<std::string> ids;
    if (cues.empty()) {
      ids = query_pair(index, pair);
    } else {
      auto cue_words = load_stoplist_file(cues);
      ids = query_pair(index, pair, &cue_words);
    }
    for (const auto& id : ids) std::cout << id << "\n";
    std::cerr << ids.size() << " matches\n";
    return kExitOk;
  } catch (const MineError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_mine_sample(const std::string& index_path,
                    const std::string& items_path, const std::string& stoplist,
                    const std::string& cues, long min_support, double cue_bias,
                    long size, std::uint64_t seed, const std::string& output) {
  try {
    SentenceIndex index = SentenceIndex::load_file(index_path);
    auto pairs = generate_pairs(load_items(items_path));
    if (!stoplist.empty())
      pairs = apply_stoplist(pairs, load_stoplist_file(stoplist));
    std::unordered_set<std::string> cue_words;
    if (!cues.empty()) cue_words = load_stoplist_file(cues);
    auto results = query_all(index, pairs, cue_words);
    SampleResult sample = sample_candidates(results, min_support, cue_bias,
                                            static_cast<std::size_t>(size),
                                            seed);
    std::cerr << "pairs kept " << sample.pairs_kept << ", dropped "
              << sample.pairs_dropped << ", candidates "
              << sample.candidates.size()
              << (sample.shortfall ? " (pool smaller than requested)" : "")
              << "\n";
    return write_or_print(output,
                          candidates_to_jsonl(index, sample.candidates));
  } catch (const MineError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comparative sentence identification and preference direction"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand(
      "ingest", "convert a dataset to the canonical JSONL form");
  std::string in_input, in_format = "jsonl", in_output;
  double in_minconf = 0.0;
  CsvArgs in_csv;
  ingest->add_option("--input", in_input, "source dataset")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--format", in_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  in_csv.attach(ingest);
  ingest->add_option("--min-confidence", in_minconf,
                     "drop rows below this confidence (default keep all)");
  ingest->add_option("--output", in_output, "target JSONL path")->required();

  // stats
  auto* stats = app.add_subcommand("stats", "per-domain label counts");
  std::string st_input, st_format = "jsonl", st_output;
  double st_minconf = 0.5;
  bool st_csv_out = false;
  CsvArgs st_csv;
  stats->add_option("--input", st_input, "dataset")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("--format", st_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  st_csv.attach(stats);
  stats->add_option("--min-confidence", st_minconf,
                    "confidence threshold (default 0.5)");
  stats->add_flag("--csv", st_csv_out, "emit CSV instead of markdown");
  stats->add_option("--output", st_output, "write to file instead of stdout");

  // train
  auto* train = app.add_subcommand("train", "fit a pipeline on a dataset");
  ConfigArgs tr_args;
  std::string tr_model_out;
  tr_args.attach(train);
  train->add_option("--model-out", tr_model_out,
                    "bundle path (default <output-dir>/model.bundle)");

  // predict
  auto* predict =
      app.add_subcommand("predict", "label sentences with a saved model");
  std::string pr_model, pr_input, pr_output;
  predict->add_option("--model", pr_model, "model bundle")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--input", pr_input, "JSONL dataset")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--output", pr_output,
                      "write TSV here instead of stdout");

  // evaluate / cv / cross-domain / baseline
  auto* evaluate =
      app.add_subcommand("evaluate", "holdout split evaluation");
  ConfigArgs ev_args;
  ev_args.attach(evaluate);

  auto* cv = app.add_subcommand("cv", "stratified cross-validation");
  ConfigArgs cv_args;
  cv_args.attach(cv);

  auto* cross = app.add_subcommand("cross-domain",
                                   "train/test matrix across domains");
  ConfigArgs cd_args;
  cd_args.attach(cross);

  auto* baseline = app.add_subcommand(
      "baseline", "rule or majority baseline, holdout and full corpus");
  ConfigArgs bl_args;
  bl_args.attach(baseline);

  // report
  auto* report = app.add_subcommand(
      "report", "evaluate stored predictions against gold labels");
  std::string rp_input, rp_pred, rp_outdir = ".";
  double rp_minconf = 0.5;
  bool rp_chart = false, rp_errors = false;
  report->add_option("--input", rp_input, "JSONL dataset")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--predictions", rp_pred, "TSV from the predict command")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--min-confidence", rp_minconf,
                     "confidence threshold (default 0.5)");
  report->add_option("--output-dir", rp_outdir, "report directory");
  report->add_flag("--chart", rp_chart, "also write an SVG chart");
  report->add_flag("--errors", rp_errors, "also write error breakdowns");

  // mine
  auto* mine = app.add_subcommand("mine", "candidate mining utilities");
  mine->require_subcommand(1);

  auto* mindex = mine->add_subcommand("index", "build a sentence index");
  std::string mi_sentences, mi_output;
  mindex->add_option("--sentences", mi_sentences, "id<TAB>sentence lines")
      ->required()
      ->check(CLI::ExistingFile);
  mindex->add_option("--output", mi_output, "index path")->required();

  auto* mpairs = mine->add_subcommand("pairs", "all within-type item pairs");
  std::string mp_items, mp_stoplist, mp_output;
  mpairs->add_option("--items", mp_items, "item list, item[<TAB>type] lines")
      ->required()
      ->check(CLI::ExistingFile);
  mpairs->add_option("--stoplist", mp_stoplist, "items to exclude")
      ->check(CLI::ExistingFile);
  mpairs->add_option("--output", mp_output, "write here instead of stdout");

  auto* mquery = mine->add_subcommand("query", "sentences mentioning a pair");
  std::string mq_index, mq_a, mq_b, mq_cues;
  mquery->add_option("--index", mq_index, "index path")
      ->required()
      ->check(CLI::ExistingFile);
  mquery->add_option("--item-a", mq_a, "first item")->required();
  mquery->add_option("--item-b", mq_b, "second item")->required();
  mquery->add_option("--cues", mq_cues, "cue word list; require one to match")
      ->check(CLI::ExistingFile);

  auto* msample =
      mine->add_subcommand("sample", "draw an annotation candidate sample");
  std::string ms_index, ms_items, ms_stoplist, ms_cues, ms_output;
  long ms_min_support = 3, ms_size = 500;
  double ms_cue_bias = 0.5;
  std::uint64_t ms_seed = 7;
  msample->add_option("--index", ms_index, "index path")
      ->required()
      ->check(CLI::ExistingFile);
  msample->add_option("--items", ms_items, "item list")
      ->required()
      ->check(CLI::ExistingFile);
  msample->add_option("--stoplist", ms_stoplist, "items to exclude")
      ->check(CLI::ExistingFile);
  msample->add_option("--cues", ms_cues, "cue word list for biased sampling")
      ->check(CLI::ExistingFile);
  msample->add_option("--min-support", ms_min_support,
                      "minimum plain hits per pair (default 3)");
  msample->add_option("--cue-bias", ms_cue_bias,
                      "share of pairs sampled from cue hits (default 0.5)");
  msample->add_option("--size", ms_size, "sample size (default 500)");
  msample->add_option("--seed", ms_seed, "sampling seed (default 7)");
  msample->add_option("--output", ms_output, "write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? compsent::kExitOk : compsent::kExitConfig;
  }

  if (ingest->parsed())
    return cmd_ingest(in_input, in_format, in_csv, in_minconf, in_output);
  if (stats->parsed())
    return cmd_stats(st_input, st_format, st_csv, st_minconf, st_csv_out,
                     st_output);
  if (train->parsed()) return cmd_train(tr_args, tr_model_out);
  if (predict->parsed()) return cmd_predict(pr_model, pr_input, pr_output);
  if (evaluate->parsed()) return cmd_experiment(ev_args, EvalMode::Holdout);
  if (cv->parsed()) return cmd_experiment(cv_args, EvalMode::Cv);
  if (cross->parsed()) return cmd_experiment(cd_args, EvalMode::CrossDomain);
  if (baseline->parsed()) return cmd_experiment(bl_args, EvalMode::Baseline);
  if (report->parsed())
    return cmd_report(rp_input, rp_pred, rp_minconf, rp_outdir, rp_chart,
                      rp_errors);
  if (mine->parsed()) {
    if (mindex->parsed()) return cmd_mine_index(mi_sentences, mi_output);
    if (mpairs->parsed())
      return cmd_mine_pairs(mp_items, mp_stoplist, mp_output);
    if (mquery->parsed())
      return cmd_mine_query(mq_index, mq_a, mq_b, mq_cues);
    if (msample->parsed())
      return cmd_mine_sample(ms_index, ms_items, ms_stoplist, ms_cues,
                             ms_min_support, ms_cue_bias, ms_size, ms_seed,
                             ms_output);
  }
  std::cerr << "config error: no subcommand\n";
  return compsent::kExitConfig;
}
