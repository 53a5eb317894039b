#pragma once

// Declarative experiment runner: a key=value config selecting dataset,
// preprocessing, features, model and evaluation mode, plus the execution
// entry point used by the command-line front end. Identical config and
// seed produce byte-identical report files.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "compsent/corpus.hpp"
#include "compsent/pipeline.hpp"

namespace compsent {

// Process exit codes shared with the CLI.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitRuntime = 4;

enum class EvalMode { Holdout, Cv, CrossDomain, Baseline };

struct ExperimentConfig {
  std::string dataset_path;
  std::string dataset_format = "jsonl";  // "jsonl" or "csv"
  CsvColumnMap csv_columns;
  double min_confidence = 0.5;

  EvalMode mode = EvalMode::Cv;
  PipelineSpec pipeline;

  double holdout_fraction = 0.8;  // training share of the split
  int folds = 5;
  std::uint64_t seed = 7;

  std::string output_dir = ".";
  bool chart = false;
  bool write_errors = false;
};

// Applies one "key=value" setting. Returns true when the key is known and
// the value parses; otherwise appends a message to problems and leaves the
// config unchanged.
bool apply_setting(ExperimentConfig& cfg, const std::string& key,
                   const std::string& value,
                   std::vector<std::string>& problems);

// Reads a config file: one key=value per line, '#' comments, blank lines
// ignored. Parse problems accumulate; the file is read to the end.
void load_config_file(ExperimentConfig& cfg, const std::string& path,
                      std::vector<std::string>& problems);

// Applies command-line overrides of the same key=value form.
void apply_overrides(ExperimentConfig& cfg,
                     const std::vector<std::string>& overrides,
                     std::vector<std::string>& problems);

// Every validation problem, not just the first.
std::vector<std::string> validate(const ExperimentConfig& cfg);

// Caps OpenMP workers from the COMPSENT_THREADS environment variable; a
// missing or unparsable value leaves the runtime default.
void apply_thread_cap();

// Runs the configured experiment, writes report files into output_dir and
// logs progress to `log`. Returns a process exit code.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

const char* eval_mode_name(EvalMode m);

}  // namespace compsent
