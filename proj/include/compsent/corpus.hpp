#pragma once

// Data model for annotated comparative sentences: ingestion (JSONL and
// column-mapped CSV), confidence filtering, stratified holdout split and
// per-domain statistics.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace compsent {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical order None < Better < Worse; every tie in the library breaks
// in this order.
enum class Label : int { None = 0, Better = 1, Worse = 2 };
inline constexpr int kNumLabels = 3;

const char* label_name(Label l);
std::optional<Label> parse_label(const std::string& s);

struct LabeledSentence {
  std::string id;
  std::string text;
  std::string object_a;  // the label's reference item
  std::string object_b;
  Label label = Label::None;
  std::string domain;
  double confidence = 1.0;              // fraction of agreeing judgments
  std::vector<std::string> pos;         // optional pre-supplied POS tags
  std::string conll;                    // optional dependency block, CoNLL-ish
};

struct Dataset {
  std::vector<LabeledSentence> sentences;
  std::string provenance;

  std::size_t size() const { return sentences.size(); }
};

struct StatsReport {
  std::vector<std::string> domains;                 // sorted
  std::vector<std::array<long, 3>> counts;          // [domain][label]
  std::vector<long> domain_totals;
  std::array<long, 3> label_totals{0, 0, 0};
  long grand_total = 0;
};

// --- ingestion -------------------------------------------------------------

// One JSON object per line; fields as in LabeledSentence. "confidence"
// defaults to 1.0 when absent. Malformed records raise DataError naming the
// line and field.
Dataset load_jsonl(std::istream& in, const std::string& provenance = "");
Dataset load_jsonl_file(const std::string& path);

void save_jsonl(const Dataset& ds, std::ostream& out);
void save_jsonl_file(const Dataset& ds, const std::string& path);

// Column-mapped CSV import. `columns` maps LabeledSentence field names
// (id, text, object_a, object_b, label, domain, confidence) to header names
// in the file. id/domain/confidence may be omitted: ids are then row numbers,
// domain falls back to `default_domain`, confidence to 1.0.
struct CsvColumnMap {
  std::map<std::string, std::string> columns;
  std::string default_domain = "unknown";
};
Dataset load_csv(std::istream& in, const CsvColumnMap& map,
                 const std::string& provenance = "");

// --- operations ------------------------------------------------------------

// Keeps sentences with confidence >= min_conf, order preserved.
Dataset filter_by_confidence(const Dataset& ds, double min_conf);

// Deterministic stratified split: per label, round(train_fraction * n) go to
// train after a seeded shuffle (see rng.hpp for the fixed generator).
std::pair<Dataset, Dataset> stratified_holdout_split(const Dataset& ds,
                                                     double train_fraction,
                                                     std::uint64_t seed);

StatsReport dataset_stats(const Dataset& ds);

std::string stats_to_csv(const StatsReport& r);
std::string stats_to_markdown(const StatsReport& r);

}  // namespace compsent
