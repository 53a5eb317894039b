#include "compsent/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "compsent/rng.hpp"
#include "json.hpp"

namespace compsent {

using nlohmann::json;

const char* label_name(Label l) {
  switch (l) {
    case Label::None: return "NONE";
    case Label::Better: return "BETTER";
    case Label::Worse: return "WORSE";
  }
  return "?";
}

std::optional<Label> parse_label(const std::string& s) {
  if (s == "NONE") return Label::None;
  if (s == "BETTER") return Label::Better;
  if (s == "WORSE") return Label::Worse;
  return std::nullopt;
}

namespace {

std::string record_err(std::size_t line, const std::string& what) {
  return "record " + std::to_string(line) + ": " + what;
}

void validate_sentence(const LabeledSentence& s, std::size_t line) {
  auto lower = [](std::string t) {
    for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return t;
  };
  if (s.text.empty()) throw DataError(record_err(line, "empty field 'text'"));
  if (s.object_a.empty()) throw DataError(record_err(line, "empty field 'object_a'"));
  if (s.object_b.empty()) throw DataError(record_err(line, "empty field 'object_b'"));
  if (lower(s.object_a) == lower(s.object_b))
    throw DataError(record_err(line, "object_a equals object_b"));
  if (s.confidence < 0.0 || s.confidence > 1.0)
    throw DataError(record_err(line, "field 'confidence' outside [0,1]"));
  if (s.domain.empty()) throw DataError(record_err(line, "empty field 'domain'"));
}

}  // namespace

Dataset load_jsonl(std::istream& in, const std::string& provenance) {
  Dataset ds;
  ds.provenance = provenance;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(record_err(lineno, std::string("invalid JSON: ") + e.what()));
    }
    LabeledSentence s;
    auto need = [&](const char* field) -> const json& {
      auto it = j.find(field);
      if (it == j.end())
        throw DataError(record_err(lineno, std::string("missing field '") + field + "'"));
      return *it;
    };
    try {
      s.id = need("id").get<std::string>();
      s.text = need("text").get<std::string>();
      s.object_a = need("object_a").get<std::string>();
      s.object_b = need("object_b").get<std::string>();
      s.domain = need("domain").get<std::string>();
      std::string lab = need("label").get<std::string>();
      auto parsed = parse_label(lab);
      if (!parsed)
        throw DataError(record_err(lineno, "unknown label '" + lab + "'"));
      s.label = *parsed;
      if (j.contains("confidence")) s.confidence = j["confidence"].get<double>();
      if (j.contains("pos")) s.pos = j["pos"].get<std::vector<std::string>>();
      if (j.contains("conll")) s.conll = j["conll"].get<std::string>();
    } catch (const json::exception& e) {
      throw DataError(record_err(lineno, std::string("bad field type: ") + e.what()));
    }
    validate_sentence(s, lineno);
    if (!seen_ids.insert(s.id).second)
      throw DataError(record_err(lineno, "duplicate id '" + s.id + "'"));
    ds.sentences.push_back(std::move(s));
  }
  return ds;
}

Dataset load_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return load_jsonl(in, path);
}

void save_jsonl(const Dataset& ds, std::ostream& out) {
  for (const auto& s : ds.sentences) {
    json j;
    j["id"] = s.id;
    j["text"] = s.text;
    j["object_a"] = s.object_a;
    j["object_b"] = s.object_b;
    j["label"] = label_name(s.label);
    j["domain"] = s.domain;
    j["confidence"] = s.confidence;
    if (!s.pos.empty()) j["pos"] = s.pos;
    if (!s.conll.empty()) j["conll"] = s.conll;
    out << j.dump() << '\n';
  }
}

void save_jsonl_file(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path + " for writing");
  save_jsonl(ds, out);
}

namespace {

// RFC-4180-ish row reader: quoted fields, doubled quotes, embedded commas.
bool read_csv_row(std::istream& in, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool in_quotes = false, any = false;
  int c;
  while ((c = in.get()) != EOF) {
    any = true;
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') { field.push_back('"'); in.get(); }
        else in_quotes = false;
      } else field.push_back(ch);
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      out.push_back(field); field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  if (!any) return false;
  out.push_back(field);
  return true;
}

}  // namespace

Dataset load_csv(std::istream& in, const CsvColumnMap& map,
                 const std::string& provenance) {
  std::vector<std::string> header;
  if (!read_csv_row(in, header)) throw DataError("empty CSV input");
  std::map<std::string, std::size_t> col_of;
  for (std::size_t i = 0; i < header.size(); ++i) col_of[header[i]] = i;

  auto col_index = [&](const std::string& field, bool required) -> long {
    auto it = map.columns.find(field);
    if (it == map.columns.end()) {
      if (required) throw DataError("column map misses required field '" + field + "'");
      return -1;
    }
    auto hit = col_of.find(it->second);
    if (hit == col_of.end())
      throw DataError("CSV has no column '" + it->second + "' (mapped from '" + field + "')");
    return static_cast<long>(hit->second);
  };

  long ci_id = col_index("id", false);
  long ci_text = col_index("text", true);
  long ci_a = col_index("object_a", true);
  long ci_b = col_index("object_b", true);
  long ci_label = col_index("label", true);
  long ci_domain = col_index("domain", false);
  long ci_conf = col_index("confidence", false);

  Dataset ds;
  ds.provenance = provenance;
  std::set<std::string> seen_ids;
  std::vector<std::string> row;
  std::size_t lineno = 1;
  while (read_csv_row(in, row)) {
    ++lineno;
    if (row.size() == 1 && row[0].empty()) continue;
    auto cell = [&](long i) -> std::string {
      if (i < 0 || static_cast<std::size_t>(i) >= row.size())
        throw DataError(record_err(lineno, "row has too few columns"));
      return row[static_cast<std::size_t>(i)];
    };
    LabeledSentence s;
    s.id = ci_id >= 0 ? cell(ci_id) : std::to_string(lineno - 1);
    s.text = cell(ci_text);
    s.object_a = cell(ci_a);
    s.object_b = cell(ci_b);
    std::string lab = cell(ci_label);
    auto parsed = parse_label(lab);
    if (!parsed) throw DataError(record_err(lineno, "unknown label '" + lab + "'"));
    s.label = *parsed;
    s.domain = ci_domain >= 0 ? cell(ci_domain) : map.default_domain;
    if (ci_conf >= 0) {
      try {
        s.confidence = std::stod(cell(ci_conf));
      } catch (const std::exception&) {
        throw DataError(record_err(lineno, "field 'confidence' is not a number"));
      }
    }
    validate_sentence(s, lineno);
    if (!seen_ids.insert(s.id).second)
      throw DataError(record_err(lineno, "duplicate id '" + s.id + "'"));
    ds.sentences.push_back(std::move(s));
  }
  return ds;
}

Dataset filter_by_confidence(const Dataset& ds, double min_conf) {
  if (min_conf < 0.0 || min_conf > 1.0)
    throw DataError("min_conf outside [0,1]");
  Dataset out;
  out.provenance = ds.provenance;
  for (const auto& s : ds.sentences)
    if (s.confidence >= min_conf) out.sentences.push_back(s);
  return out;
}

std::pair<Dataset, Dataset> stratified_holdout_split(const Dataset& ds,
                                                     double train_fraction,
                                                     std::uint64_t seed) {
  if (ds.sentences.empty()) throw DataError("cannot split an empty dataset");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw DataError("train_fraction must be in (0,1)");

  std::array<std::vector<std::size_t>, 3> strata;
  for (std::size_t i = 0; i < ds.sentences.size(); ++i)
    strata[static_cast<int>(ds.sentences[i].label)].push_back(i);

  std::vector<char> in_train(ds.sentences.size(), 0);
  Rng rng(seed);
  for (int l = 0; l < kNumLabels; ++l) {
    auto& idx = strata[l];
    Rng stratum = rng.fork(static_cast<std::uint64_t>(l));
    shuffle(idx, stratum);
    auto n_train = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(idx.size()) + 0.5));
    for (std::size_t i = 0; i < n_train; ++i) in_train[idx[i]] = 1;
  }

  Dataset train, test;
  train.provenance = ds.provenance + " [train]";
  test.provenance = ds.provenance + " [test]";
  for (std::size_t i = 0; i < ds.sentences.size(); ++i)
    (in_train[i] ? train : test).sentences.push_back(ds.sentences[i]);
  return {std::move(train), std::move(test)};
}

StatsReport dataset_stats(const Dataset& ds) {
  StatsReport r;
  std::map<std::string, std::array<long, 3>> per_domain;
  for (const auto& s : ds.sentences)
    per_domain[s.domain][static_cast<int>(s.label)]++;
  for (auto& [domain, counts] : per_domain) {
    r.domains.push_back(domain);
    r.counts.push_back(counts);
    long total = counts[0] + counts[1] + counts[2];
    r.domain_totals.push_back(total);
    for (int l = 0; l < 3; ++l) r.label_totals[l] += counts[l];
    r.grand_total += total;
  }
  return r;
}

namespace {
// Stats rows print BETTER / WORSE / NONE, the usual presentation order for
// this corpus; internal storage stays in canonical order.
constexpr int kDisplayOrder[3] = {1, 2, 0};
}  // namespace

std::string stats_to_csv(const StatsReport& r) {
  std::ostringstream out;
  out << "domain,better,worse,none,total\n";
  for (std::size_t d = 0; d < r.domains.size(); ++d) {
    out << r.domains[d];
    for (int l : kDisplayOrder) out << ',' << r.counts[d][l];
    out << ',' << r.domain_totals[d] << '\n';
  }
  out << "Total";
  for (int l : kDisplayOrder) out << ',' << r.label_totals[l];
  out << ',' << r.grand_total << '\n';
  return out.str();
}

std::string stats_to_markdown(const StatsReport& r) {
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"Domain", "BETTER", "WORSE", "NONE", "Total"});
  for (std::size_t d = 0; d < r.domains.size(); ++d) {
    std::array<std::string, 5> row;
    row[0] = r.domains[d];
    for (int i = 0; i < 3; ++i) row[1 + i] = std::to_string(r.counts[d][kDisplayOrder[i]]);
    row[4] = std::to_string(r.domain_totals[d]);
    rows.push_back(row);
  }
  std::array<std::string, 5> total{"Total", "", "", "", std::to_string(r.grand_total)};
  for (int i = 0; i < 3; ++i) total[1 + i] = std::to_string(r.label_totals[kDisplayOrder[i]]);
  rows.push_back(total);

  std::array<std::size_t, 5> width{};
  for (const auto& row : rows)
    for (int c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());

  std::ostringstream out;
  auto emit = [&](const std::array<std::string, 5>& row) {
    out << '|';
    for (int c = 0; c < 5; ++c) {
      out << ' ' << row[c] << std::string(width[c] - row[c].size(), ' ') << " |";
    }
    out << '\n';
  };
  emit(rows[0]);
  out << '|';
  for (int c = 0; c < 5; ++c) out << ' ' << std::string(width[c], '-') << " |";
  out << '\n';
  for (std::size_t i = 1; i < rows.size(); ++i) emit(rows[i]);
  return out.str();
}

}  // namespace compsent
