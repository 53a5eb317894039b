#include "compsent/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace compsent {

void SparseVector::set(std::uint32_t index, double value) {
  if (value == 0.0) return;
  if (!entries.empty() && entries.back().first == index) {
    entries.back().second += value;
    return;
  }
  entries.emplace_back(index, value);
}

double SparseVector::get(std::uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  return it != entries.end() && it->first == index ? it->second : 0.0;
}

namespace {

std::string lower_copy(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> ngrams_of(const std::vector<std::string>& tokens,
                                   int lo, int hi, bool lowercase) {
  std::vector<std::string> out;
  int n = static_cast<int>(tokens.size());
  for (int order = lo; order <= hi; ++order) {
    for (int i = 0; i + order <= n; ++i) {
      std::string term = lowercase ? lower_copy(tokens[i]) : tokens[i];
      for (int j = 1; j < order; ++j) {
        term += '_';
        term += lowercase ? lower_copy(tokens[i + j]) : tokens[i + j];
      }
      out.push_back(std::move(term));
    }
  }
  return out;
}

}  // namespace

Vocabulary Vocabulary::fit(const std::vector<std::vector<std::string>>& docs,
                           int ngram_lo, int ngram_hi, long min_df) {
  if (ngram_lo < 1 || ngram_lo > ngram_hi)
    throw FormatError("invalid ngram range");
  if (docs.empty()) throw EmptyVocabulary("no documents to fit on");

  std::map<std::string, long> df;  // ordered: gives lexicographic indices
  for (const auto& doc : docs) {
    auto terms = ngrams_of(doc, ngram_lo, ngram_hi, true);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (auto& t : terms) df[t]++;
  }

  Vocabulary v;
  v.num_docs_ = static_cast<long>(docs.size());
  v.ngram_lo_ = ngram_lo;
  v.ngram_hi_ = ngram_hi;
  for (auto& [term, count] : df) {
    if (count < min_df) continue;
    v.index_[term] = static_cast<std::uint32_t>(v.terms_.size());
    v.terms_.push_back(term);
    v.df_.push_back(count);
  }
  if (v.terms_.empty())
    throw EmptyVocabulary("every term fell below min_df");
  return v;
}

long Vocabulary::df(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? 0 : df_[it->second];
}

long Vocabulary::index_of(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SparseVector Vocabulary::vectorize(const std::vector<std::string>& tokens,
                                   Weighting weighting) const {
  std::map<std::uint32_t, double> tf;
  for (const auto& term : ngrams_of(tokens, ngram_lo_, ngram_hi_, true)) {
    auto it = index_.find(term);
    if (it != index_.end()) tf[it->second] += 1.0;
  }
  SparseVector out;
  out.dimension = terms_.size();
  for (auto& [index, count] : tf) {
    double w = count;
    if (weighting == Weighting::Binary) {
      w = 1.0;
    } else if (weighting == Weighting::TfIdf) {
      double idf = std::log((1.0 + static_cast<double>(num_docs_)) /
                            (1.0 + static_cast<double>(df_[index]))) + 1.0;
      w = count * idf;
    }
    out.entries.emplace_back(index, w);
  }
  return out;
}

SparseVector vectorize_bow(const std::vector<std::string>& tokens,
                           const Vocabulary& vocab, Weighting weighting) {
  return vocab.vectorize(tokens, weighting);
}

void Vocabulary::save(std::ostream& out) const {
  out << "vocabulary " << terms_.size() << ' ' << num_docs_ << ' ' << ngram_lo_
      << ' ' << ngram_hi_ << '\n';
  for (std::size_t i = 0; i < terms_.size(); ++i)
    out << terms_[i] << '\t' << df_[i] << '\n';
}

Vocabulary Vocabulary::load(std::istream& in) {
  std::string tag;
  std::size_t n = 0;
  Vocabulary v;
  in >> tag >> n >> v.num_docs_ >> v.ngram_lo_ >> v.ngram_hi_;
  if (!in || tag != "vocabulary") throw FormatError("bad vocabulary header");
  in.ignore();
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("truncated vocabulary");
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("bad vocabulary row");
    v.index_[line.substr(0, tab)] = static_cast<std::uint32_t>(v.terms_.size());
    v.terms_.push_back(line.substr(0, tab));
    v.df_.push_back(std::stol(line.substr(tab + 1)));
  }
  return v;
}

PosNgramSpace PosNgramSpace::fit(
    const std::vector<std::vector<std::string>>& tag_seqs, std::size_t capacity) {
  std::map<std::string, long> freq;
  for (const auto& tags : tag_seqs)
    for (const auto& term : ngrams_of(tags, 2, 4, false)) freq[term]++;

  std::vector<std::pair<std::string, long>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > capacity) ranked.resize(capacity);

  std::sort(ranked.begin(), ranked.end());  // lexicographic index assignment
  PosNgramSpace s;
  for (auto& [term, count] : ranked) {
    s.index_[term] = static_cast<std::uint32_t>(s.terms_.size());
    s.terms_.push_back(term);
  }
  return s;
}

long PosNgramSpace::index_of(const std::string& ngram) const {
  auto it = index_.find(ngram);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SparseVector PosNgramSpace::vectorize(const std::vector<std::string>& tags) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& term : ngrams_of(tags, 2, 4, false)) {
    auto it = index_.find(term);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  out.dimension = terms_.size();
  for (auto& [index, count] : counts) out.entries.emplace_back(index, count);
  return out;
}

SparseVector vectorize_pos_ngrams(const std::vector<std::string>& tags,
                                  const PosNgramSpace& space) {
  return space.vectorize(tags);
}

void PosNgramSpace::save(std::ostream& out) const {
  out << "pos_ngrams " << terms_.size() << '\n';
  for (const auto& t : terms_) out << t << '\n';
}

PosNgramSpace PosNgramSpace::load(std::istream& in) {
  std::string tag;
  std::size_t n = 0;
  in >> tag >> n;
  if (!in || tag != "pos_ngrams") throw FormatError("bad pos_ngrams header");
  in.ignore();
  PosNgramSpace s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("truncated pos_ngrams");
    s.index_[line] = static_cast<std::uint32_t>(s.terms_.size());
    s.terms_.push_back(line);
  }
  return s;
}

SparseVector contains_jjr(const std::vector<std::string>& tags) {
  SparseVector out;
  out.dimension = 1;
  for (const auto& t : tags)
    if (t == "JJR") {
      out.entries.emplace_back(0, 1.0);
      break;
    }
  return out;
}

EmbeddingTable EmbeddingTable::load(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    DenseVector vec;
    double x;
    while (ss >> x) vec.push_back(x);
    if (vec.empty())
      throw FormatError("line " + std::to_string(lineno) + ": no vector values");
    if (table.dimension_ == 0) {
      table.dimension_ = vec.size();
    } else if (vec.size() != table.dimension_) {
      throw FormatError("line " + std::to_string(lineno) +
                        ": dimension " + std::to_string(vec.size()) +
                        " differs from " + std::to_string(table.dimension_));
    }
    table.vectors_.emplace(word, std::move(vec));  // first occurrence wins
  }
  return table;
}

EmbeddingTable EmbeddingTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return load(in);
}

const DenseVector* EmbeddingTable::find(const std::string& word) const {
  auto it = vectors_.find(word);
  return it == vectors_.end() ? nullptr : &it->second;
}

DenseVector average_embedding(const std::vector<std::string>& tokens,
                              const EmbeddingTable& table) {
  if (table.size() == 0) throw FormatError("empty embedding table");
  DenseVector sum(table.dimension(), 0.0);
  long hits = 0;
  for (const auto& tok : tokens) {
    const DenseVector* v = table.find(lower_copy(tok));
    if (!v) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++hits;
  }
  if (hits > 0)
    for (double& x : sum) x /= static_cast<double>(hits);
  return sum;
}

SparseVector to_sparse(const DenseVector& v) {
  SparseVector out;
  out.dimension = v.size();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0) out.entries.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return out;
}

SparseVector concat_features(const std::vector<SparseVector>& parts) {
  SparseVector out;
  for (const auto& p : parts) {
    for (const auto& [index, value] : p.entries)
      out.entries.emplace_back(static_cast<std::uint32_t>(out.dimension + index), value);
    out.dimension += p.dimension;
  }
  return out;
}

SparseVector concat_features(const std::vector<FeatureVector>& parts) {
  std::vector<SparseVector> sparse;
  sparse.reserve(parts.size());
  for (const auto& p : parts) {
    if (std::holds_alternative<SparseVector>(p))
      sparse.push_back(std::get<SparseVector>(p));
    else
      sparse.push_back(to_sparse(std::get<DenseVector>(p)));
  }
  return concat_features(sparse);
}

}  // namespace compsent
