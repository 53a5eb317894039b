#pragma once

// Feature representations: bag of token n-grams with binary/tf/tf-idf
// weights, POS n-grams, the comparative-tag flag, averaged word embeddings
// and dependency-path features with a hashed bag-of-paths encoding.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace compsent {

struct EmptyVocabulary : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse vector with strictly increasing indices and no explicit zeros.
struct SparseVector {
  std::size_t dimension = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  void set(std::uint32_t index, double value);  // append-or-accumulate helper
  double get(std::uint32_t index) const;
};

using DenseVector = std::vector<double>;

enum class Weighting { Binary, Tf, TfIdf };

class Vocabulary {
 public:
  // Lowercased n-grams of orders [lo, hi] with document frequency >= min_df;
  // indices assigned lexicographically. Terms of order > 1 join tokens
  // with '_'.
  static Vocabulary fit(const std::vector<std::vector<std::string>>& docs,
                        int ngram_lo, int ngram_hi, long min_df);

  std::size_t size() const { return terms_.size(); }
  long num_docs() const { return num_docs_; }
  int ngram_lo() const { return ngram_lo_; }
  int ngram_hi() const { return ngram_hi_; }
  long df(const std::string& term) const;
  long index_of(const std::string& term) const;  // -1 when absent
  const std::vector<std::string>& terms() const { return terms_; }

  SparseVector vectorize(const std::vector<std::string>& tokens,
                         Weighting weighting) const;

  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);

 private:
  std::vector<std::string> terms_;  // index -> term, sorted
  std::vector<long> df_;
  std::unordered_map<std::string, std::uint32_t> index_;
  long num_docs_ = 0;
  int ngram_lo_ = 1, ngram_hi_ = 1;
};

SparseVector vectorize_bow(const std::vector<std::string>& tokens,
                           const Vocabulary& vocab, Weighting weighting);

class PosNgramSpace {
 public:
  // Retains the `capacity` most frequent POS bi-, tri- and four-grams;
  // frequency ties break lexicographically (smaller kept).
  static PosNgramSpace fit(const std::vector<std::vector<std::string>>& tag_seqs,
                           std::size_t capacity = 500);

  std::size_t size() const { return terms_.size(); }
  long index_of(const std::string& ngram) const;
  const std::vector<std::string>& terms() const { return terms_; }

  SparseVector vectorize(const std::vector<std::string>& tags) const;

  void save(std::ostream& out) const;
  static PosNgramSpace load(std::istream& in);

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

SparseVector vectorize_pos_ngrams(const std::vector<std::string>& tags,
                                  const PosNgramSpace& space);

// Length-1 vector: 1 iff any tag is JJR.
SparseVector contains_jjr(const std::vector<std::string>& tags);

class EmbeddingTable {
 public:
  // One "word v1 ... vD" per line; D fixed by the first line; duplicate
  // words keep the first occurrence. Inconsistent dimension raises
  // FormatError naming the line.
  static EmbeddingTable load(std::istream& in);
  static EmbeddingTable load_file(const std::string& path);

  std::size_t size() const { return vectors_.size(); }
  std::size_t dimension() const { return dimension_; }
  const DenseVector* find(const std::string& word) const;

 private:
  std::unordered_map<std::string, DenseVector> vectors_;
  std::size_t dimension_ = 0;
};

// Mean of the vectors of in-table lowercased tokens; unknown tokens are
// skipped; no known token yields the zero vector. Empty table is an error.
DenseVector average_embedding(const std::vector<std::string>& tokens,
                              const EmbeddingTable& table);

// --- dependency paths --------------------------------------------------

struct DepToken {
  std::string form;
  std::string lemma;
  std::string pos;
  int head = 0;  // 1-based; 0 is the artificial root
  std::string rel;
};

struct DependencyGraph {
  std::vector<DepToken> tokens;
};

// Parses "index<TAB>form<TAB>lemma<TAB>pos<TAB>head<TAB>rel" lines and
// validates the tree shape (one root, heads in range, acyclic).
DependencyGraph parse_conll(const std::string& block);
void validate_graph(const DependencyGraph& g);

enum class EdgeDir { Up, Down, Anchor };

struct PathNode {
  std::string lemma;
  std::string pos;
  std::string rel;
  EdgeDir dir = EdgeDir::Anchor;
};

struct DependencyPath {
  bool nopath = true;
  std::vector<PathNode> nodes;  // first head .. common ancestor .. second head

  int edge_count() const {
    return nopath || nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1;
  }
};

enum class DepPathMode { Original, Customized };

struct PathSpans {  // token index ranges of the two located targets, inclusive
  int first_begin = 0, first_end = 0;
  int second_begin = 0, second_end = 0;
};

// Tree path between the head tokens of the two target spans.
// Original mode accepts paths of at most 4 edges whose first branch descends
// to dependents before the common ancestor and whose second branch descends
// to dependents after it; customized mode accepts up to 16 edges regardless
// of direction. Anything else is NOPATH.
DependencyPath extract_dependency_path(const DependencyGraph& graph,
                                       const PathSpans& spans,
                                       DepPathMode mode);

std::string render_path_node(const PathNode& node);

// Bag of hashed path unigrams and adjacent bigrams; FNV-1a 64-bit over the
// node renderings, mapped to 1 + h mod (dimension-1). Index 0 is reserved
// for NOPATH.
SparseVector hash_path_features(const DependencyPath& path,
                                std::size_t dimension = 4096);

// --- combination --------------------------------------------------------

using FeatureVector = std::variant<SparseVector, DenseVector>;

SparseVector to_sparse(const DenseVector& v);
SparseVector concat_features(const std::vector<FeatureVector>& parts);
SparseVector concat_features(const std::vector<SparseVector>& parts);

}  // namespace compsent
