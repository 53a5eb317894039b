#pragma once

// Candidate mining over a local sentence corpus: an inverted index with
// adjacency-verified phrase queries, all-pairs generation from seed lists,
// cue-biased sampling with a minimum-support filter, and a stoplist hook
// for ambiguous item names.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace compsent {

struct MineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TargetPair {
  std::string item_a;
  std::string item_b;
  std::string pair_type;  // seed list the pair came from
};

// Immutable once built; postings are sorted and duplicate-free, so queries
// are plain sorted intersections plus an adjacency check on the survivors.
class SentenceIndex {
 public:
  // Duplicate or tab-containing ids are rejected.
  void add(const std::string& id, const std::string& text);

  std::size_t size() const { return ids_.size(); }
  const std::string* text_of(const std::string& id) const;

  // Internal slots of sentences containing the token (lowercased).
  const std::vector<int>& postings(const std::string& token) const;

  const std::string& id_at(int slot) const { return ids_[slot]; }
  const std::string& text_at(int slot) const { return texts_[slot]; }

  void save(std::ostream& out) const;
  static SentenceIndex load(std::istream& in);
  void save_file(const std::string& path) const;
  static SentenceIndex load_file(const std::string& path);

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> texts_;
  std::unordered_map<std::string, int> slot_of_;
  std::unordered_map<std::string, std::vector<int>> postings_;
};

// Reads "id<TAB>sentence" lines; blank lines are skipped.
SentenceIndex build_index(std::istream& in);
SentenceIndex build_index_file(const std::string& path);

// All unordered within-type pairs, emitted in input order. Items equal
// case-insensitively never pair with each other.
std::vector<TargetPair> generate_pairs(
    const std::vector<std::pair<std::string, std::string>>& items);

// Ids of sentences containing both items as adjacent token runs
// (case-insensitive) and, when cue_words is non-null, at least one cue
// token. Sorted ascending by id.
std::vector<std::string> query_pair(
    const SentenceIndex& index, const TargetPair& pair,
    const std::unordered_set<std::string>* cue_words = nullptr);

struct PairResults {
  TargetPair pair;
  std::vector<std::string> all_ids;  // plain pair query
  std::vector<std::string> cue_ids;  // pair query with the cue set
};

// Runs both query variants for every pair.
std::vector<PairResults> query_all(
    const SentenceIndex& index, const std::vector<TargetPair>& pairs,
    const std::unordered_set<std::string>& cue_words);

struct Candidate {
  std::string id;
  TargetPair pair;
};

struct SampleResult {
  std::vector<Candidate> candidates;
  long pairs_kept = 0;
  long pairs_dropped = 0;  // below min_support
  bool shortfall = false;  // pool smaller than the requested sample
};

// Drops pairs with fewer than min_support plain hits, assigns a seeded
// cue_bias share of the kept pairs to their cue-filtered result lists, pools
// the rest unfiltered, and draws sample_size candidates without replacement.
SampleResult sample_candidates(const std::vector<PairResults>& results,
                               long min_support, double cue_bias,
                               std::size_t sample_size, std::uint64_t seed);

// Candidates as JSONL rows with id, text, object_a, object_b and the pair
// type as domain; texts come from the index.
std::string candidates_to_jsonl(const SentenceIndex& index,
                                const std::vector<Candidate>& candidates);

// One lowercased item name per line, '#' starts a comment.
std::unordered_set<std::string> load_stoplist(std::istream& in);
std::unordered_set<std::string> load_stoplist_file(const std::string& path);

// Removes pairs where either item is stoplisted (case-insensitive).
std::vector<TargetPair> apply_stoplist(
    const std::vector<TargetPair>& pairs,
    const std::unordered_set<std::string>& stoplist);

}  // namespace compsent
