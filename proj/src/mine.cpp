#include "compsent/mine.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "compsent/preprocess.hpp"
#include "compsent/rng.hpp"

namespace compsent {

namespace {

std::vector<std::string> lower_tokens(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) out.push_back(t.lower);
  return out;
}

// True when `phrase` occurs as a contiguous run in `tokens`.
bool contains_run(const std::vector<std::string>& tokens,
                  const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return false;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < phrase.size(); ++j)
      if (tokens[i + j] != phrase[j]) {
        hit = false;
        break;
      }
    if (hit) return true;
  }
  return false;
}

std::string lowercase(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return s;
}

}  // namespace

void SentenceIndex::add(const std::string& id, const std::string& text) {
  if (id.empty()) throw MineError("empty sentence id");
  if (id.find('\t') != std::string::npos)
    throw MineError("sentence id '" + id + "' contains a tab");
  if (slot_of_.count(id)) throw MineError("duplicate sentence id '" + id + "'");
  int slot = static_cast<int>(ids_.size());
  slot_of_.emplace(id, slot);
  ids_.push_back(id);
  texts_.push_back(text);
  std::vector<std::string> toks = lower_tokens(text);
  std::sort(toks.begin(), toks.end());
  toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
  for (const auto& t : toks) postings_[t].push_back(slot);
}

const std::string* SentenceIndex::text_of(const std::string& id) const {
  auto it = slot_of_.find(id);
  return it == slot_of_.end() ? nullptr : &texts_[it->second];
}

const std::vector<int>& SentenceIndex::postings(const std::string& token) const {
  static const std::vector<int> empty;
  auto it = postings_.find(lowercase(token));
  return it == postings_.end() ? empty : it->second;
}

void SentenceIndex::save(std::ostream& out) const {
  out << "COMPSENT_INDEX 1\n" << ids_.size() << '\n';
  for (std::size_t i = 0; i < ids_.size(); ++i)
    out << ids_[i] << '\t' << texts_[i] << '\n';
}

SentenceIndex SentenceIndex::load(std::istream& in) {
  std::string magic;
  long version = 0;
  std::size_t count = 0;
  in >> magic >> version >> count;
  if (!in || magic != "COMPSENT_INDEX")
    throw MineError("not a sentence index file");
  if (version != 1)
    throw MineError("unsupported index version " + std::to_string(version));
  in.ignore();  // newline after the count
  SentenceIndex idx;
  std::string line;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw MineError("truncated index file");
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw MineError("index row " + std::to_string(i + 1) + " has no tab");
    idx.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return idx;
}

void SentenceIndex::save_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MineError("cannot write " + path);
  save(out);
}

SentenceIndex SentenceIndex::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MineError("cannot open " + path);
  return load(in);
}

SentenceIndex build_index(std::istream& in) {
  SentenceIndex idx;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw MineError("line " + std::to_string(line_no) +
                      ": expected id<TAB>sentence");
    idx.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return idx;
}

SentenceIndex build_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MineError("cannot open " + path);
  return build_index(in);
}

std::vector<TargetPair> generate_pairs(
    const std::vector<std::pair<std::string, std::string>>& items) {
  std::vector<TargetPair> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (items[i].second != items[j].second) continue;
      if (lowercase(items[i].first) == lowercase(items[j].first)) continue;
      out.push_back({items[i].first, items[j].first, items[i].second});
    }
  return out;
}

std::vector<std::string> query_pair(
    const SentenceIndex& index, const TargetPair& pair,
    const std::unordered_set<std::string>* cue_words) {
  std::vector<std::string> phrase_a = lower_tokens(pair.item_a);
  std::vector<std::string> phrase_b = lower_tokens(pair.item_b);
  if (phrase_a.empty() || phrase_b.empty()) return {};

  // Sorted-postings intersection over every token of both items.
  std::vector<std::string> terms = phrase_a;
  terms.insert(terms.end(), phrase_b.begin(), phrase_b.end());
  std::vector<int> slots = index.postings(terms[0]);
  for (std::size_t t = 1; t < terms.size() && !slots.empty(); ++t) {
    const std::vector<int>& next = index.postings(terms[t]);
    std::vector<int> merged;
    std::set_intersection(slots.begin(), slots.end(), next.begin(), next.end(),
                          std::back_inserter(merged));
    slots = std::move(merged);
  }

  std::vector<std::string> out;
  for (int slot : slots) {
    std::vector<std::string> toks = lower_tokens(index.text_at(slot));
    if (!contains_run(toks, phrase_a) || !contains_run(toks, phrase_b)) continue;
    if (cue_words) {
      bool cued = false;
      for (const auto& tok : toks)
        if (cue_words->count(tok)) {
          cued = true;
          break;
        }
      if (!cued) continue;
    }
    out.push_back(index.id_at(slot));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PairResults> query_all(
    const SentenceIndex& index, const std::vector<TargetPair>& pairs,
    const std::unordered_set<std::string>& cue_words) {
  std::vector<PairResults> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    PairResults r;
    r.pair = p;
    r.all_ids = query_pair(index, p);
    r.cue_ids = query_pair(index, p, &cue_words);
    out.push_back(std::move(r));
  }
  return out;
}

SampleResult sample_candidates(const std::vector<PairResults>& results,
                               long min_support, double cue_bias,
                               std::size_t sample_size, std::uint64_t seed) {
  if (cue_bias < 0.0 || cue_bias > 1.0)
    throw MineError("cue_bias must lie in [0, 1]");
  SampleResult out;

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (static_cast<long>(results[i].all_ids.size()) >= min_support)
      kept.push_back(i);
    else
      ++out.pairs_dropped;
  }
  out.pairs_kept = static_cast<long>(kept.size());

  // A seeded share of the kept pairs contributes cue-filtered hits.
  Rng rng(seed);
  std::vector<std::size_t> order = kept;
  Rng assign = rng.fork(1);
  shuffle(order, assign);
  std::size_t n_cue = static_cast<std::size_t>(
      cue_bias * static_cast<double>(order.size()) + 0.5);
  std::unordered_set<std::size_t> cued(order.begin(),
                                       order.begin() + static_cast<long>(n_cue));

  std::vector<Candidate> pool;
  for (std::size_t i : kept) {
    const auto& ids = cued.count(i) ? results[i].cue_ids : results[i].all_ids;
    for (const auto& id : ids) pool.push_back({id, results[i].pair});
  }

  if (pool.size() <= sample_size) {
    out.candidates = std::move(pool);
    out.shortfall = out.candidates.size() < sample_size;
    return out;
  }
  Rng draw = rng.fork(2);
  shuffle(pool, draw);
  pool.resize(sample_size);
  out.candidates = std::move(pool);
  return out;
}

std::string candidates_to_jsonl(const SentenceIndex& index,
                                const std::vector<Candidate>& candidates) {
  std::ostringstream out;
  for (const auto& c : candidates) {
    const std::string* text = index.text_of(c.id);
    if (!text) throw MineError("candidate id '" + c.id + "' not in index");
    nlohmann::json j;
    j["id"] = c.id;
    j["text"] = *text;
    j["object_a"] = c.pair.item_a;
    j["object_b"] = c.pair.item_b;
    j["domain"] = c.pair.pair_type;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::unordered_set<std::string> load_stoplist(std::istream& in) {
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                             line.back() == '\r'))
      line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    out.insert(lowercase(line.substr(start)));
  }
  return out;
}

std::unordered_set<std::string> load_stoplist_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MineError("cannot open " + path);
  return load_stoplist(in);
}

std::vector<TargetPair> apply_stoplist(
    const std::vector<TargetPair>& pairs,
    const std::unordered_set<std::string>& stoplist) {
  std::vector<TargetPair> out;
  for (const auto& p : pairs)
    if (!stoplist.count(lowercase(p.item_a)) &&
        !stoplist.count(lowercase(p.item_b)))
      out.push_back(p);
  return out;
}

}  // namespace compsent
