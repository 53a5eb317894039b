#include "compsent/synth.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "compsent/rng.hpp"

namespace compsent {

namespace {

constexpr int kDomains = 3;
const char* const kDomainNames[kDomains] = {"compsci", "brands", "random"};

// Per-domain label targets, order BETTER / WORSE / NONE. The family table
// below must tally to exactly these.
constexpr int kTargets[kDomains][3] = {
    {581, 248, 1596},
    {404, 167, 1764},
    {379, 178, 1882},
};
constexpr int kKeptTotal = 7199;
constexpr int kBelowThreshold[kDomains] = {100, 100, 101};

// Confidence tiers over the kept rows: 71% fully agreed annotations, the
// rest split evenly between strong and weak majorities.
constexpr int kTierFull = 5111;
constexpr int kTierStrong = 1044;
constexpr int kTierWeak = 1044;

const char* const kItems[kDomains][18] = {
    {"Python", "Java", "Ruby", "Matlab", "Fortran", "Haskell", "Redis",
     "Postgres", "MySQL", "Eclipse", "Vim", "Emacs", "Ubuntu", "Fedora",
     "Django", "Flask", "Visual Basic", "Sublime Text"},
    {"Toyota", "Honda", "Ford", "Nikon", "Canon", "Sony", "Samsung", "Dell",
     "Asus", "Rolex", "Seiko", "Ikea", "Lego", "Adidas", "Puma", "Nutella",
     "Land Rover", "Coca Cola"},
    {"chess", "poker", "tea", "coffee", "jogging", "cycling", "autumn",
     "spring", "cats", "dogs", "pizza", "sushi", "violin", "piano", "yoga",
     "pilates", "ice cream", "table tennis"},
};

const char* const kBlandBegins[] = {
    "",
    "Honestly,",
    "In my experience,",
    "From what I saw,",
    "After months of use,",
    "For most people,",
    "On paper,",
    "In practice,",
    "Around here,",
    "By most accounts,",
};

// Hearsay framings for comparative-looking sentences annotated as holding
// no actual preference.
const char* const kClaimBegins[] = {
    "Some reviewers claim", "A friend insists", "One blog argues",
    "Folks often say",      "Rumor has it",
};

const char* const kBlandEnds[] = {
    ".",
    "these days.",
    "in most cases.",
    "for daily use.",
    "overall.",
    "in the long run.",
    "by a clear margin.",
};

const char* const kWinnerEnds[] = {
    ", and the winner is obvious.",
    ", and it was never close.",
    ", and everyone I know agrees.",
};

const char* const kLoserEnds[] = {
    ", and I regret picking the former.",
    ", and the former let me down.",
    ", and the former keeps letting me down.",
};

const char* const kQuestionEnds[] = {
    ", which do you use?",
    ", hard to compare.",
    ", any thoughts?",
    "; both have fans.",
};

const char* const kBetterEnds[] = {
    ", clearly better all around.",
    ", simply the better option.",
};

const char* const kWorseEnds[] = {
    ", a worse fit overall.",
    ", the worse choice by far.",
};

const char* const kConcessionEnds[] = {
    "even when slower.",
    "despite the slower start.",
};

const char* const kPickEnds[] = {
    "as the better pick.",
    "as the better value.",
};

const char* const kPurposeEnds[] = {
    "for better results.",
    "for a better workflow.",
};

const char* const kGrudgeEnds[] = {
    "despite worse timing.",
    "despite the worse delivery.",
};

const char* const kTurnEnds[] = {
    "is better overall.",
};

struct Pool {
  const char* const* words;
  int n;
};

template <int N>
constexpr Pool pool(const char* const (&arr)[N]) {
  return {arr, N};
}

struct FamilySpec {
  const char* middle;
  Label gold;
  Pool begins;
  Pool ends;
  std::array<int, kDomains> count;
  // Families whose sentences sometimes store the pair in reverse order.
  bool swap_some = false;
};

const std::vector<FamilySpec>& family_table() {
  static const std::vector<FamilySpec> table = {
      // Plain comparative statements; the hearsay variants share the exact
      // token span between the targets, so bag-of-words features cannot
      // separate them from the sincere majority.
      {"is better than", Label::Better, pool(kBlandBegins), pool(kBlandEnds),
       {170, 220, 180}},
      {"is better than", Label::None, pool(kClaimBegins), pool(kBlandEnds),
       {85, 110, 90}},
      {"is worse than", Label::Worse, pool(kBlandBegins), pool(kBlandEnds),
       {64, 60, 50}},
      {"is worse than", Label::None, pool(kClaimBegins), pool(kBlandEnds),
       {32, 30, 25}},

      // Bare "vs" head-to-heads: the stance, if any, lives outside the span
      // between the targets.
      {"vs", Label::Better, pool(kBlandBegins), pool(kWinnerEnds),
       {165, 132, 100}},
      {"vs", Label::Worse, pool(kBlandBegins), pool(kLoserEnds),
       {130, 90, 88}},
      {"vs", Label::None, pool(kBlandBegins), pool(kQuestionEnds),
       {590, 444, 376}},

      // Less common phrasings of direct preference.
      {"runs better than", Label::Better, pool(kBlandBegins), pool(kBlandEnds),
       {9, 2, 2}},
      {"isn't worse than", Label::Better, pool(kBlandBegins), pool(kBlandEnds),
       {8, 2, 1}},
      {"is slower than", Label::Worse, pool(kBlandBegins), pool(kBlandEnds),
       {4, 1, 2}},
      {"isn't better than", Label::Worse, pool(kBlandBegins), pool(kBlandEnds),
       {2, 1, 2}},
      {"promises plenty, but", Label::Worse, pool(kBlandBegins),
       pool(kTurnEnds), {2, 1, 2}},

      // Concessive and idiomatic comparisons where the surface cue points
      // the wrong way or is missing entirely.
      {"eclipses", Label::Better, pool(kBlandBegins), pool(kConcessionEnds),
       {35, 24, 23}},
      {"bows to", Label::Worse, pool(kBlandBegins), pool(kPickEnds),
       {12, 8, 9}},
      {"beats", Label::Better, pool(kBlandBegins), pool(kBlandEnds),
       {9, 6, 6}},
      {"lags behind", Label::Worse, pool(kBlandBegins), pool(kBlandEnds),
       {12, 6, 6}},
      {"sits beside", Label::None, pool(kBlandBegins), pool(kPurposeEnds),
       {19, 10, 17}},
      {"ships alongside", Label::None, pool(kBlandBegins), pool(kGrudgeEnds),
       {11, 18, 18}},

      // Neutral co-mentions.
      {"and", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {80, 108, 137}, true},
      {"or", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {80, 108, 137}, true},
      {"alongside", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {80, 108, 137}, true},
      {"next to", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {80, 107, 137}, true},
      {"paired with", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {80, 107, 136}, true},
      {"together with", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {80, 107, 136}, true},
      {"as well as", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {79, 107, 136}, true},

      // Domain-flavored phrasings. Which domains share a phrasing controls
      // how well models carry over between domains.
      {"compiles leaner binaries outpacing", Label::Better, pool(kBlandBegins),
       pool(kBetterEnds), {25, 0, 0}},
      {"refactors tidier codebases outpacing", Label::Better,
       pool(kBlandBegins), pool(kBetterEnds), {25, 0, 0}},
      {"segfaults oftener against", Label::Worse, pool(kBlandBegins),
       pool(kWorseEnds), {10, 0, 0}},
      {"benchmarks smoother throughput over", Label::Better,
       pool(kBlandBegins), pool(kBetterEnds), {49, 0, 16}},
      {"renders crisper plots over", Label::Better, pool(kBlandBegins),
       pool(kBetterEnds), {49, 0, 15}},
      {"chokes while crunching datasets unlike", Label::Worse,
       pool(kBlandBegins), pool(kWorseEnds), {12, 0, 10}},
      {"markets shinier gadgets atop", Label::Better, pool(kBlandBegins),
       pool(kBetterEnds), {37, 6, 0}},
      {"upholsters plusher cabins ahead of", Label::Better, pool(kBlandBegins),
       pool(kBetterEnds), {0, 6, 0}},
      {"polishes glossier finishes beyond", Label::Better, pool(kBlandBegins),
       pool(kBetterEnds), {0, 6, 19}},
      {"steeps earthier infusions surpassing", Label::Better,
       pool(kBlandBegins), pool(kBetterEnds), {0, 0, 17}},
      {"ferments blander batches trailing", Label::Worse, pool(kBlandBegins),
       pool(kWorseEnds), {0, 0, 9}},

      // Domain-flavored neutral co-mentions.
      {"links against", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {100, 0, 0}},
      {"imports", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {100, 0, 0}},
      {"interoperates with", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {100, 0, 0}},
      {"shares a dealership with", Label::None, pool(kBlandBegins),
       pool(kBlandEnds), {0, 200, 0}},
      {"ships from the same depot as", Label::None, pool(kBlandBegins),
       pool(kBlandEnds), {0, 200, 0}},
      {"queues alongside", Label::None, pool(kBlandBegins), pool(kBlandEnds),
       {0, 0, 200}},
      {"pairs during tastings with", Label::None, pool(kBlandBegins),
       pool(kBlandEnds), {0, 0, 200}},
  };
  return table;
}

Label flip(Label l) {
  if (l == Label::Better) return Label::Worse;
  if (l == Label::Worse) return Label::Better;
  return Label::None;
}

// Leading punctuation attaches to the previous word so the text reads like
// ordinary prose; tokenization splits it back off.
std::string join_text(std::initializer_list<std::string> parts) {
  std::string out;
  for (const std::string& part : parts) {
    if (part.empty()) continue;
    char c = part[0];
    bool attach = c == ',' || c == ';' || c == '.' || c == '!' || c == '?';
    if (!out.empty() && !attach) out += ' ';
    out += part;
  }
  return out;
}

std::string make_id(const char* domain, int seq) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%s-%05d", domain, seq);
  return buf;
}

std::vector<std::pair<int, int>> item_pairs() {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 18; ++i)
    for (int j = i + 1; j < 18; ++j) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace

Dataset synthesize_corpus(const SynthConfig& cfg) {
  const auto& families = family_table();
  const auto pairs = item_pairs();

  std::array<std::vector<LabeledSentence>, kDomains> kept;
  std::array<std::vector<LabeledSentence>, kDomains> low;

  for (int d = 0; d < kDomains; ++d) {
    int pair_cursor = 0;
    int seq = 0;
    for (std::size_t f = 0; f < families.size(); ++f) {
      const FamilySpec& fam = families[f];
      for (int i = 0; i < fam.count[d]; ++i) {
        const auto& pr = pairs[pair_cursor++ % pairs.size()];
        std::string first = kItems[d][pr.first];
        std::string second = kItems[d][pr.second];
        std::string begin = fam.begins.words[(i + static_cast<int>(f)) %
                                             fam.begins.n];
        std::string end = fam.ends.words[(i + 2 * static_cast<int>(f)) %
                                         fam.ends.n];
        bool swapped = fam.swap_some && i % 7 == 3;

        LabeledSentence s;
        s.id = make_id(kDomainNames[d], ++seq);
        s.text = join_text({begin, first, fam.middle, second, end});
        s.object_a = swapped ? second : first;
        s.object_b = swapped ? first : second;
        s.label = swapped ? flip(fam.gold) : fam.gold;
        s.domain = kDomainNames[d];
        s.confidence = 1.0;  // provisional; tiers assigned below
        kept[d].push_back(std::move(s));
      }
    }
    // Rows whose annotators could not agree; they fall below the ingestion
    // confidence threshold and never reach the modeling stages.
    for (int i = 0; i < kBelowThreshold[d]; ++i) {
      const auto& pr = pairs[pair_cursor++ % pairs.size()];
      LabeledSentence s;
      s.id = make_id(kDomainNames[d], ++seq);
      s.text = join_text({kBlandBegins[i % pool(kBlandBegins).n],
                          kItems[d][pr.first], "and", kItems[d][pr.second],
                          kBlandEnds[i % pool(kBlandEnds).n]});
      s.object_a = kItems[d][pr.first];
      s.object_b = kItems[d][pr.second];
      s.label = Label::None;
      s.domain = kDomainNames[d];
      s.confidence = i % 2 == 0 ? 0.4 : 0.3;
      low[d].push_back(std::move(s));
    }
  }

  // Balance check: the family table must reproduce the published per-domain
  // label counts exactly.
  int total = 0;
  for (int d = 0; d < kDomains; ++d) {
    int tally[3] = {0, 0, 0};
    for (const auto& s : kept[d]) ++tally[static_cast<int>(s.label)];
    // tally is indexed NONE, BETTER, WORSE; targets are BETTER/WORSE/NONE.
    if (tally[1] != kTargets[d][0] || tally[2] != kTargets[d][1] ||
        tally[0] != kTargets[d][2])
      throw std::logic_error("family table out of balance for domain " +
                             std::string(kDomainNames[d]));
    total += static_cast<int>(kept[d].size());
  }
  if (total != kKeptTotal)
    throw std::logic_error("family table total mismatch");
  static_assert(kTierFull + kTierStrong + kTierWeak == kKeptTotal,
                "confidence tiers must cover every kept row");

  Rng root(cfg.seed);
  std::vector<int> order(kKeptTotal);
  for (int i = 0; i < kKeptTotal; ++i) order[i] = i;
  Rng tier_rng = root.fork(3);
  shuffle(order, tier_rng);
  auto row_at = [&](int flat) -> LabeledSentence& {
    for (int d = 0; d < kDomains; ++d) {
      if (flat < static_cast<int>(kept[d].size())) return kept[d][flat];
      flat -= static_cast<int>(kept[d].size());
    }
    throw std::logic_error("row index out of range");
  };
  for (int i = 0; i < kKeptTotal; ++i) {
    double conf = i < kTierFull ? 1.0
                : i < kTierFull + kTierStrong ? 0.85
                                              : 0.65;
    row_at(order[i]).confidence = conf;
  }

  Dataset ds;
  ds.provenance = "synthesized";
  for (int d = 0; d < kDomains; ++d) {
    for (auto& s : kept[d]) ds.sentences.push_back(std::move(s));
    if (cfg.include_below_threshold)
      for (auto& s : low[d]) ds.sentences.push_back(std::move(s));
  }
  return ds;
}

}  // namespace compsent
