#pragma once

// Tokenization, locating the two comparison targets, partitioning a sentence
// into beginning / middle / ending, target replacement strategies and scope
// selection. All functions here are pure.

#include <stdexcept>
#include <string>
#include <vector>

namespace compsent {

struct TargetsNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OverlapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Token {
  std::string surface;
  std::string lower;
  int position = 0;
};

using Tokens = std::vector<Token>;

// Inclusive token index range [begin, end].
struct TokenSpan {
  int begin = 0;
  int end = 0;
  int length() const { return end - begin + 1; }
};

struct TargetSpans {
  TokenSpan first;   // earlier in surface order
  TokenSpan second;  // later, non-overlapping
};

struct LocatedTargets {
  TargetSpans spans;
  // Set when object_b occurs before object_a; spans are in surface order, so
  // the caller flips the label orientation when this is set.
  bool swapped = false;
};

struct SentenceParts {
  Tokens beginning;
  Tokens first_target;
  Tokens middle;
  Tokens second_target;
  Tokens ending;
};

enum class ReplacementStrategy { Keep, Remove, Oblivious, Distinct };

// Part selection for feature extraction. `full` is mutually exclusive with
// the individual part flags.
struct Scope {
  bool beginning = false;
  bool middle = false;
  bool ending = false;
  bool full = false;

  bool valid() const {
    if (full) return !beginning && !middle && !ending;
    return beginning || middle || ending;
  }
  static Scope Middle() { return {false, true, false, false}; }
  static Scope Full() { return {false, false, false, true}; }
};

// Whitespace split, then . , ! ? ; : ( ) " ' become their own tokens and the
// clitic n't is split off ("isn't" -> is + n't).
Tokens tokenize(const std::string& text);

// Case-insensitive first-occurrence match of each object's own token
// sequence; at a shared start position the longer object wins. Throws
// TargetsNotFound / OverlapError.
LocatedTargets locate_targets(const Tokens& tokens, const std::string& object_a,
                              const std::string& object_b);

SentenceParts partition(const Tokens& tokens, const TargetSpans& spans);

SentenceParts apply_replacement(const SentenceParts& parts,
                                ReplacementStrategy strategy);

Tokens select_scope(const SentenceParts& parts, const Scope& scope);

// Penn-Treebank-ish tags. Pre-supplied tags pass through via the pipeline;
// this is the fallback heuristic: closed-class lexicon, irregular
// comparatives, suffix rules, default NN.
std::vector<std::string> pos_tag(const Tokens& tokens);

}  // namespace compsent
