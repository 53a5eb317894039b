#pragma once

// Rule-based preference baseline: two direction-tagged cue-word lists with
// negation and "but" inversion.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "compsent/corpus.hpp"
#include "compsent/preprocess.hpp"

namespace compsent {

struct LexiconError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CueLexicon {
  std::unordered_set<std::string> better_words;
  std::unordered_set<std::string> worse_words;
};

// Two-section plain-text format: a "[BETTER]" header, one word per line,
// then a "[WORSE]" header. Words are lowercased and deduplicated; a word
// in both sections is an error, as is a missing section.
CueLexicon load_cue_lexicon(std::istream& in);
CueLexicon load_cue_lexicon_file(const std::string& path);

// First cue word from either list decides the provisional label (no cue at
// all gives NONE). The label inverts when the token right before the cue
// is "not"/"n't" or the token right before the second target is "but";
// both triggers cancel out.
Label rule_classify(const Tokens& tokens, const TargetSpans& spans,
                    const CueLexicon& lex);

}  // namespace compsent
