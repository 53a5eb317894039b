#include "compsent/rules.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace compsent {

namespace {

std::string trim_lower(const std::string& line) {
  std::size_t b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = line.find_last_not_of(" \t\r");
  std::string out = line.substr(b, e - b + 1);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

CueLexicon load_cue_lexicon(std::istream& in) {
  CueLexicon lex;
  std::unordered_set<std::string>* section = nullptr;
  bool saw_better = false, saw_worse = false;
  std::string line;
  while (std::getline(in, line)) {
    std::string word = trim_lower(line);
    if (word.empty()) continue;
    if (word == "[better]") {
      section = &lex.better_words;
      saw_better = true;
      continue;
    }
    if (word == "[worse]") {
      section = &lex.worse_words;
      saw_worse = true;
      continue;
    }
    if (!section) throw LexiconError("word '" + word + "' before any section");
    section->insert(word);
  }
  if (!saw_better || !saw_worse)
    throw LexiconError(std::string("missing section ") +
                       (!saw_better ? "[BETTER]" : "[WORSE]"));
  for (const auto& w : lex.better_words)
    if (lex.worse_words.count(w))
      throw LexiconError("word '" + w + "' appears in both sections");
  return lex;
}

CueLexicon load_cue_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open " + path);
  return load_cue_lexicon(in);
}

Label rule_classify(const Tokens& tokens, const TargetSpans& spans,
                    const CueLexicon& lex) {
  long cue_at = -1;
  bool cue_better = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (lex.better_words.count(tokens[i].lower)) {
      cue_at = static_cast<long>(i);
      cue_better = true;
      break;
    }
    if (lex.worse_words.count(tokens[i].lower)) {
      cue_at = static_cast<long>(i);
      cue_better = false;
      break;
    }
  }
  if (cue_at < 0) return Label::None;

  bool invert = false;
  if (cue_at > 0) {
    const std::string& prev = tokens[cue_at - 1].lower;
    if (prev == "not" || prev == "n't") invert = !invert;
  }
  if (spans.second.begin > 0 &&
      tokens[spans.second.begin - 1].lower == "but")
    invert = !invert;

  bool better = cue_better != invert;
  return better ? Label::Better : Label::Worse;
}

}  // namespace compsent
