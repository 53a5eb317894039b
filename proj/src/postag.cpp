#include <cctype>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "compsent/preprocess.hpp"

// Fallback heuristic tagger. Order: punctuation, closed-class lexicon,
// irregular comparatives/superlatives, numbers, mid-sentence capitalization,
// suffix rules (-er/-est against a known adjective base list, -ly, -ing,
// -ed), small open-class seed lexicon, default NN.

namespace compsent {

namespace {

const std::unordered_map<std::string, std::string>& closed_class() {
  static const std::unordered_map<std::string, std::string> m = {
      // determiners
      {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"that", "DT"},
      {"these", "DT"}, {"those", "DT"}, {"some", "DT"}, {"any", "DT"},
      {"no", "DT"}, {"every", "DT"}, {"each", "DT"}, {"either", "DT"},
      {"neither", "DT"}, {"both", "DT"}, {"all", "DT"},
      // prepositions / subordinators
      {"of", "IN"}, {"in", "IN"}, {"on", "IN"}, {"at", "IN"}, {"by", "IN"},
      {"for", "IN"}, {"with", "IN"}, {"about", "IN"}, {"against", "IN"},
      {"between", "IN"}, {"into", "IN"}, {"through", "IN"}, {"during", "IN"},
      {"before", "IN"}, {"after", "IN"}, {"above", "IN"}, {"below", "IN"},
      {"from", "IN"}, {"over", "IN"}, {"under", "IN"}, {"than", "IN"},
      {"as", "IN"}, {"if", "IN"}, {"because", "IN"}, {"while", "IN"},
      {"since", "IN"}, {"until", "IN"}, {"unless", "IN"}, {"upon", "IN"},
      {"within", "IN"}, {"without", "IN"}, {"despite", "IN"}, {"like", "IN"},
      {"near", "IN"}, {"behind", "IN"}, {"across", "IN"}, {"though", "IN"},
      {"although", "IN"}, {"whereas", "IN"}, {"unlike", "IN"},
      // pronouns
      {"i", "PRP"}, {"you", "PRP"}, {"he", "PRP"}, {"she", "PRP"},
      {"it", "PRP"}, {"we", "PRP"}, {"they", "PRP"}, {"me", "PRP"},
      {"him", "PRP"}, {"her", "PRP"}, {"us", "PRP"}, {"them", "PRP"},
      {"myself", "PRP"}, {"itself", "PRP"}, {"themselves", "PRP"},
      {"anyone", "PRP"}, {"everyone", "PRP"}, {"someone", "PRP"},
      {"my", "PRP$"}, {"your", "PRP$"}, {"his", "PRP$"}, {"its", "PRP$"},
      {"our", "PRP$"}, {"their", "PRP$"},
      // conjunctions
      {"and", "CC"}, {"or", "CC"}, {"but", "CC"}, {"nor", "CC"}, {"plus", "CC"},
      // modals and auxiliaries
      {"will", "MD"}, {"would", "MD"}, {"can", "MD"}, {"could", "MD"},
      {"shall", "MD"}, {"should", "MD"}, {"may", "MD"}, {"might", "MD"},
      {"must", "MD"}, {"ca", "MD"}, {"wo", "MD"},
      {"is", "VBZ"}, {"are", "VBP"}, {"was", "VBD"}, {"were", "VBD"},
      {"am", "VBP"}, {"be", "VB"}, {"been", "VBN"}, {"being", "VBG"},
      {"has", "VBZ"}, {"have", "VBP"}, {"had", "VBD"}, {"do", "VBP"},
      {"does", "VBZ"}, {"did", "VBD"},
      {"to", "TO"},
      // adverbs of the grammatical kind
      {"not", "RB"}, {"n't", "RB"}, {"very", "RB"}, {"too", "RB"},
      {"also", "RB"}, {"just", "RB"}, {"only", "RB"}, {"really", "RB"},
      {"quite", "RB"}, {"rather", "RB"}, {"always", "RB"}, {"never", "RB"},
      {"often", "RB"}, {"still", "RB"}, {"well", "RB"}, {"far", "RB"},
      {"even", "RB"}, {"again", "RB"}, {"almost", "RB"}, {"already", "RB"},
      {"perhaps", "RB"}, {"maybe", "RB"}, {"much", "RB"}, {"way", "RB"},
      {"so", "RB"}, {"now", "RB"}, {"then", "RB"}, {"here", "RB"},
      {"somehow", "RB"}, {"somewhat", "RB"}, {"anyway", "RB"},
      // wh-words and leftovers
      {"which", "WDT"}, {"what", "WDT"}, {"who", "WP"}, {"whom", "WP"},
      {"when", "WRB"}, {"where", "WRB"}, {"why", "WRB"}, {"how", "WRB"},
      {"there", "EX"},
  };
  return m;
}

const std::unordered_map<std::string, std::string>& irregular_degree() {
  static const std::unordered_map<std::string, std::string> m = {
      {"better", "JJR"}, {"worse", "JJR"}, {"less", "JJR"}, {"more", "JJR"},
      {"fewer", "JJR"}, {"lesser", "JJR"}, {"further", "JJR"},
      {"farther", "JJR"}, {"elder", "JJR"}, {"inferior", "JJR"},
      {"superior", "JJR"},
      {"best", "JJS"}, {"worst", "JJS"}, {"least", "JJS"}, {"most", "JJS"},
  };
  return m;
}

// Bases accepted by the -er/-est suffix rules.
const std::unordered_set<std::string>& adjective_bases() {
  static const std::unordered_set<std::string> s = {
      "slow", "fast", "cheap", "hard", "easy", "nice", "cool", "safe", "wise",
      "strong", "weak", "old", "new", "big", "small", "light", "heavy",
      "quick", "smart", "clean", "clear", "simple", "smooth", "rich",
      "bright", "tough", "friendly", "healthy", "tasty", "pretty", "sweet",
      "warm", "fresh", "neat", "handy", "sharp", "ugly", "nasty", "poor",
      "low", "high", "deep", "long", "short", "tall", "late", "early",
      "close", "tight", "loose", "wide", "narrow", "thin", "thick", "soft",
      "hot", "cold", "dark", "fancy", "noisy", "quiet", "busy", "lazy",
      "crazy", "dirty", "funny", "happy", "sad", "flat", "slim", "calm",
      "great", "fine", "crisp", "bold", "brave", "plain", "pure", "rare",
      "rude", "sane", "sour", "stale", "steep", "stiff", "sturdy", "tidy",
      "wild", "young", "buggy", "clunky", "risky", "costly", "pricey",
      "sleek", "snappy", "speedy", "zippy", "flaky", "laggy", "glitchy",
      "choppy", "blurry", "grainy", "roomy", "bulky", "chunky", "flimsy",
      "smelly", "messy", "lousy", "grim", "lame", "dull", "crude", "lean",
      "lofty", "mighty", "shaky", "shiny", "silly", "sloppy", "gritty",
      "cozy", "curvy", "dense", "harsh", "mellow", "pale", "proud", "keen",
      "cheery", "classy", "comfy", "creamy", "crunchy", "gloomy", "greasy",
      "mushy", "stodgy", "trendy", "wobbly", "jumpy",
  };
  return s;
}

const std::unordered_map<std::string, std::string>& open_seed() {
  static const std::unordered_map<std::string, std::string> m = {
      {"good", "JJ"}, {"bad", "JJ"}, {"great", "JJ"}, {"new", "JJ"},
      {"old", "JJ"}, {"big", "JJ"}, {"small", "JJ"}, {"high", "JJ"},
      {"low", "JJ"}, {"easy", "JJ"}, {"hard", "JJ"}, {"fast", "JJ"},
      {"slow", "JJ"}, {"cheap", "JJ"}, {"expensive", "JJ"}, {"reliable", "JJ"},
      {"terrible", "JJ"}, {"awesome", "JJ"}, {"solid", "JJ"}, {"decent", "JJ"},
      {"poor", "JJ"}, {"simple", "JJ"}, {"stable", "JJ"}, {"popular", "JJ"},
      {"overall", "JJ"}, {"fun", "JJ"}, {"fine", "JJ"}, {"mediocre", "JJ"},
      {"lousy", "JJ"}, {"terrific", "JJ"},
      {"think", "VBP"}, {"use", "VB"}, {"get", "VB"}, {"say", "VBP"},
      {"beats", "VBZ"}, {"wins", "VBZ"}, {"prefer", "VBP"}, {"feels", "VBZ"},
      {"looks", "VBZ"}, {"works", "VBZ"}, {"runs", "VBZ"}, {"seems", "VBZ"},
  };
  return m;
}

bool all_digit_like(const std::string& s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) { digit = true; continue; }
    if (c == '.' || c == ',' || c == '%' || c == '-') continue;
    return false;
  }
  return digit;
}

const char* punct_tag(const std::string& s) {
  if (s.size() != 1) return nullptr;
  switch (s[0]) {
    case '.': case '!': case '?': return ".";
    case ',': return ",";
    case ':': case ';': return ":";
    case '(': return "-LRB-";
    case ')': return "-RRB-";
    case '"': case '\'': return "''";
    default: return nullptr;
  }
}

// Candidate bases for a -er / -est form: drop the suffix, drop suffix plus a
// doubled final consonant, undo -i- for -y bases, keep final e.
bool degree_base_known(const std::string& lower, std::size_t suffix_len) {
  if (lower.size() <= suffix_len + 1) return false;
  std::string stem = lower.substr(0, lower.size() - suffix_len);
  const auto& bases = adjective_bases();
  if (bases.count(stem)) return true;                       // slow-er
  if (bases.count(stem + "e")) return true;                 // saf-er -> safe
  if (stem.size() >= 2 && stem.back() == 'i') {
    std::string y = stem.substr(0, stem.size() - 1) + "y";  // eas-i-er -> easy
    if (bases.count(y)) return true;
  }
  if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
    if (bases.count(stem.substr(0, stem.size() - 1))) return true;  // big-g-er
  }
  return false;
}

bool ends_with(const std::string& s, const char* suffix) {
  std::string suf(suffix);
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

std::vector<std::string> pos_tag(const Tokens& tokens) {
  std::vector<std::string> tags;
  tags.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& lower = tokens[i].lower;
    const std::string& surface = tokens[i].surface;
    if (const char* p = punct_tag(surface)) { tags.push_back(p); continue; }
    if (auto it = closed_class().find(lower); it != closed_class().end()) {
      tags.push_back(it->second);
      continue;
    }
    if (auto it = irregular_degree().find(lower); it != irregular_degree().end()) {
      tags.push_back(it->second);
      continue;
    }
    if (all_digit_like(lower)) { tags.push_back("CD"); continue; }
    if (i > 0 && std::isupper(static_cast<unsigned char>(surface[0]))) {
      tags.push_back("NNP");
      continue;
    }
    if (ends_with(lower, "er") && degree_base_known(lower, 2)) {
      tags.push_back("JJR");
      continue;
    }
    if (ends_with(lower, "est") && degree_base_known(lower, 3)) {
      tags.push_back("JJS");
      continue;
    }
    if (lower.size() > 3 && ends_with(lower, "ly")) { tags.push_back("RB"); continue; }
    if (lower.size() > 4 && ends_with(lower, "ing")) { tags.push_back("VBG"); continue; }
    if (lower.size() > 3 && ends_with(lower, "ed")) { tags.push_back("VBD"); continue; }
    if (auto it = open_seed().find(lower); it != open_seed().end()) {
      tags.push_back(it->second);
      continue;
    }
    tags.push_back("NN");
  }
  return tags;
}

}  // namespace compsent
