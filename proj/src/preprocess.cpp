#include "compsent/preprocess.hpp"

#include <algorithm>
#include <cctype>

namespace compsent {

namespace {

bool is_split_punct(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case '(': case ')': case '"': case '\'':
      return true;
    default:
      return false;
  }
}

std::string to_lower(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void emit(Tokens& out, const std::string& surface) {
  Token t;
  t.surface = surface;
  t.lower = to_lower(surface);
  t.position = static_cast<int>(out.size());
  out.push_back(std::move(t));
}

// Splits one whitespace-free chunk into tokens, peeling punctuation and the
// n't clitic.
void split_chunk(Tokens& out, const std::string& chunk) {
  if (chunk.empty()) return;
  std::string lower = to_lower(chunk);
  if (lower.size() > 3 && lower.compare(lower.size() - 3, 3, "n't") == 0) {
    split_chunk(out, chunk.substr(0, chunk.size() - 3));
    emit(out, chunk.substr(chunk.size() - 3));
    return;
  }
  std::string run;
  for (char c : chunk) {
    if (is_split_punct(c)) {
      if (!run.empty()) { emit(out, run); run.clear(); }
      emit(out, std::string(1, c));
    } else {
      run.push_back(c);
    }
  }
  if (!run.empty()) emit(out, run);
}

}  // namespace

Tokens tokenize(const std::string& text) {
  Tokens out;
  std::string chunk;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      split_chunk(out, chunk);
      chunk.clear();
    } else {
      chunk.push_back(c);
    }
  }
  split_chunk(out, chunk);
  return out;
}

namespace {

std::vector<std::string> lower_sequence(const Tokens& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.lower);
  return out;
}

std::vector<TokenSpan> occurrences(const std::vector<std::string>& haystack,
                                   const std::vector<std::string>& needle) {
  std::vector<TokenSpan> spans;
  if (needle.empty() || needle.size() > haystack.size()) return spans;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size(); ++j)
      if (haystack[i + j] != needle[j]) { match = false; break; }
    if (match)
      spans.push_back({static_cast<int>(i), static_cast<int>(i + needle.size() - 1)});
  }
  return spans;
}

bool overlaps(const TokenSpan& a, const TokenSpan& b) {
  return a.begin <= b.end && b.begin <= a.end;
}

}  // namespace

LocatedTargets locate_targets(const Tokens& tokens, const std::string& object_a,
                              const std::string& object_b) {
  if (object_a.empty() || object_b.empty())
    throw TargetsNotFound("empty target string");
  auto hay = lower_sequence(tokens);
  auto needle_a = lower_sequence(tokenize(object_a));
  auto needle_b = lower_sequence(tokenize(object_b));
  auto occ_a = occurrences(hay, needle_a);
  auto occ_b = occurrences(hay, needle_b);
  if (occ_a.empty()) throw TargetsNotFound("target not found: " + object_a);
  if (occ_b.empty()) throw TargetsNotFound("target not found: " + object_b);

  // Pick the non-overlapping pair whose earlier span starts first; at a tie,
  // the pair whose later span starts first; then the longer earlier span.
  // This makes the longer object win a shared start position.
  bool found = false;
  TokenSpan best_a{}, best_b{};
  auto better = [](int e1, int l1, int len1, int e2, int l2, int len2) {
    if (e1 != e2) return e1 < e2;
    if (l1 != l2) return l1 < l2;
    return len1 > len2;
  };
  for (const auto& a : occ_a) {
    for (const auto& b : occ_b) {
      if (overlaps(a, b)) continue;
      int e = std::min(a.begin, b.begin), l = std::max(a.begin, b.begin);
      int elen = a.begin <= b.begin ? a.length() : b.length();
      if (!found) {
        best_a = a; best_b = b; found = true;
        continue;
      }
      int ce = std::min(best_a.begin, best_b.begin),
          cl = std::max(best_a.begin, best_b.begin);
      int celen = best_a.begin <= best_b.begin ? best_a.length() : best_b.length();
      if (better(e, l, elen, ce, cl, celen)) { best_a = a; best_b = b; }
    }
  }
  if (!found)
    throw OverlapError("occurrences of '" + object_a + "' and '" + object_b +
                       "' overlap irresolvably");

  LocatedTargets out;
  if (best_a.begin <= best_b.begin) {
    out.spans = {best_a, best_b};
    out.swapped = false;
  } else {
    out.spans = {best_b, best_a};
    out.swapped = true;
  }
  return out;
}

SentenceParts partition(const Tokens& tokens, const TargetSpans& spans) {
  SentenceParts p;
  auto slice = [&](int from, int to) {  // [from, to)
    Tokens out;
    for (int i = from; i < to; ++i) out.push_back(tokens[static_cast<std::size_t>(i)]);
    return out;
  };
  int n = static_cast<int>(tokens.size());
  p.beginning = slice(0, spans.first.begin);
  p.first_target = slice(spans.first.begin, spans.first.end + 1);
  p.middle = slice(spans.first.end + 1, spans.second.begin);
  p.second_target = slice(spans.second.begin, spans.second.end + 1);
  p.ending = slice(spans.second.end + 1, n);
  return p;
}

namespace {

Tokens literal(const std::string& word) {
  Token t;
  t.surface = word;
  t.lower = word;  // replacement markers stay verbatim
  return {t};
}

}  // namespace

SentenceParts apply_replacement(const SentenceParts& parts,
                                ReplacementStrategy strategy) {
  SentenceParts out = parts;
  switch (strategy) {
    case ReplacementStrategy::Keep:
      break;
    case ReplacementStrategy::Remove:
      out.first_target.clear();
      out.second_target.clear();
      break;
    case ReplacementStrategy::Oblivious:
      out.first_target = literal("ITEM");
      out.second_target = literal("ITEM");
      break;
    case ReplacementStrategy::Distinct:
      out.first_target = literal("ITEM_A");
      out.second_target = literal("ITEM_B");
      break;
  }
  return out;
}

Tokens select_scope(const SentenceParts& parts, const Scope& scope) {
  Tokens out;
  auto append = [&](const Tokens& part) {
    for (const auto& t : part) {
      Token c = t;
      c.position = static_cast<int>(out.size());
      out.push_back(std::move(c));
    }
  };
  if (scope.full) {
    append(parts.beginning);
    append(parts.first_target);
    append(parts.middle);
    append(parts.second_target);
    append(parts.ending);
    return out;
  }
  if (scope.beginning) append(parts.beginning);
  if (scope.middle) append(parts.middle);
  if (scope.ending) append(parts.ending);
  return out;
}

}  // namespace compsent
