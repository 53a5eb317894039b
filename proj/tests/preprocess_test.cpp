#include <string>
#include <vector>

#include "doctest.h"

#include "compsent/preprocess.hpp"

using namespace compsent;

namespace {

std::vector<std::string> surfaces(const Tokens& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("tokenizer splits punctuation and the n't clitic") {
  auto ts = tokenize("Python isn't worse, really (no).");
  CHECK(surfaces(ts) == std::vector<std::string>{
                            "Python", "is", "n't", "worse", ",", "really", "(",
                            "no", ")", "."});
  for (std::size_t i = 0; i < ts.size(); ++i)
    CHECK(ts[i].position == static_cast<int>(i));
  CHECK(ts[0].lower == "python");
}

TEST_CASE("tokenizer handles empty and whitespace-only input") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t  ").empty());
}

TEST_CASE("locate_targets finds case-insensitive multiword spans") {
  auto ts = tokenize("I prefer Visual Basic over sublime text these days.");
  auto loc = locate_targets(ts, "visual basic", "Sublime Text");
  CHECK(!loc.swapped);
  CHECK(loc.spans.first.begin == 2);
  CHECK(loc.spans.first.end == 3);
  CHECK(loc.spans.second.begin == 5);
  CHECK(loc.spans.second.end == 6);
}

TEST_CASE("locate_targets flags reversed mention order") {
  auto ts = tokenize("coffee beats tea easily");
  auto loc = locate_targets(ts, "tea", "coffee");
  CHECK(loc.swapped);
  CHECK(loc.spans.first.begin == 0);   // coffee, earlier in surface order
  CHECK(loc.spans.second.begin == 2);  // tea
}

TEST_CASE("locate_targets errors") {
  auto ts = tokenize("tea and coffee");
  CHECK_THROWS_AS(locate_targets(ts, "tea", "juice"), TargetsNotFound);
  CHECK_THROWS_AS(locate_targets(ts, "", "coffee"), TargetsNotFound);
  // single occurrence shared by both objects cannot be split in two
  auto one = tokenize("just tea here");
  CHECK_THROWS_AS(locate_targets(one, "tea", "tea"), OverlapError);
}

TEST_CASE("locate_targets prefers the longer object at a shared start") {
  auto ts = tokenize("the ice cream stand sells ice too");
  auto loc = locate_targets(ts, "ice cream", "ice");
  // "ice cream" wins tokens 1-2; plain "ice" must take the later occurrence
  CHECK(loc.spans.first.begin == 1);
  CHECK(loc.spans.first.end == 2);
  CHECK(loc.spans.second.begin == 5);
  CHECK(!loc.swapped);
}

TEST_CASE("partition splits into five contiguous parts") {
  auto ts = tokenize("honestly tea beats coffee overall .");
  auto loc = locate_targets(ts, "tea", "coffee");
  auto parts = partition(ts, loc.spans);
  CHECK(surfaces(parts.beginning) == std::vector<std::string>{"honestly"});
  CHECK(surfaces(parts.first_target) == std::vector<std::string>{"tea"});
  CHECK(surfaces(parts.middle) == std::vector<std::string>{"beats"});
  CHECK(surfaces(parts.second_target) == std::vector<std::string>{"coffee"});
  CHECK(surfaces(parts.ending) == std::vector<std::string>{"overall", "."});
}

TEST_CASE("partition round-trips to the original token sequence") {
  // adjacent targets, empty beginning/ending: the degenerate layouts
  for (const char* text : {"tea coffee", "a tea b coffee c",
                           "tea is better than coffee",
                           "so tea coffee wins"}) {
    auto ts = tokenize(text);
    auto loc = locate_targets(ts, "tea", "coffee");
    auto parts = partition(ts, loc.spans);
    Tokens glued;
    for (const auto* part :
         {&parts.beginning, &parts.first_target, &parts.middle,
          &parts.second_target, &parts.ending})
      for (const auto& t : *part) glued.push_back(t);
    REQUIRE(glued.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(glued[i].surface == ts[i].surface);
      CHECK(glued[i].position == ts[i].position);
    }
  }
}

TEST_CASE("replacement strategies") {
  auto ts = tokenize("tea beats coffee");
  auto parts = partition(ts, locate_targets(ts, "tea", "coffee").spans);

  auto keep = apply_replacement(parts, ReplacementStrategy::Keep);
  CHECK(surfaces(keep.first_target) == std::vector<std::string>{"tea"});

  auto removed = apply_replacement(parts, ReplacementStrategy::Remove);
  CHECK(removed.first_target.empty());
  CHECK(removed.second_target.empty());
  CHECK(surfaces(removed.middle) == std::vector<std::string>{"beats"});

  auto oblivious = apply_replacement(parts, ReplacementStrategy::Oblivious);
  CHECK(surfaces(oblivious.first_target) == std::vector<std::string>{"ITEM"});
  CHECK(surfaces(oblivious.second_target) == std::vector<std::string>{"ITEM"});

  auto distinct = apply_replacement(parts, ReplacementStrategy::Distinct);
  CHECK(surfaces(distinct.first_target) == std::vector<std::string>{"ITEM_A"});
  CHECK(surfaces(distinct.second_target) ==
        std::vector<std::string>{"ITEM_B"});
}

TEST_CASE("scope selection") {
  auto ts = tokenize("really tea beats coffee today");
  auto parts = partition(ts, locate_targets(ts, "tea", "coffee").spans);

  auto full = select_scope(parts, Scope::Full());
  CHECK(surfaces(full) ==
        std::vector<std::string>{"really", "tea", "beats", "coffee", "today"});
  for (std::size_t i = 0; i < full.size(); ++i)
    CHECK(full[i].position == static_cast<int>(i));

  auto middle = select_scope(parts, Scope::Middle());
  CHECK(surfaces(middle) == std::vector<std::string>{"beats"});
  CHECK(middle[0].position == 0);  // positions renumbered per scope

  Scope be{true, false, true, false};
  auto rim = select_scope(parts, be);
  CHECK(surfaces(rim) == std::vector<std::string>{"really", "today"});

  CHECK(Scope::Full().valid());
  CHECK(!Scope{false, false, false, false}.valid());
  CHECK(!Scope{true, false, false, true}.valid());
}

TEST_CASE("scope never includes targets unless full") {
  auto ts = tokenize("tea beats coffee");
  auto parts = partition(ts, locate_targets(ts, "tea", "coffee").spans);
  Scope all_parts{true, true, true, false};
  auto sel = select_scope(parts, all_parts);
  CHECK(surfaces(sel) == std::vector<std::string>{"beats"});
}

TEST_CASE("fallback tagger covers the cue-bearing classes") {
  auto tags = pos_tag(tokenize("the quick tool is better than a slower one"));
  REQUIRE(tags.size() == 9);
  CHECK(tags[0] == "DT");
  CHECK(tags[3] == "VBZ");      // is
  CHECK(tags[4] == "JJR");      // better (irregular comparative)
  CHECK(tags[5] == "IN");       // than
  CHECK(tags[7] == "JJR");      // slower (-er suffix on a known base)
}

TEST_CASE("fallback tagger punctuation and defaults") {
  auto tags = pos_tag(tokenize("Redis, obviously."));
  REQUIRE(tags.size() == 4);
  CHECK(tags[1] == ",");
  CHECK(tags[3] == ".");
  CHECK(tags[2] == "RB");  // -ly suffix
}
