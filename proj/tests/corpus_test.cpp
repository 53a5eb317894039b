#include <map>
#include <set>
#include <sstream>

#include "doctest.h"

#include "compsent/corpus.hpp"
#include "test_util.hpp"

using namespace compsent;
using testutil::sent;

TEST_CASE("label names round-trip") {
  for (Label l : {Label::None, Label::Better, Label::Worse}) {
    auto parsed = parse_label(label_name(l));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == l);
  }
  CHECK(!parse_label("GOOD").has_value());
  CHECK(!parse_label("none").has_value());
}

TEST_CASE("jsonl save and load round-trip") {
  Dataset ds;
  ds.sentences.push_back(
      sent("x-1", "tea is better than coffee .", "tea", "coffee",
           Label::Better, "random", 0.85));
  ds.sentences.push_back(sent("x-2", "tea and coffee , why not both ?", "tea",
                              "coffee", Label::None, "random", 1.0));
  std::ostringstream out;
  save_jsonl(ds, out);

  std::istringstream in(out.str());
  Dataset back = load_jsonl(in, "test");
  REQUIRE(back.sentences.size() == 2);
  CHECK(back.provenance == "test");
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.sentences[i].id == ds.sentences[i].id);
    CHECK(back.sentences[i].text == ds.sentences[i].text);
    CHECK(back.sentences[i].object_a == ds.sentences[i].object_a);
    CHECK(back.sentences[i].object_b == ds.sentences[i].object_b);
    CHECK(back.sentences[i].label == ds.sentences[i].label);
    CHECK(back.sentences[i].domain == ds.sentences[i].domain);
    CHECK(back.sentences[i].confidence ==
          doctest::Approx(ds.sentences[i].confidence));
  }
}

TEST_CASE("jsonl confidence defaults to one when absent") {
  std::istringstream in(
      R"({"id":"a","text":"x vs y","object_a":"x","object_b":"y","label":"NONE","domain":"d"})"
      "\n");
  Dataset ds = load_jsonl(in);
  REQUIRE(ds.sentences.size() == 1);
  CHECK(ds.sentences[0].confidence == doctest::Approx(1.0));
}

TEST_CASE("jsonl loader reports the offending record") {
  std::istringstream in(
      R"({"id":"a","text":"x vs y","object_a":"x","object_b":"y","label":"NONE","domain":"d"})"
      "\nnot json at all\n");
  CHECK_THROWS_WITH_AS(load_jsonl(in),
                       doctest::Contains("record 2"), DataError);
}

TEST_CASE("jsonl loader rejects bad records") {
  auto row = [](const std::string& label, const std::string& b) {
    return R"({"id":"a","text":"t","object_a":"x","object_b":")" + b +
           R"(","label":")" + label + R"(","domain":"d"})" + "\n";
  };
  {
    std::istringstream in(row("MAYBE", "y"));
    CHECK_THROWS_AS(load_jsonl(in), DataError);
  }
  {
    std::istringstream in(row("NONE", "x"));  // objects must differ
    CHECK_THROWS_AS(load_jsonl(in), DataError);
  }
  {
    std::istringstream in(row("NONE", "y") + row("NONE", "y"));  // dup id
    CHECK_THROWS_AS(load_jsonl(in), DataError);
  }
}

TEST_CASE("csv import with a column map") {
  std::istringstream in(
      "sentence,first,second,verdict,topic,agree\n"
      "\"tea, obviously, is better\",tea,coffee,BETTER,random,0.8\n"
      "x next to y,x,y,NONE,other,1\n");
  CsvColumnMap map;
  map.columns = {{"text", "sentence"}, {"object_a", "first"},
                 {"object_b", "second"}, {"label", "verdict"},
                 {"domain", "topic"}, {"confidence", "agree"}};
  Dataset ds = load_csv(in, map);
  REQUIRE(ds.sentences.size() == 2);
  CHECK(ds.sentences[0].text == "tea, obviously, is better");
  CHECK(ds.sentences[0].label == Label::Better);
  CHECK(ds.sentences[0].domain == "random");
  CHECK(ds.sentences[0].confidence == doctest::Approx(0.8));
  CHECK(ds.sentences[1].domain == "other");
}

TEST_CASE("csv import fills defaults for unmapped optional columns") {
  std::istringstream in("t,a,b,l\nx against y,x,y,NONE\n");
  CsvColumnMap map;
  map.columns = {{"text", "t"}, {"object_a", "a"}, {"object_b", "b"},
                 {"label", "l"}};
  map.default_domain = "misc";
  Dataset ds = load_csv(in, map);
  REQUIRE(ds.sentences.size() == 1);
  CHECK(ds.sentences[0].domain == "misc");
  CHECK(ds.sentences[0].confidence == doctest::Approx(1.0));
  CHECK(!ds.sentences[0].id.empty());
}

TEST_CASE("csv import requires the core fields") {
  std::istringstream in("t,a,b\nx,y,z\n");
  CsvColumnMap map;
  map.columns = {{"text", "t"}, {"object_a", "a"}, {"object_b", "b"}};
  CHECK_THROWS_WITH_AS(load_csv(in, map), doctest::Contains("label"),
                       DataError);
}

TEST_CASE("confidence filter keeps the boundary") {
  Dataset ds;
  ds.sentences.push_back(sent("1", "a vs b", "a", "b", Label::None, "d", 0.49));
  ds.sentences.push_back(sent("2", "a vs b", "a", "b", Label::None, "d", 0.5));
  ds.sentences.push_back(sent("3", "a vs b", "a", "b", Label::None, "d", 1.0));
  Dataset kept = filter_by_confidence(ds, 0.5);
  REQUIRE(kept.sentences.size() == 2);
  CHECK(kept.sentences[0].id == "2");
  CHECK(kept.sentences[1].id == "3");
}

namespace {

Dataset labeled_mix(int n_none, int n_better, int n_worse) {
  Dataset ds;
  auto add = [&](Label l, int n, const char* prefix) {
    for (int i = 0; i < n; ++i)
      ds.sentences.push_back(sent(prefix + std::to_string(i), "a vs b", "a",
                                  "b", l));
  };
  add(Label::None, n_none, "n");
  add(Label::Better, n_better, "b");
  add(Label::Worse, n_worse, "w");
  return ds;
}

std::map<Label, long> label_counts(const Dataset& ds) {
  std::map<Label, long> counts;
  for (const auto& s : ds.sentences) ++counts[s.label];
  return counts;
}

}  // namespace

TEST_CASE("stratified holdout splits per label") {
  Dataset ds = labeled_mix(50, 21, 10);
  auto [train, test] = stratified_holdout_split(ds, 0.8, 7);
  auto tr = label_counts(train);
  auto te = label_counts(test);
  // round(0.8 * n) per label goes to train
  CHECK(tr[Label::None] == 40);
  CHECK(tr[Label::Better] == 17);
  CHECK(tr[Label::Worse] == 8);
  CHECK(te[Label::None] == 10);
  CHECK(te[Label::Better] == 4);
  CHECK(te[Label::Worse] == 2);

  std::set<std::string> seen;
  for (const auto& s : train.sentences) seen.insert(s.id);
  for (const auto& s : test.sentences) {
    CHECK(!seen.count(s.id));  // disjoint
    seen.insert(s.id);
  }
  CHECK(seen.size() == ds.sentences.size());
}

TEST_CASE("stratified holdout is seed-deterministic") {
  Dataset ds = labeled_mix(30, 12, 6);
  auto a = stratified_holdout_split(ds, 0.8, 42);
  auto b = stratified_holdout_split(ds, 0.8, 42);
  auto c = stratified_holdout_split(ds, 0.8, 43);
  REQUIRE(a.first.sentences.size() == b.first.sentences.size());
  bool same = true, same_other_seed = true;
  for (std::size_t i = 0; i < a.first.sentences.size(); ++i) {
    same &= a.first.sentences[i].id == b.first.sentences[i].id;
    same_other_seed &= a.first.sentences[i].id == c.first.sentences[i].id;
  }
  CHECK(same);
  CHECK(!same_other_seed);
}

TEST_CASE("dataset stats tally by domain and label") {
  Dataset ds;
  ds.sentences.push_back(sent("1", "t", "a", "b", Label::Better, "zoo"));
  ds.sentences.push_back(sent("2", "t", "a", "b", Label::None, "zoo"));
  ds.sentences.push_back(sent("3", "t", "a", "b", Label::None, "apps"));
  StatsReport r = dataset_stats(ds);
  REQUIRE(r.domains.size() == 2);
  CHECK(r.domains[0] == "apps");  // sorted
  CHECK(r.domains[1] == "zoo");
  CHECK(r.counts[1][static_cast<int>(Label::Better)] == 1);
  CHECK(r.counts[1][static_cast<int>(Label::None)] == 1);
  CHECK(r.label_totals[static_cast<int>(Label::None)] == 2);
  CHECK(r.grand_total == 3);

  std::string md = stats_to_markdown(r);
  CHECK(md.find("apps") != std::string::npos);
  CHECK(md.find("Total") != std::string::npos);
  std::string csv = stats_to_csv(r);
  CHECK(csv.find("zoo") != std::string::npos);
}
