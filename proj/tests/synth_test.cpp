#include <set>
#include <sstream>

#include "doctest.h"

#include "compsent/pipeline.hpp"
#include "compsent/synth.hpp"

using namespace compsent;

TEST_CASE("generated corpus hits the published per-domain label counts") {
  Dataset ds = synthesize_corpus();
  CHECK(ds.provenance == "synthesized");
  CHECK(ds.sentences.size() == 7500);

  Dataset kept = filter_by_confidence(ds, 0.5);
  CHECK(kept.sentences.size() == 7199);

  auto stats = dataset_stats(kept);
  REQUIRE(stats.domains ==
          std::vector<std::string>{"brands", "compsci", "random"});
  // counts are [domain][label] with labels NONE, BETTER, WORSE
  CHECK(stats.counts[0] == std::array<long, 3>{1764, 404, 167});
  CHECK(stats.counts[1] == std::array<long, 3>{1596, 581, 248});
  CHECK(stats.counts[2] == std::array<long, 3>{1882, 379, 178});
  CHECK(stats.domain_totals == std::vector<long>{2335, 2425, 2439});
  CHECK(stats.label_totals == std::array<long, 3>{5242, 1364, 593});
  CHECK(stats.grand_total == 7199);
}

TEST_CASE("below-threshold rows split 100/100/101 across domains") {
  Dataset ds = synthesize_corpus();
  std::array<long, 3> low_by_domain{};  // brands, compsci, random
  for (const auto& s : ds.sentences) {
    if (s.confidence >= 0.5) continue;
    CHECK((s.confidence == 0.4 || s.confidence == 0.3));
    if (s.domain == "brands")
      ++low_by_domain[0];
    else if (s.domain == "compsci")
      ++low_by_domain[1];
    else
      ++low_by_domain[2];
  }
  CHECK(low_by_domain[0] == 100);
  CHECK(low_by_domain[1] == 100);
  CHECK(low_by_domain[2] == 101);

  SynthConfig kept_only;
  kept_only.include_below_threshold = false;
  CHECK(synthesize_corpus(kept_only).sentences.size() == 7199);
}

TEST_CASE("annotation confidence grades into three tiers") {
  Dataset kept = filter_by_confidence(synthesize_corpus(), 0.5);
  long full = 0, strong = 0, weak = 0;
  for (const auto& s : kept.sentences) {
    if (s.confidence == 1.0)
      ++full;
    else if (s.confidence == 0.85)
      ++strong;
    else if (s.confidence == 0.65)
      ++weak;
  }
  CHECK(full == 5111);
  CHECK(strong == 1044);
  CHECK(weak == 1044);
  CHECK(full + strong + weak == 7199);
}

TEST_CASE("ids are unique and every row is well-formed") {
  Dataset ds = synthesize_corpus();
  std::set<std::string> ids;
  for (const auto& s : ds.sentences) {
    CHECK(ids.insert(s.id).second);
    CHECK(!s.text.empty());
    CHECK(!s.object_a.empty());
    CHECK(s.object_a != s.object_b);
    CHECK(s.confidence > 0.0);
    CHECK(s.confidence <= 1.0);
  }
}

TEST_CASE("some rows mention object_b first and all of those are NONE") {
  Dataset kept = filter_by_confidence(synthesize_corpus(), 0.5);
  PipelineSpec spec;
  long swapped = 0;
  for (const auto& s : kept.sentences) {
    auto p = prepare_sentence(s, spec);
    if (!p.locatable || !p.swapped) continue;
    ++swapped;
    CHECK(s.label == Label::None);
  }
  CHECK(swapped > 100);
}

TEST_CASE("the corpus is reproducible and seed-sensitive") {
  std::ostringstream a, b;
  save_jsonl(synthesize_corpus(), a);
  save_jsonl(synthesize_corpus(), b);
  CHECK(a.str() == b.str());

  SynthConfig other;
  other.seed = 8;
  std::ostringstream c;
  save_jsonl(synthesize_corpus(other), c);
  CHECK(c.str() != a.str());
}
