#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"

#include "compsent/report.hpp"
#include "test_util.hpp"

using namespace compsent;
using testutil::sent;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

EvalReport worked_example() {
  return compute_metrics(
      {Label::None, Label::None, Label::Better, Label::Better, Label::Worse},
      {Label::None, Label::Better, Label::Better, Label::Better, Label::None});
}

}  // namespace

TEST_CASE("four-decimal formatting is stable") {
  CHECK(fmt4(0.0) == "0.0000");
  CHECK(fmt4(1.0) == "1.0000");
  CHECK(fmt4(0.72839) == "0.7284");
  CHECK(fmt4(-0.5) == "-0.5000");
}

TEST_CASE("evaluation csv lays out per-class rows and the confusion block") {
  auto r = worked_example();
  std::string csv = report_to_csv(r);
  CHECK(csv.rfind("scope,class,precision,recall,f1,support,zero_denominator\n",
                  0) == 0);
  CHECK(csv.find("overall,NONE,0.5000,0.5000,0.5000,2,0\n") !=
        std::string::npos);
  CHECK(csv.find("overall,BETTER,0.6667,1.0000,0.8000,2,0\n") !=
        std::string::npos);
  CHECK(csv.find("overall,WORSE,0.0000,0.0000,0.0000,1,1\n") !=
        std::string::npos);
  CHECK(csv.find("overall,micro,0.6000,0.6000,0.6000,5,1\n") !=
        std::string::npos);
  CHECK(csv.find("confusion,gold\\pred,NONE,BETTER,WORSE\n") !=
        std::string::npos);
  CHECK(csv.find("confusion,NONE,1,1,0\n") != std::string::npos);
  CHECK(csv.find("confusion,WORSE,1,0,0\n") != std::string::npos);

  CHECK(report_to_csv(r) == csv);  // rendering is pure
}

TEST_CASE("evaluation markdown flags zero-denominator conventions") {
  auto r = worked_example();
  std::string md = report_to_markdown(r);
  CHECK(md.rfind("| scope", 0) == 0);
  CHECK(md.find("| overall | micro") != std::string::npos);
  CHECK(md.find("0.0000 *") != std::string::npos);
  CHECK(md.find("zero-denominator metric") != std::string::npos);
  CHECK(md.find("Confusion (rows gold, columns predicted):") !=
        std::string::npos);

  // Aligned tables keep every row the same width.
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < md.size()) {
    std::size_t nl = md.find('\n', start);
    if (nl == std::string::npos) nl = md.size();
    if (md[start] == '|') lines.push_back(md.substr(start, nl - start));
    start = nl + 1;
  }
  REQUIRE(lines.size() >= 6);
  std::size_t table_width = lines[0].size();
  for (std::size_t i = 1; i < 6; ++i) CHECK(lines[i].size() == table_width);
}

TEST_CASE("per-domain sections render under their domain name") {
  Dataset ds;
  ds.sentences.push_back(sent("p1", "x y", "x", "y", Label::Better, "alpha"));
  ds.sentences.push_back(sent("p2", "x y", "x", "y", Label::Worse, "beta"));
  auto r = evaluate_dataset(ds, {Label::Better, Label::Better});
  std::string csv = report_to_csv(r);
  CHECK(csv.find("alpha,BETTER,1.0000,1.0000,1.0000,1,0\n") !=
        std::string::npos);
  CHECK(csv.find("beta,micro,0.0000") != std::string::npos);
}

TEST_CASE("cross-validation tables carry folds then mean and stddev") {
  CvResult r;
  r.folds.push_back(compute_metrics({Label::None, Label::Better},
                                    {Label::None, Label::Better}));
  r.folds.push_back(compute_metrics({Label::None, Label::Better},
                                    {Label::None, Label::None}));
  r.mean_micro_f1 = 0.75;
  r.stddev_micro_f1 = 0.25;
  r.mean_f1 = {0.8333, 0.5, 0.0};
  std::string csv = cv_to_csv(r);
  CHECK(csv.rfind("fold,micro_f1,f1_NONE,f1_BETTER,f1_WORSE\n", 0) == 0);
  CHECK(csv.find("1,1.0000,") != std::string::npos);
  CHECK(csv.find("2,0.5000,") != std::string::npos);
  CHECK(csv.find("mean,0.7500,") != std::string::npos);
  CHECK(csv.find("stddev,0.2500,") != std::string::npos);

  std::string md = cv_to_markdown(r);
  CHECK(md.find("| mean") != std::string::npos);
  CHECK(md.find("| stddev") != std::string::npos);
}

TEST_CASE("cross-domain matrices print train rows against test columns") {
  CrossDomainResult r;
  r.domains = {"brands", "compsci"};
  r.micro_f1 = {{0.5, 0.25}, {0.75, 1.0}};
  std::string csv = cross_domain_to_csv(r);
  CHECK(csv == "train\\test,brands,compsci\n"
               "brands,0.5000,0.2500\n"
               "compsci,0.7500,1.0000\n");
  std::string md = cross_domain_to_markdown(r);
  CHECK(md.find("| train \\ test") != std::string::npos);
  CHECK(md.find("| brands") != std::string::npos);
  CHECK(md.find("0.2500") != std::string::npos);

  CrossDomainResult odd;
  odd.domains = {"a,b", "z"};
  odd.micro_f1 = {{1.0, 1.0}, {1.0, 1.0}};
  CHECK(cross_domain_to_csv(odd).find("\"a,b\"") != std::string::npos);
}

TEST_CASE("error tables group by gold, prediction and confidence bin") {
  Dataset ds;
  ds.sentences.push_back(sent("e1", "one", "x", "y", Label::None, "d", 1.0));
  ds.sentences.push_back(sent("e2", "two", "x", "y", Label::None, "d", 0.7));
  ds.sentences.push_back(sent("e3", "three", "x", "y", Label::Worse, "d", 0.9));
  auto r = error_report(
      ds, {Label::Better, Label::Better, Label::None});
  std::string csv = errors_to_csv(r);
  CHECK(csv.rfind("gold,predicted,confidence_bin,count,ids\n", 0) == 0);
  CHECK(csv.find("NONE,BETTER,<0.8,1,e2\n") != std::string::npos);
  CHECK(csv.find("NONE,BETTER,1.0,1,e1\n") != std::string::npos);
  CHECK(csv.find("WORSE,NONE,0.8-1.0,1,e3\n") != std::string::npos);
  CHECK(csv.find("total,,,3,\n") != std::string::npos);

  std::string md = errors_to_markdown(r);
  CHECK(md.find("| WORSE") != std::string::npos);
  CHECK(md.find("| total") != std::string::npos);
}

TEST_CASE("bar charts emit one rect per bar plus optional whiskers") {
  std::vector<ChartBar> bars = {{"rule", 0.81, 0.0},
                                {"gbdt", 0.85, 0.01},
                                {"majority", 0.73, 0.0}};
  std::string svg = bar_chart_svg(bars, "model comparison");
  CHECK(svg.rfind("<svg xmlns=", 0) == 0);
  CHECK(svg.find("model comparison") != std::string::npos);
  CHECK(count_of(svg, "<rect ") == 3);
  CHECK(svg.find("rule") != std::string::npos);
  CHECK(bar_chart_svg(bars, "model comparison") == svg);

  // The whiskered bar adds vertical and cap lines beyond the gridlines.
  std::string no_whisker =
      bar_chart_svg({{"a", 0.5, 0.0}}, "t");
  std::string with_whisker =
      bar_chart_svg({{"a", 0.5, 0.1}}, "t");
  CHECK(count_of(with_whisker, "<line ") > count_of(no_whisker, "<line "));

  std::string empty = bar_chart_svg({}, "empty");
  CHECK(count_of(empty, "<rect ") == 0);
}
