#pragma once

// Deterministic text renderings of evaluation results: CSV, aligned markdown
// tables and a dependency-free SVG bar chart. All floating-point output is
// fixed to four decimals so identical runs produce identical bytes.

#include <string>
#include <vector>

#include "compsent/eval.hpp"

namespace compsent {

// "%.4f" without locale surprises.
std::string fmt4(double x);

std::string report_to_csv(const EvalReport& r);
std::string report_to_markdown(const EvalReport& r);

std::string cv_to_csv(const CvResult& r);
std::string cv_to_markdown(const CvResult& r);

std::string cross_domain_to_csv(const CrossDomainResult& r);
std::string cross_domain_to_markdown(const CrossDomainResult& r);

std::string errors_to_csv(const ErrorReport& r);
std::string errors_to_markdown(const ErrorReport& r);

struct ChartBar {
  std::string label;
  double value = 0.0;
  double stddev = 0.0;  // whisker half-length; 0 draws no whisker
};

// Vertical bars on a fixed [0, 1] axis with optional stddev whiskers.
std::string bar_chart_svg(const std::vector<ChartBar>& bars,
                          const std::string& title);

}  // namespace compsent
