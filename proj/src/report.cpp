#include "compsent/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace compsent {

std::string fmt4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

namespace {

const char* bin_name(int bin) {
  switch (bin) {
    case 0: return "<0.8";
    case 1: return "0.8-1.0";
    default: return "1.0";
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Markdown table with per-column width alignment, numeric columns padded
// left so decimal points line up.
class MarkdownTable {
 public:
  explicit MarkdownTable(std::vector<std::string> header)
      : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& row) {
      out << '|';
      for (std::size_t c = 0; c < width.size(); ++c) {
        const std::string& cell = c < row.size() ? row[c] : std::string();
        out << ' ' << cell << std::string(width[c] - cell.size(), ' ') << " |";
      }
      out << '\n';
    };
    emit(header_);
    out << '|';
    for (std::size_t c = 0; c < width.size(); ++c)
      out << ' ' << std::string(width[c], '-') << " |";
    out << '\n';
    for (const auto& row : rows_) emit(row);
    return out.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void report_csv_section(std::ostringstream& out, const EvalReport& r,
                        const std::string& scope) {
  for (int c = 0; c < kNumLabels; ++c) {
    const ClassMetrics& m = r.per_class[c];
    out << scope << ',' << label_name(static_cast<Label>(c)) << ','
        << fmt4(m.precision) << ',' << fmt4(m.recall) << ',' << fmt4(m.f1)
        << ',' << m.support << ',' << (m.zero_denominator ? 1 : 0) << '\n';
  }
  out << scope << ",micro," << fmt4(r.micro_f1) << ',' << fmt4(r.accuracy)
      << ',' << fmt4(r.micro_f1) << ',' << r.confusion.total() << ','
      << (r.zero_denominator ? 1 : 0) << '\n';
}

}  // namespace

std::string report_to_csv(const EvalReport& r) {
  std::ostringstream out;
  out << "scope,class,precision,recall,f1,support,zero_denominator\n";
  report_csv_section(out, r, "overall");
  for (const auto& [domain, sub] : r.domain_reports)
    report_csv_section(out, sub, csv_quote(domain));
  out << "\nconfusion,gold\\pred";
  for (int c = 0; c < kNumLabels; ++c)
    out << ',' << label_name(static_cast<Label>(c));
  out << '\n';
  for (int g = 0; g < kNumLabels; ++g) {
    out << "confusion," << label_name(static_cast<Label>(g));
    for (int p = 0; p < kNumLabels; ++p) out << ',' << r.confusion.counts[g][p];
    out << '\n';
  }
  return out.str();
}

std::string report_to_markdown(const EvalReport& r) {
  std::ostringstream out;
  MarkdownTable t({"scope", "class", "precision", "recall", "f1", "support"});
  auto add_scope = [&](const std::string& scope, const EvalReport& rep) {
    for (int c = 0; c < kNumLabels; ++c) {
      const ClassMetrics& m = rep.per_class[c];
      std::string f1 = fmt4(m.f1);
      if (m.zero_denominator) f1 += " *";
      t.add_row({scope, label_name(static_cast<Label>(c)), fmt4(m.precision),
                 fmt4(m.recall), f1, std::to_string(m.support)});
    }
    t.add_row({scope, "micro", "", "", fmt4(rep.micro_f1),
               std::to_string(rep.confusion.total())});
  };
  add_scope("overall", r);
  for (const auto& [domain, sub] : r.domain_reports) add_scope(domain, sub);
  out << t.str();
  if (r.zero_denominator)
    out << "\n\\* zero-denominator metric, 0 by convention\n";

  out << "\nConfusion (rows gold, columns predicted):\n\n";
  MarkdownTable c({"gold \\ pred", label_name(Label::None),
                   label_name(Label::Better), label_name(Label::Worse)});
  for (int g = 0; g < kNumLabels; ++g)
    c.add_row({label_name(static_cast<Label>(g)),
               std::to_string(r.confusion.counts[g][0]),
               std::to_string(r.confusion.counts[g][1]),
               std::to_string(r.confusion.counts[g][2])});
  out << c.str();
  return out.str();
}

std::string cv_to_csv(const CvResult& r) {
  std::ostringstream out;
  out << "fold,micro_f1";
  for (int c = 0; c < kNumLabels; ++c)
    out << ",f1_" << label_name(static_cast<Label>(c));
  out << '\n';
  for (std::size_t f = 0; f < r.folds.size(); ++f) {
    out << (f + 1) << ',' << fmt4(r.folds[f].micro_f1);
    for (int c = 0; c < kNumLabels; ++c)
      out << ',' << fmt4(r.folds[f].per_class[c].f1);
    out << '\n';
  }
  out << "mean," << fmt4(r.mean_micro_f1);
  for (int c = 0; c < kNumLabels; ++c) out << ',' << fmt4(r.mean_f1[c]);
  out << '\n';
  out << "stddev," << fmt4(r.stddev_micro_f1);
  for (int c = 0; c < kNumLabels; ++c) out << ',' << fmt4(r.stddev_f1[c]);
  out << '\n';
  return out.str();
}

std::string cv_to_markdown(const CvResult& r) {
  MarkdownTable t({"fold", "micro F1", std::string("F1 ") + label_name(Label::None),
                   std::string("F1 ") + label_name(Label::Better),
                   std::string("F1 ") + label_name(Label::Worse)});
  for (std::size_t f = 0; f < r.folds.size(); ++f)
    t.add_row({std::to_string(f + 1), fmt4(r.folds[f].micro_f1),
               fmt4(r.folds[f].per_class[0].f1), fmt4(r.folds[f].per_class[1].f1),
               fmt4(r.folds[f].per_class[2].f1)});
  t.add_row({"mean", fmt4(r.mean_micro_f1), fmt4(r.mean_f1[0]),
             fmt4(r.mean_f1[1]), fmt4(r.mean_f1[2])});
  t.add_row({"stddev", fmt4(r.stddev_micro_f1), fmt4(r.stddev_f1[0]),
             fmt4(r.stddev_f1[1]), fmt4(r.stddev_f1[2])});
  return t.str();
}

std::string cross_domain_to_csv(const CrossDomainResult& r) {
  std::ostringstream out;
  out << "train\\test";
  for (const auto& d : r.domains) out << ',' << csv_quote(d);
  out << '\n';
  for (std::size_t i = 0; i < r.domains.size(); ++i) {
    out << csv_quote(r.domains[i]);
    for (double v : r.micro_f1[i]) out << ',' << fmt4(v);
    out << '\n';
  }
  return out.str();
}

std::string cross_domain_to_markdown(const CrossDomainResult& r) {
  std::vector<std::string> header{"train \\ test"};
  header.insert(header.end(), r.domains.begin(), r.domains.end());
  MarkdownTable t(header);
  for (std::size_t i = 0; i < r.domains.size(); ++i) {
    std::vector<std::string> row{r.domains[i]};
    for (double v : r.micro_f1[i]) row.push_back(fmt4(v));
    t.add_row(row);
  }
  return t.str();
}

std::string errors_to_csv(const ErrorReport& r) {
  std::ostringstream out;
  out << "gold,predicted,confidence_bin,count,ids\n";
  for (const auto& g : r.groups) {
    std::string ids;
    for (const auto& c : g.cases) {
      if (!ids.empty()) ids += ' ';
      ids += c.id;
    }
    out << label_name(g.gold) << ',' << label_name(g.predicted) << ','
        << csv_quote(bin_name(g.bin)) << ',' << g.cases.size() << ','
        << csv_quote(ids) << '\n';
  }
  out << "total,,," << r.total_errors << ",\n";
  return out.str();
}

std::string errors_to_markdown(const ErrorReport& r) {
  MarkdownTable t({"gold", "predicted", "confidence", "count"});
  for (const auto& g : r.groups)
    t.add_row({label_name(g.gold), label_name(g.predicted), bin_name(g.bin),
               std::to_string(g.cases.size())});
  t.add_row({"total", "", "", std::to_string(r.total_errors)});
  return t.str();
}

std::string bar_chart_svg(const std::vector<ChartBar>& bars,
                          const std::string& title) {
  const int bar_w = 56, gap = 24, margin_l = 56, margin_r = 16;
  const int margin_t = 40, plot_h = 260, margin_b = 48;
  const int n = static_cast<int>(bars.size());
  const int width = margin_l + margin_r + n * bar_w + (n > 0 ? (n - 1) * gap : 0);
  const int height = margin_t + plot_h + margin_b;
  auto y_of = [&](double v) {
    v = std::clamp(v, 0.0, 1.0);
    return margin_t + plot_h - static_cast<int>(v * plot_h + 0.5);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">"
      << title << "</text>\n";
  for (int tick = 0; tick <= 10; tick += 2) {
    int y = y_of(tick / 10.0);
    out << "<line x1=\"" << margin_l << "\" y1=\"" << y << "\" x2=\""
        << width - margin_r << "\" y2=\"" << y
        << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << margin_l - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">" << fmt4(tick / 10.0).substr(0, 3)
        << "</text>\n";
  }
  for (int i = 0; i < n; ++i) {
    int x = margin_l + i * (bar_w + gap);
    int y = y_of(bars[i].value);
    out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w
        << "\" height=\"" << (margin_t + plot_h - y)
        << "\" fill=\"#4878a8\"/>\n";
    if (bars[i].stddev > 0.0) {
      int cx = x + bar_w / 2;
      int y_hi = y_of(bars[i].value + bars[i].stddev);
      int y_lo = y_of(bars[i].value - bars[i].stddev);
      out << "<line x1=\"" << cx << "\" y1=\"" << y_hi << "\" x2=\"" << cx
          << "\" y2=\"" << y_lo << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
      for (int yw : {y_hi, y_lo})
        out << "<line x1=\"" << cx - 8 << "\" y1=\"" << yw << "\" x2=\""
            << cx + 8 << "\" y2=\"" << yw
            << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
    }
    out << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << y - 6
        << "\" text-anchor=\"middle\">" << fmt4(bars[i].value) << "</text>\n";
    out << "<text x=\"" << x + bar_w / 2 << "\" y=\""
        << margin_t + plot_h + 18 << "\" text-anchor=\"middle\">"
        << bars[i].label << "</text>\n";
  }
  out << "<line x1=\"" << margin_l << "\" y1=\"" << margin_t + plot_h
      << "\" x2=\"" << width - margin_r << "\" y2=\"" << margin_t + plot_h
      << "\" stroke=\"#222\" stroke-width=\"1\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace compsent
