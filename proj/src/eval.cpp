#include "compsent/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "compsent/rng.hpp"

namespace compsent {

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& row : counts)
    for (long c : row) t += c;
  return t;
}

long ConfusionMatrix::diagonal() const {
  long d = 0;
  for (int k = 0; k < kNumLabels; ++k) d += counts[k][k];
  return d;
}

FoldPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed) {
  if (k < 2) throw EvalError("fold count must be at least 2");
  if (static_cast<std::size_t>(k) > ds.sentences.size())
    throw EvalError("fold count " + std::to_string(k) + " exceeds " +
                    std::to_string(ds.sentences.size()) + " sentences");
  FoldPlan plan;
  plan.k = k;
  plan.fold_ids.resize(k);
  Rng rng(seed);
  for (int label = 0; label < kNumLabels; ++label) {
    std::vector<std::string> stratum;
    for (const auto& s : ds.sentences)
      if (static_cast<int>(s.label) == label) stratum.push_back(s.id);
    Rng stratum_rng = rng.fork(static_cast<std::uint64_t>(label));
    shuffle(stratum, stratum_rng);
    for (std::size_t i = 0; i < stratum.size(); ++i)
      plan.fold_ids[i % k].push_back(std::move(stratum[i]));
  }
  return plan;
}

EvalReport compute_metrics(const std::vector<Label>& gold,
                           const std::vector<Label>& pred) {
  if (gold.empty() || gold.size() != pred.size())
    throw EvalError("gold and prediction sequences must align and be non-empty");
  EvalReport r;
  for (std::size_t i = 0; i < gold.size(); ++i) r.confusion.add(gold[i], pred[i]);

  long diag = r.confusion.diagonal(), total = r.confusion.total();
  for (int k = 0; k < kNumLabels; ++k) {
    long tp = r.confusion.counts[k][k];
    long gold_k = 0, pred_k = 0;
    for (int j = 0; j < kNumLabels; ++j) {
      gold_k += r.confusion.counts[k][j];
      pred_k += r.confusion.counts[j][k];
    }
    ClassMetrics& m = r.per_class[k];
    m.support = gold_k;
    if (pred_k > 0)
      m.precision = static_cast<double>(tp) / static_cast<double>(pred_k);
    else
      m.zero_denominator = true;
    if (gold_k > 0)
      m.recall = static_cast<double>(tp) / static_cast<double>(gold_k);
    else
      m.zero_denominator = true;
    if (m.precision + m.recall > 0.0)
      m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    else
      m.zero_denominator = true;
    r.zero_denominator = r.zero_denominator || m.zero_denominator;
  }
  long fp = total - diag, fn = total - diag;
  r.micro_f1 = 2.0 * static_cast<double>(diag) /
               (2.0 * static_cast<double>(diag) + static_cast<double>(fp) +
                static_cast<double>(fn));
  r.accuracy = static_cast<double>(diag) / static_cast<double>(total);
  return r;
}

EvalReport evaluate_dataset(const Dataset& ds, const std::vector<Label>& pred) {
  if (ds.sentences.size() != pred.size())
    throw EvalError("prediction count does not match dataset");
  std::vector<Label> gold;
  gold.reserve(ds.sentences.size());
  for (const auto& s : ds.sentences) gold.push_back(s.label);
  EvalReport r = compute_metrics(gold, pred);

  std::map<std::string, std::pair<std::vector<Label>, std::vector<Label>>> by_domain;
  for (std::size_t i = 0; i < ds.sentences.size(); ++i) {
    auto& [g, p] = by_domain[ds.sentences[i].domain];
    g.push_back(gold[i]);
    p.push_back(pred[i]);
  }
  if (by_domain.size() > 1)
    for (auto& [domain, gp] : by_domain)
      r.domain_reports.emplace_back(domain, compute_metrics(gp.first, gp.second));
  return r;
}

namespace {

Dataset subset_by_ids(const Dataset& ds, const std::unordered_set<std::string>& ids,
                      bool keep) {
  Dataset out;
  out.provenance = ds.provenance;
  for (const auto& s : ds.sentences)
    if ((ids.count(s.id) > 0) == keep) out.sentences.push_back(s);
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace

CvResult cross_validate(const Dataset& ds, const FitPredict& fit_predict,
                        int k, std::uint64_t seed) {
  FoldPlan plan = stratified_kfold(ds, k, seed);
  CvResult result;
  std::vector<double> micro;
  std::array<std::vector<double>, kNumLabels> per_class;
  for (int f = 0; f < k; ++f) {
    std::unordered_set<std::string> test_ids(plan.fold_ids[f].begin(),
                                             plan.fold_ids[f].end());
    Dataset test = subset_by_ids(ds, test_ids, true);
    Dataset train = subset_by_ids(ds, test_ids, false);
    std::vector<Label> pred = fit_predict(train, test);
    EvalReport report = evaluate_dataset(test, pred);
    micro.push_back(report.micro_f1);
    for (int c = 0; c < kNumLabels; ++c)
      per_class[c].push_back(report.per_class[c].f1);
    result.folds.push_back(std::move(report));
  }
  result.mean_micro_f1 = mean_of(micro);
  result.stddev_micro_f1 = stddev_of(micro, result.mean_micro_f1);
  for (int c = 0; c < kNumLabels; ++c) {
    result.mean_f1[c] = mean_of(per_class[c]);
    result.stddev_f1[c] = stddev_of(per_class[c], result.mean_f1[c]);
  }
  return result;
}

CrossDomainResult cross_domain_eval(const Dataset& ds,
                                    const FitPredict& fit_predict, int cv_k,
                                    std::uint64_t seed) {
  std::set<std::string> names;
  for (const auto& s : ds.sentences) names.insert(s.domain);
  if (names.size() < 2)
    throw EvalError("cross-domain evaluation needs at least two domains");

  CrossDomainResult result;
  result.domains.assign(names.begin(), names.end());
  std::map<std::string, Dataset> per_domain;
  for (const auto& d : result.domains) per_domain[d].provenance = ds.provenance;
  for (const auto& s : ds.sentences) per_domain[s.domain].sentences.push_back(s);

  std::size_t n = result.domains.size();
  result.micro_f1.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t row = 0; row < n; ++row) {
    const Dataset& train_domain = per_domain[result.domains[row]];
    for (std::size_t col = 0; col < n; ++col) {
      if (row == col) {
        result.micro_f1[row][col] =
            cross_validate(train_domain, fit_predict, cv_k, seed).mean_micro_f1;
        continue;
      }
      const Dataset& test_domain = per_domain[result.domains[col]];
      std::vector<Label> pred = fit_predict(train_domain, test_domain);
      result.micro_f1[row][col] =
          evaluate_dataset(test_domain, pred).micro_f1;
    }
  }
  return result;
}

int confidence_bin(double confidence) {
  if (confidence >= 1.0) return 2;
  if (confidence >= 0.8) return 1;
  return 0;
}

ErrorReport error_report(const Dataset& ds, const std::vector<Label>& pred) {
  if (ds.sentences.size() != pred.size())
    throw EvalError("prediction count does not match dataset");
  std::map<std::tuple<int, int, int>, std::vector<ErrorCase>> grouped;
  for (std::size_t i = 0; i < ds.sentences.size(); ++i) {
    const LabeledSentence& s = ds.sentences[i];
    if (s.label == pred[i]) continue;
    ErrorCase e{s.id, s.text, s.label, pred[i], s.confidence};
    grouped[{static_cast<int>(s.label), static_cast<int>(pred[i]),
             confidence_bin(s.confidence)}]
        .push_back(std::move(e));
  }
  ErrorReport report;
  for (auto& [key, cases] : grouped) {
    ErrorGroup g;
    g.gold = static_cast<Label>(std::get<0>(key));
    g.predicted = static_cast<Label>(std::get<1>(key));
    g.bin = std::get<2>(key);
    report.total_errors += static_cast<long>(cases.size());
    g.cases = std::move(cases);
    report.groups.push_back(std::move(g));
  }
  return report;
}

}  // namespace compsent
