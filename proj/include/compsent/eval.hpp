#pragma once

// Stratified k-fold plans, per-class and micro-averaged metrics, the
// cross-domain train/test matrix and confidence-binned error reports.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compsent/corpus.hpp"

namespace compsent {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfusionMatrix {
  // gold rows x predicted columns, label-value order
  std::array<std::array<long, kNumLabels>, kNumLabels> counts{};

  void add(Label gold, Label pred) {
    ++counts[static_cast<int>(gold)][static_cast<int>(pred)];
  }
  long total() const;
  long diagonal() const;
};

struct ClassMetrics {
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  long support = 0;                // gold instances of the class
  bool zero_denominator = false;   // any metric defined by convention only
};

struct EvalReport {
  ConfusionMatrix confusion;
  std::array<ClassMetrics, kNumLabels> per_class;
  double micro_f1 = 0.0;  // equals accuracy for single-label multiclass
  double accuracy = 0.0;
  bool zero_denominator = false;
  std::vector<std::pair<std::string, EvalReport>> domain_reports;
};

struct FoldPlan {
  int k = 0;
  std::vector<std::vector<std::string>> fold_ids;
};

// Per-label round-robin over seeded shuffles, so every fold's label counts
// sit within one instance of the exact proportional share.
FoldPlan stratified_kfold(const Dataset& ds, int k, std::uint64_t seed);

// Zero denominators yield 0 and set the convention flag; micro-F1 comes
// from pooled counts, which makes it equal accuracy exactly.
EvalReport compute_metrics(const std::vector<Label>& gold,
                           const std::vector<Label>& pred);

// Overall report plus per-domain sub-reports over a dataset's sentences.
EvalReport evaluate_dataset(const Dataset& ds, const std::vector<Label>& pred);

// Trains on the first dataset, returns predictions for the second.
using FitPredict =
    std::function<std::vector<Label>(const Dataset&, const Dataset&)>;

struct CvResult {
  std::vector<EvalReport> folds;
  double mean_micro_f1 = 0.0, stddev_micro_f1 = 0.0;
  std::array<double, kNumLabels> mean_f1{}, stddev_f1{};
};

// Fitting (feature spaces included) happens inside fit_predict on each
// fold's training portion only. Stddev is the population form.
CvResult cross_validate(const Dataset& ds, const FitPredict& fit_predict,
                        int k, std::uint64_t seed);

struct CrossDomainResult {
  std::vector<std::string> domains;           // sorted
  std::vector<std::vector<double>> micro_f1;  // [train domain][test domain]
};

// Off-diagonal cells train on the whole row domain and test on the whole
// column domain; diagonal cells use within-domain k-fold cross-validation.
CrossDomainResult cross_domain_eval(const Dataset& ds,
                                    const FitPredict& fit_predict, int cv_k,
                                    std::uint64_t seed);

// Confidence bins: 0 for < 0.8, 1 for [0.8, 1), 2 for exactly 1.
int confidence_bin(double confidence);

struct ErrorCase {
  std::string id;
  std::string text;
  Label gold = Label::None;
  Label predicted = Label::None;
  double confidence = 1.0;
};

struct ErrorGroup {
  Label gold = Label::None;
  Label predicted = Label::None;
  int bin = 0;
  std::vector<ErrorCase> cases;
};

struct ErrorReport {
  std::vector<ErrorGroup> groups;  // sorted by gold, predicted, bin
  long total_errors = 0;
};

ErrorReport error_report(const Dataset& ds, const std::vector<Label>& pred);

}  // namespace compsent
