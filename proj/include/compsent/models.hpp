#pragma once

// Multiclass classifiers over sparse feature vectors: gradient-boosted
// decision trees, multinomial logistic regression, multinomial naive Bayes
// and a majority vote, behind one predict/serialize interface.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "compsent/corpus.hpp"
#include "compsent/features.hpp"

namespace compsent {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainConfig {
  int estimators = 1000;
  double shrinkage = 0.1;
  int max_depth = 6;
  double min_child_weight = 1.0;
  std::uint64_t seed = 0;
};

struct Prediction {
  Label label = Label::None;
  std::array<double, kNumLabels> probs{};
};

// Probability argmax; ties resolve to the lowest label value
// (NONE < BETTER < WORSE).
Label argmax_label(const std::array<double, kNumLabels>& probs);

// Training kernels keep a plain sequential path next to the OpenMP one;
// both orders of summation are fixed so the results are bit-identical.
enum class Parallelism { Serial, OpenMP };

class Model {
 public:
  virtual ~Model() = default;
  virtual Prediction predict(const SparseVector& x) const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::string type() const = 0;
  virtual void save_payload(std::ostream& out) const = 0;
};

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // x[feature] <= threshold goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  double value = 0.0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  double eval(const SparseVector& x) const;
};

class GradientBoostedEnsemble : public Model {
 public:
  std::size_t dim = 0;
  double shrinkage = 0.1;
  std::array<double, kNumLabels> base_score{};       // raw-score offsets
  std::array<std::vector<DecisionTree>, kNumLabels> trees;
  std::vector<double> train_loss;  // mean cross-entropy after each round

  Prediction predict(const SparseVector& x) const override;
  std::size_t dimension() const override { return dim; }
  std::string type() const override { return "gbdt"; }
  void save_payload(std::ostream& out) const override;
  static GradientBoostedEnsemble load_payload(std::istream& in);
};

class LogisticRegressionModel : public Model {
 public:
  std::size_t dim = 0;
  double l2 = 0.0;
  std::vector<double> weights;  // kNumLabels x dim, row-major
  std::array<double, kNumLabels> bias{};
  std::vector<double> train_loss;

  Prediction predict(const SparseVector& x) const override;
  std::size_t dimension() const override { return dim; }
  std::string type() const override { return "logreg"; }
  void save_payload(std::ostream& out) const override;
  static LogisticRegressionModel load_payload(std::istream& in);
};

class NaiveBayesModel : public Model {
 public:
  std::size_t dim = 0;
  double alpha = 1.0;
  std::array<double, kNumLabels> log_prior{};
  std::vector<double> log_likelihood;  // kNumLabels x dim, row-major

  Prediction predict(const SparseVector& x) const override;
  std::size_t dimension() const override { return dim; }
  std::string type() const override { return "nb"; }
  void save_payload(std::ostream& out) const override;
  static NaiveBayesModel load_payload(std::istream& in);
};

class MajorityModel : public Model {
 public:
  Label majority = Label::None;
  std::array<double, kNumLabels> distribution{};  // training frequencies

  Prediction predict(const SparseVector& x) const override;
  std::size_t dimension() const override { return 0; }  // any input accepted
  std::string type() const override { return "majority"; }
  void save_payload(std::ostream& out) const override;
  static MajorityModel load_payload(std::istream& in);
};

// Boosting: per round and label, a regression tree is fitted to the
// cross-entropy residual (one-hot minus softmax) with second-order leaf
// weights sum(g)/(sum(h)+1), h = p(1-p). Splits are exact greedy over
// sorted feature values, threshold at the midpoint, ties to the lowest
// feature index then lowest threshold. Raw scores start at zero.
GradientBoostedEnsemble train_gbdt(const std::vector<SparseVector>& X,
                                   const std::vector<Label>& y,
                                   const TrainConfig& cfg,
                                   Parallelism par = Parallelism::OpenMP);

// Full-batch gradient descent on the L2-regularized multinomial
// cross-entropy from zero initialization; the step is halved whenever it
// fails to decrease the loss, so the recorded loss curve is monotone.
// The bias stays unregularized.
LogisticRegressionModel train_logreg(const std::vector<SparseVector>& X,
                                     const std::vector<Label>& y, double l2,
                                     int iterations,
                                     Parallelism par = Parallelism::OpenMP);

// Regularized objective at the model's current parameters, mean
// cross-entropy plus 0.5*l2*||W||^2, and optionally its analytic gradient
// (bias unregularized). Exposed so the gradient can be checked numerically.
double logreg_objective(const LogisticRegressionModel& m,
                        const std::vector<SparseVector>& X,
                        const std::vector<Label>& y, double l2,
                        Parallelism par,
                        std::vector<double>* grad_w = nullptr,
                        std::array<double, kNumLabels>* grad_b = nullptr);

// Multinomial naive Bayes with Laplace smoothing alpha over raw counts.
NaiveBayesModel train_naive_bayes(const std::vector<SparseVector>& X,
                                  const std::vector<Label>& y, double alpha);

MajorityModel majority_baseline(const std::vector<Label>& y);

// Versioned text format; numbers are stored as hex floats so that a
// round trip reproduces predictions bit for bit.
void serialize_model(const Model& model, std::ostream& out);
std::unique_ptr<Model> deserialize_model(std::istream& in);

}  // namespace compsent
