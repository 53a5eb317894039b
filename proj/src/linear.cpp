#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "compsent/models.hpp"
#include "model_io.hpp"

namespace compsent {

namespace {

// Gradients and losses are accumulated per fixed sample block and reduced
// in block order, so serial and OpenMP runs sum in the same order.
constexpr int kBlocks = 8;

struct BlockRange {
  std::size_t begin, end;
};

BlockRange block_range(std::size_t n, int b) {
  return {n * b / kBlocks, n * (b + 1) / kBlocks};
}

std::array<double, kNumLabels> scores_of(const LogisticRegressionModel& m,
                                         const SparseVector& x) {
  std::array<double, kNumLabels> s = m.bias;
  for (const auto& [j, v] : x.entries)
    for (int k = 0; k < kNumLabels; ++k) s[k] += m.weights[k * m.dim + j] * v;
  return s;
}

double data_loss(const LogisticRegressionModel& m,
                 const std::vector<SparseVector>& X,
                 const std::vector<Label>& y, Parallelism par) {
  std::array<double, kBlocks> partial{};
  auto run = [&](int b) {
    auto [lo, hi] = block_range(X.size(), b);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      auto p = detail::softmax3(scores_of(m, X[i]));
      acc -= std::log(std::max(p[static_cast<int>(y[i])], 1e-300));
    }
    partial[b] = acc;
  };
  if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < kBlocks; ++b) run(b);
  } else {
    for (int b = 0; b < kBlocks; ++b) run(b);
  }
  double loss = 0.0;
  for (int b = 0; b < kBlocks; ++b) loss += partial[b];
  return loss / static_cast<double>(X.size());
}

double penalty(const LogisticRegressionModel& m, double l2) {
  double ss = 0.0;
  for (double w : m.weights) ss += w * w;
  return 0.5 * l2 * ss;
}

// Mean cross-entropy gradient plus l2 * W; bias columns unregularized.
void gradient(const LogisticRegressionModel& m,
              const std::vector<SparseVector>& X, const std::vector<Label>& y,
              double l2, Parallelism par, std::vector<double>& grad_w,
              std::array<double, kNumLabels>& grad_b) {
  std::size_t wsize = kNumLabels * m.dim;
  static thread_local std::vector<double> partial_w;
  partial_w.assign(wsize * kBlocks, 0.0);
  std::array<std::array<double, kNumLabels>, kBlocks> partial_b{};

  auto run = [&](int b) {
    auto [lo, hi] = block_range(X.size(), b);
    double* pw = partial_w.data() + wsize * b;
    for (std::size_t i = lo; i < hi; ++i) {
      auto p = detail::softmax3(scores_of(m, X[i]));
      for (int k = 0; k < kNumLabels; ++k) {
        double c = p[k] - (static_cast<int>(y[i]) == k ? 1.0 : 0.0);
        for (const auto& [j, v] : X[i].entries) pw[k * m.dim + j] += c * v;
        partial_b[b][k] += c;
      }
    }
  };
  if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int b = 0; b < kBlocks; ++b) run(b);
  } else {
    for (int b = 0; b < kBlocks; ++b) run(b);
  }

  double inv_n = 1.0 / static_cast<double>(X.size());
  grad_w.assign(wsize, 0.0);
  grad_b.fill(0.0);
  for (int b = 0; b < kBlocks; ++b) {
    const double* pw = partial_w.data() + wsize * b;
    for (std::size_t i = 0; i < wsize; ++i) grad_w[i] += pw[i];
    for (int k = 0; k < kNumLabels; ++k) grad_b[k] += partial_b[b][k];
  }
  for (std::size_t i = 0; i < wsize; ++i)
    grad_w[i] = grad_w[i] * inv_n + l2 * m.weights[i];
  for (int k = 0; k < kNumLabels; ++k) grad_b[k] *= inv_n;
}

}  // namespace

double logreg_objective(const LogisticRegressionModel& m,
                        const std::vector<SparseVector>& X,
                        const std::vector<Label>& y, double l2,
                        Parallelism par, std::vector<double>* grad_w,
                        std::array<double, kNumLabels>* grad_b) {
  if (X.empty() || X.size() != y.size())
    throw ModelError("objective needs matching nonempty data");
  if (grad_w && grad_b) gradient(m, X, y, l2, par, *grad_w, *grad_b);
  return data_loss(m, X, y, par) + penalty(m, l2);
}

LogisticRegressionModel train_logreg(const std::vector<SparseVector>& X,
                                     const std::vector<Label>& y, double l2,
                                     int iterations, Parallelism par) {
  if (X.empty() || X.size() != y.size())
    throw ModelError("training data empty or label count mismatch");
  std::size_t dim = X[0].dimension;
  for (const auto& x : X)
    if (x.dimension != dim) throw ModelError("inconsistent feature dimension");

  LogisticRegressionModel m;
  m.dim = dim;
  m.l2 = l2;
  m.weights.assign(kNumLabels * dim, 0.0);

  std::vector<double> grad_w;
  std::array<double, kNumLabels> grad_b{};
  double loss = data_loss(m, X, y, par) + penalty(m, l2);
  double step = 1.0;

  for (int it = 0; it < iterations; ++it) {
    gradient(m, X, y, l2, par, grad_w, grad_b);
    LogisticRegressionModel trial = m;
    double trial_loss = loss;
    while (step > 1e-18) {
      for (std::size_t i = 0; i < trial.weights.size(); ++i)
        trial.weights[i] = m.weights[i] - step * grad_w[i];
      for (int k = 0; k < kNumLabels; ++k)
        trial.bias[k] = m.bias[k] - step * grad_b[k];
      trial_loss = data_loss(trial, X, y, par) + penalty(trial, l2);
      if (trial_loss < loss) break;
      step *= 0.5;
    }
    if (trial_loss >= loss) break;  // no step small enough still helps
    m.weights.swap(trial.weights);
    m.bias = trial.bias;
    loss = trial_loss;
    m.train_loss.push_back(loss);
  }
  return m;
}

Prediction LogisticRegressionModel::predict(const SparseVector& x) const {
  if (x.dimension != dim)
    throw ModelError("input dimension " + std::to_string(x.dimension) +
                     " does not match model dimension " + std::to_string(dim));
  Prediction out;
  out.probs = detail::softmax3(scores_of(*this, x));
  out.label = argmax_label(out.probs);
  return out;
}

void LogisticRegressionModel::save_payload(std::ostream& out) const {
  out << dim << ' ';
  detail::put_num(out, l2);
  out << '\n';
  for (int k = 0; k < kNumLabels; ++k) {
    detail::put_num(out, bias[k]);
    out << (k + 1 < kNumLabels ? ' ' : '\n');
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    detail::put_num(out, weights[i]);
    out << ((i + 1) % 8 == 0 || i + 1 == weights.size() ? '\n' : ' ');
  }
  out << train_loss.size();
  for (double v : train_loss) {
    out << ' ';
    detail::put_num(out, v);
  }
  out << '\n';
}

LogisticRegressionModel LogisticRegressionModel::load_payload(std::istream& in) {
  LogisticRegressionModel m;
  m.dim = static_cast<std::size_t>(detail::get_int(in));
  m.l2 = detail::get_num(in);
  for (int k = 0; k < kNumLabels; ++k) m.bias[k] = detail::get_num(in);
  m.weights.resize(kNumLabels * m.dim);
  for (auto& w : m.weights) w = detail::get_num(in);
  long losses = detail::get_int(in);
  for (long i = 0; i < losses; ++i) m.train_loss.push_back(detail::get_num(in));
  return m;
}

NaiveBayesModel train_naive_bayes(const std::vector<SparseVector>& X,
                                  const std::vector<Label>& y, double alpha) {
  if (X.empty() || X.size() != y.size())
    throw ModelError("training data empty or label count mismatch");
  if (alpha <= 0.0) throw ModelError("smoothing alpha must be positive");
  std::size_t dim = X[0].dimension;
  for (const auto& x : X) {
    if (x.dimension != dim) throw ModelError("inconsistent feature dimension");
    for (const auto& [j, v] : x.entries)
      if (v < 0.0) throw ModelError("negative feature value");
  }

  NaiveBayesModel m;
  m.dim = dim;
  m.alpha = alpha;
  std::array<double, kNumLabels> count{};
  std::vector<double> feature_sum(kNumLabels * dim, 0.0);
  std::array<double, kNumLabels> total{};
  for (std::size_t i = 0; i < X.size(); ++i) {
    int k = static_cast<int>(y[i]);
    count[k] += 1.0;
    for (const auto& [j, v] : X[i].entries) {
      feature_sum[k * dim + j] += v;
      total[k] += v;
    }
  }
  m.log_likelihood.resize(kNumLabels * dim);
  double n = static_cast<double>(X.size());
  for (int k = 0; k < kNumLabels; ++k) {
    m.log_prior[k] = std::log(count[k] > 0.0 ? count[k] / n : 1e-300);
    double denom = total[k] + alpha * static_cast<double>(dim);
    for (std::size_t j = 0; j < dim; ++j)
      m.log_likelihood[k * dim + j] =
          std::log((feature_sum[k * dim + j] + alpha) / denom);
  }
  return m;
}

Prediction NaiveBayesModel::predict(const SparseVector& x) const {
  if (x.dimension != dim)
    throw ModelError("input dimension " + std::to_string(x.dimension) +
                     " does not match model dimension " + std::to_string(dim));
  std::array<double, kNumLabels> s = log_prior;
  for (const auto& [j, v] : x.entries) {
    if (v < 0.0) throw ModelError("negative feature value");
    for (int k = 0; k < kNumLabels; ++k) s[k] += v * log_likelihood[k * dim + j];
  }
  Prediction out;
  out.probs = detail::softmax3(s);
  out.label = argmax_label(out.probs);
  return out;
}

void NaiveBayesModel::save_payload(std::ostream& out) const {
  out << dim << ' ';
  detail::put_num(out, alpha);
  out << '\n';
  for (int k = 0; k < kNumLabels; ++k) {
    detail::put_num(out, log_prior[k]);
    out << (k + 1 < kNumLabels ? ' ' : '\n');
  }
  for (std::size_t i = 0; i < log_likelihood.size(); ++i) {
    detail::put_num(out, log_likelihood[i]);
    out << ((i + 1) % 8 == 0 || i + 1 == log_likelihood.size() ? '\n' : ' ');
  }
}

NaiveBayesModel NaiveBayesModel::load_payload(std::istream& in) {
  NaiveBayesModel m;
  m.dim = static_cast<std::size_t>(detail::get_int(in));
  m.alpha = detail::get_num(in);
  for (int k = 0; k < kNumLabels; ++k) m.log_prior[k] = detail::get_num(in);
  m.log_likelihood.resize(kNumLabels * m.dim);
  for (auto& v : m.log_likelihood) v = detail::get_num(in);
  return m;
}

}  // namespace compsent
