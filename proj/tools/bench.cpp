#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "compsent/models.hpp"
#include "compsent/rng.hpp"

// Times the boosting and logistic-regression training kernels in their
// sequential and OpenMP variants on a synthetic sparse problem, and checks
// that both variants serialize to identical bytes.
namespace {

using namespace compsent;

struct Problem {
  std::vector<SparseVector> X;
  std::vector<Label> y;
};

Problem make_problem(int rows, int dim, int nnz, std::uint64_t seed) {
  Rng rng(seed);
  Problem p;
  p.X.reserve(rows);
  p.y.reserve(rows);
  for (int r = 0; r < rows; ++r) {
    Label label = static_cast<Label>(rng.below(kNumLabels));
    std::set<std::uint32_t> indices;
    for (int k = 0; k < nnz; ++k) {
      // Features cluster by label so the trees have real structure to find.
      std::uint64_t base = rng.below(static_cast<std::uint64_t>(dim / 4));
      indices.insert(static_cast<std::uint32_t>(
          base + static_cast<std::uint64_t>(label) *
                     static_cast<std::uint64_t>(dim / 4)));
    }
    SparseVector x;
    x.dimension = static_cast<std::size_t>(dim);
    for (std::uint32_t idx : indices) x.set(idx, 1.0);
    p.X.push_back(std::move(x));
    p.y.push_back(label);
  }
  return p;
}

template <typename F>
double time_seconds(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

std::string model_bytes(const Model& m) {
  std::ostringstream out;
  serialize_model(m, out);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"training kernel benchmark, sequential vs OpenMP"};
  int rows = 4000, dim = 2000, nnz = 12, estimators = 40, logreg_iters = 50;
  std::uint64_t seed = 7;
  app.add_option("--rows", rows, "training rows");
  app.add_option("--dim", dim, "feature dimension");
  app.add_option("--nnz", nnz, "nonzeros per row");
  app.add_option("--estimators", estimators, "boosting rounds");
  app.add_option("--logreg-iterations", logreg_iters, "gradient steps");
  app.add_option("--seed", seed, "problem seed");
  CLI11_PARSE(app, argc, argv);

  Problem p = make_problem(rows, dim, nnz, seed);
  std::printf("problem: %d rows, %d features, %d nonzeros per row\n\n", rows,
              dim, nnz);

  TrainConfig cfg;
  cfg.estimators = estimators;
  GradientBoostedEnsemble serial_gbdt, openmp_gbdt;
  double t_serial = time_seconds(
      [&] { serial_gbdt = train_gbdt(p.X, p.y, cfg, Parallelism::Serial); });
  double t_openmp = time_seconds(
      [&] { openmp_gbdt = train_gbdt(p.X, p.y, cfg, Parallelism::OpenMP); });
  bool same = model_bytes(serial_gbdt) == model_bytes(openmp_gbdt);
  std::printf("gbdt %d rounds   sequential %7.3fs   openmp %7.3fs   x%.2f   %s\n",
              estimators, t_serial, t_openmp,
              t_openmp > 0 ? t_serial / t_openmp : 0.0,
              same ? "bit-identical" : "MISMATCH");

  LogisticRegressionModel serial_lr, openmp_lr;
  double l_serial = time_seconds([&] {
    serial_lr = train_logreg(p.X, p.y, 1e-4, logreg_iters, Parallelism::Serial);
  });
  double l_openmp = time_seconds([&] {
    openmp_lr = train_logreg(p.X, p.y, 1e-4, logreg_iters, Parallelism::OpenMP);
  });
  bool lr_same = model_bytes(serial_lr) == model_bytes(openmp_lr);
  std::printf("logreg %d steps  sequential %7.3fs   openmp %7.3fs   x%.2f   %s\n",
              logreg_iters, l_serial, l_openmp,
              l_openmp > 0 ? l_serial / l_openmp : 0.0,
              lr_same ? "bit-identical" : "MISMATCH");

  return same && lr_same ? 0 : 1;
}
