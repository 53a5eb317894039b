#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "compsent/models.hpp"
#include "model_io.hpp"

namespace compsent {

namespace {

constexpr double kLambda = 1.0;     // L2 on leaf weights
constexpr int kFeatureChunk = 256;  // split-search work unit

struct ColumnEntry {
  std::int32_t sample;
  double value;
};

// Column-major view of the training matrix, each column ascending by value.
struct Columns {
  std::size_t dim = 0;
  std::vector<std::vector<ColumnEntry>> cols;
};

Columns build_columns(const std::vector<SparseVector>& X, std::size_t dim) {
  Columns c;
  c.dim = dim;
  c.cols.resize(dim);
  for (std::size_t i = 0; i < X.size(); ++i)
    for (const auto& [j, v] : X[i].entries) {
      if (j >= dim) throw ModelError("feature index exceeds stated dimension");
      c.cols[j].push_back({static_cast<std::int32_t>(i), v});
    }
  for (auto& col : c.cols)
    std::stable_sort(col.begin(), col.end(),
                     [](const ColumnEntry& a, const ColumnEntry& b) {
                       return a.value < b.value;
                     });
  return c;
}

struct LevelNode {
  std::int32_t tree_index;
  double g = 0.0, h = 0.0;
  std::int64_t count = 0;
};

struct SplitCand {
  double gain = 0.0;  // candidates must beat this strictly, so gain > 0
  std::int32_t feature = -1;
  double threshold = 0.0;
  double gl = 0.0, hl = 0.0;
  std::int64_t count_left = 0;
};

double split_gain(double gl, double hl, double gr, double hr, double g, double h) {
  return 0.5 * (gl * gl / (hl + kLambda) + gr * gr / (hr + kLambda) -
                g * g / (h + kLambda));
}

// Best split per active node over one contiguous feature range. Scanning
// ascending values with a strict improvement test picks the lowest
// threshold within a feature and the lowest feature index overall.
void scan_features(const Columns& cols, std::size_t f_begin, std::size_t f_end,
                   const std::vector<double>& g, const std::vector<double>& h,
                   const std::vector<std::int32_t>& node_of,
                   const std::vector<std::int32_t>& slot_of,
                   const std::vector<LevelNode>& level, double min_child_weight,
                   std::vector<SplitCand>& best) {
  std::size_t a = level.size();
  std::vector<double> nz_g(a), nz_h(a), gl(a), hl(a), prev(a), zg(a), zh(a);
  std::vector<std::int64_t> nz_cnt(a), cnt_l(a);
  std::vector<char> started(a), zero_done(a);
  std::vector<std::int32_t> touched;

  for (std::size_t f = f_begin; f < f_end; ++f) {
    const auto& col = cols.cols[f];
    if (col.empty()) continue;

    touched.clear();
    for (const auto& e : col) {
      std::int32_t slot = slot_of[node_of[e.sample]];
      if (slot < 0) continue;
      if (!started[slot]) {
        started[slot] = 1;
        nz_g[slot] = nz_h[slot] = 0.0;
        nz_cnt[slot] = 0;
        touched.push_back(slot);
      }
      nz_g[slot] += g[e.sample];
      nz_h[slot] += h[e.sample];
      nz_cnt[slot] += 1;
    }
    if (touched.empty()) continue;

    for (std::int32_t slot : touched) {
      started[slot] = 0;  // reuse as "scan started" below
      zg[slot] = level[slot].g - nz_g[slot];
      zh[slot] = level[slot].h - nz_h[slot];
      zero_done[slot] = level[slot].count == nz_cnt[slot];
    }

    auto item = [&](std::int32_t slot, double v, double ig, double ih,
                    std::int64_t icnt) {
      if (!started[slot]) {
        started[slot] = 1;
        prev[slot] = v;
        gl[slot] = ig;
        hl[slot] = ih;
        cnt_l[slot] = icnt;
        return;
      }
      if (v > prev[slot]) {
        double gr = level[slot].g - gl[slot];
        double hr = level[slot].h - hl[slot];
        if (hl[slot] >= min_child_weight && hr >= min_child_weight) {
          double gain = split_gain(gl[slot], hl[slot], gr, hr, level[slot].g,
                                   level[slot].h);
          SplitCand& b = best[slot];
          if (gain > b.gain) {
            b.gain = gain;
            b.feature = static_cast<std::int32_t>(f);
            b.threshold = 0.5 * (prev[slot] + v);
            b.gl = gl[slot];
            b.hl = hl[slot];
            b.count_left = cnt_l[slot];
          }
        }
        prev[slot] = v;
      }
      gl[slot] += ig;
      hl[slot] += ih;
      cnt_l[slot] += icnt;
    };

    for (const auto& e : col) {
      std::int32_t slot = slot_of[node_of[e.sample]];
      if (slot < 0) continue;
      if (!zero_done[slot] && e.value > 0.0) {
        item(slot, 0.0, zg[slot], zh[slot],
             level[slot].count - nz_cnt[slot]);
        zero_done[slot] = 1;
      }
      item(slot, e.value, g[e.sample], h[e.sample], 1);
    }
    for (std::int32_t slot : touched) {
      if (!zero_done[slot])
        item(slot, 0.0, zg[slot], zh[slot], level[slot].count - nz_cnt[slot]);
      started[slot] = 0;
    }
  }
}

// One regression tree on gradients g with hessians h; node_of ends up
// holding each sample's leaf index.
DecisionTree build_tree(const Columns& cols, const std::vector<double>& g,
                        const std::vector<double>& h, const TrainConfig& cfg,
                        Parallelism par, std::vector<std::int32_t>& node_of) {
  std::size_t n = g.size();
  DecisionTree tree;
  tree.nodes.push_back(TreeNode{});
  std::fill(node_of.begin(), node_of.end(), 0);

  std::vector<LevelNode> level(1);
  level[0].tree_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    level[0].g += g[i];
    level[0].h += h[i];
  }
  level[0].count = static_cast<std::int64_t>(n);

  auto finalize = [&](const LevelNode& node) {
    TreeNode& t = tree.nodes[node.tree_index];
    t.feature = -1;
    t.value = node.g / (node.h + kLambda);
  };

  for (int depth = 0; depth < cfg.max_depth && !level.empty(); ++depth) {
    std::vector<std::int32_t> slot_of(tree.nodes.size(), -1);
    for (std::size_t s = 0; s < level.size(); ++s)
      slot_of[level[s].tree_index] = static_cast<std::int32_t>(s);

    std::size_t dim = cols.dim;
    std::size_t chunks = (dim + kFeatureChunk - 1) / kFeatureChunk;
    std::vector<std::vector<SplitCand>> chunk_best(
        chunks, std::vector<SplitCand>(level.size()));
    auto scan_chunk = [&](std::size_t c) {
      scan_features(cols, c * kFeatureChunk,
                    std::min(dim, (c + 1) * kFeatureChunk), g, h, node_of,
                    slot_of, level, cfg.min_child_weight, chunk_best[c]);
    };
    if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c)
        scan_chunk(static_cast<std::size_t>(c));
    } else {
      for (std::size_t c = 0; c < chunks; ++c) scan_chunk(c);
    }
    // ascending merge keeps the lowest winning feature index exactly as a
    // single sequential scan would
    std::vector<SplitCand> best(level.size());
    for (std::size_t c = 0; c < chunks; ++c)
      for (std::size_t s = 0; s < level.size(); ++s)
        if (chunk_best[c][s].gain > best[s].gain) best[s] = chunk_best[c][s];

    std::vector<LevelNode> next;
    std::vector<std::vector<std::int32_t>> by_feature;  // routing work
    std::vector<std::int32_t> feature_ids;
    for (std::size_t s = 0; s < level.size(); ++s) {
      if (best[s].feature < 0) {
        finalize(level[s]);
        continue;
      }
      TreeNode& t = tree.nodes[level[s].tree_index];
      t.feature = best[s].feature;
      t.threshold = best[s].threshold;
      t.left = static_cast<std::int32_t>(tree.nodes.size());
      t.right = t.left + 1;
      tree.nodes.push_back(TreeNode{});
      tree.nodes.push_back(TreeNode{});

      LevelNode l, r;
      l.tree_index = t.left;
      l.g = best[s].gl;
      l.h = best[s].hl;
      l.count = best[s].count_left;
      r.tree_index = t.right;
      r.g = level[s].g - best[s].gl;
      r.h = level[s].h - best[s].hl;
      r.count = level[s].count - best[s].count_left;
      next.push_back(l);
      next.push_back(r);

      auto it = std::find(feature_ids.begin(), feature_ids.end(), best[s].feature);
      if (it == feature_ids.end()) {
        feature_ids.push_back(best[s].feature);
        by_feature.emplace_back();
        it = feature_ids.end() - 1;
      }
      by_feature[it - feature_ids.begin()].push_back(
          static_cast<std::int32_t>(s));
    }
    if (next.empty()) return tree;

    // route samples: zero side first, then correct the nonzero entries
    std::vector<std::int32_t> old_node = node_of;
    for (std::size_t i = 0; i < n; ++i) {
      std::int32_t slot =
          old_node[i] < static_cast<std::int32_t>(slot_of.size())
              ? slot_of[old_node[i]]
              : -1;
      if (slot < 0 || best[slot].feature < 0) continue;
      const TreeNode& t = tree.nodes[level[slot].tree_index];
      node_of[i] = 0.0 <= t.threshold ? t.left : t.right;
    }
    for (std::size_t w = 0; w < feature_ids.size(); ++w) {
      for (const auto& e : cols.cols[feature_ids[w]]) {
        std::int32_t slot =
            old_node[e.sample] < static_cast<std::int32_t>(slot_of.size())
                ? slot_of[old_node[e.sample]]
                : -1;
        if (slot < 0) continue;
        if (std::find(by_feature[w].begin(), by_feature[w].end(), slot) ==
            by_feature[w].end())
          continue;
        const TreeNode& t = tree.nodes[level[slot].tree_index];
        node_of[e.sample] = e.value <= t.threshold ? t.left : t.right;
      }
    }
    level = std::move(next);
  }
  for (const auto& node : level) finalize(node);
  return tree;
}

}  // namespace

double DecisionTree::eval(const SparseVector& x) const {
  int cur = 0;
  while (nodes[cur].feature >= 0) {
    double v = x.get(static_cast<std::uint32_t>(nodes[cur].feature));
    cur = v <= nodes[cur].threshold ? nodes[cur].left : nodes[cur].right;
  }
  return nodes[cur].value;
}

GradientBoostedEnsemble train_gbdt(const std::vector<SparseVector>& X,
                                   const std::vector<Label>& y,
                                   const TrainConfig& cfg, Parallelism par) {
  if (X.empty() || X.size() != y.size())
    throw ModelError("training data empty or label count mismatch");
  if (cfg.estimators < 1 || cfg.max_depth < 1 || cfg.shrinkage <= 0.0 ||
      cfg.shrinkage > 1.0)
    throw ModelError("bad training configuration");
  std::size_t dim = X[0].dimension;
  for (const auto& x : X)
    if (x.dimension != dim) throw ModelError("inconsistent feature dimension");

  Columns cols = build_columns(X, dim);
  std::size_t n = X.size();

  GradientBoostedEnsemble model;
  model.dim = dim;
  model.shrinkage = cfg.shrinkage;

  std::vector<std::array<double, kNumLabels>> raw(n);
  for (auto& r : raw) r = model.base_score;
  std::vector<double> g(n), h(n);
  std::vector<std::int32_t> node_of(n);

  for (int round = 0; round < cfg.estimators; ++round) {
    std::vector<std::array<double, kNumLabels>> prob(n);
    for (std::size_t i = 0; i < n; ++i) prob[i] = detail::softmax3(raw[i]);

    for (int k = 0; k < kNumLabels; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double p = prob[i][k];
        g[i] = (static_cast<int>(y[i]) == k ? 1.0 : 0.0) - p;
        h[i] = p * (1.0 - p);
      }
      DecisionTree tree = build_tree(cols, g, h, cfg, par, node_of);
      for (std::size_t i = 0; i < n; ++i)
        raw[i][k] += cfg.shrinkage * tree.nodes[node_of[i]].value;
      model.trees[k].push_back(std::move(tree));
    }

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double p = detail::softmax3(raw[i])[static_cast<int>(y[i])];
      loss -= std::log(std::max(p, 1e-300));
    }
    loss /= static_cast<double>(n);
    assert(model.train_loss.empty() ||
           loss <= model.train_loss.back() + 1e-9);
    model.train_loss.push_back(loss);
  }
  return model;
}

Prediction GradientBoostedEnsemble::predict(const SparseVector& x) const {
  if (x.dimension != dim)
    throw ModelError("input dimension " + std::to_string(x.dimension) +
                     " does not match model dimension " + std::to_string(dim));
  std::array<double, kNumLabels> raw = base_score;
  for (int k = 0; k < kNumLabels; ++k)
    for (const auto& tree : trees[k]) raw[k] += shrinkage * tree.eval(x);
  Prediction out;
  out.probs = detail::softmax3(raw);
  out.label = argmax_label(out.probs);
  return out;
}

void GradientBoostedEnsemble::save_payload(std::ostream& out) const {
  out << dim << ' ';
  detail::put_num(out, shrinkage);
  out << ' ' << trees[0].size() << '\n';
  for (int k = 0; k < kNumLabels; ++k) {
    detail::put_num(out, base_score[k]);
    out << (k + 1 < kNumLabels ? ' ' : '\n');
  }
  out << train_loss.size();
  for (double v : train_loss) {
    out << ' ';
    detail::put_num(out, v);
  }
  out << '\n';
  for (int k = 0; k < kNumLabels; ++k)
    for (const auto& tree : trees[k]) {
      out << tree.nodes.size() << '\n';
      for (const auto& node : tree.nodes) {
        out << node.feature << ' ';
        detail::put_num(out, node.threshold);
        out << ' ' << node.left << ' ' << node.right << ' ';
        detail::put_num(out, node.value);
        out << '\n';
      }
    }
}

GradientBoostedEnsemble GradientBoostedEnsemble::load_payload(std::istream& in) {
  GradientBoostedEnsemble m;
  m.dim = static_cast<std::size_t>(detail::get_int(in));
  m.shrinkage = detail::get_num(in);
  long rounds = detail::get_int(in);
  for (int k = 0; k < kNumLabels; ++k) m.base_score[k] = detail::get_num(in);
  long losses = detail::get_int(in);
  for (long i = 0; i < losses; ++i) m.train_loss.push_back(detail::get_num(in));
  for (int k = 0; k < kNumLabels; ++k)
    for (long t = 0; t < rounds; ++t) {
      long count = detail::get_int(in);
      DecisionTree tree;
      for (long i = 0; i < count; ++i) {
        TreeNode node;
        node.feature = static_cast<std::int32_t>(detail::get_int(in));
        node.threshold = detail::get_num(in);
        node.left = static_cast<std::int32_t>(detail::get_int(in));
        node.right = static_cast<std::int32_t>(detail::get_int(in));
        node.value = detail::get_num(in);
        tree.nodes.push_back(node);
      }
      if (tree.nodes.empty()) throw ModelError("tree with no nodes");
      m.trees[k].push_back(std::move(tree));
    }
  return m;
}

}  // namespace compsent
