#include "slantsum/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "slantsum/error.hpp"
#include "slantsum/rng.hpp"

namespace slantsum {

std::string_view to_string(MaxFeatures rule) {
  return rule == MaxFeatures::kSqrt ? "sqrt" : "all";
}

MaxFeatures max_features_from_string(std::string_view name) {
  if (name == "sqrt") return MaxFeatures::kSqrt;
  if (name == "all") return MaxFeatures::kAll;
  throw ConfigError("unknown max_features rule '" + std::string(name) +
                    "' (expected \"sqrt\" or \"all\")");
}

double gini(const ClassCounts& counts) {
  const double total = static_cast<double>(counts[0] + counts[1]);
  if (total == 0.0) return 0.0;
  const double p0 = static_cast<double>(counts[0]) / total;
  const double p1 = static_cast<double>(counts[1]) / total;
  return 1.0 - p0 * p0 - p1 * p1;
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes)
    : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw FormatError("tree has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.leaf) {
      if (n.class_counts[0] + n.class_counts[1] == 0)
        throw FormatError("leaf " + std::to_string(i) + " has no samples");
    } else if (n.left != i + 1 || n.right <= n.left ||
               n.right >= nodes_.size()) {
      throw FormatError("node " + std::to_string(i) +
                        " has invalid child indices");
    }
  }
  // Children always follow their parent in preorder.
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    auto& n = nodes_[i];
    if (n.leaf) continue;
    for (std::size_t c = 0; c < 2; ++c)
      n.class_counts[c] = nodes_[n.left].class_counts[c] +
                          nodes_[n.right].class_counts[c];
  }
}

const TreeNode& DecisionTree::leaf_for(const SparseVector& x) const {
  std::size_t i = 0;
  while (!nodes_[i].leaf) {
    const auto& n = nodes_[i];
    i = x.at(n.feature) <= n.threshold ? n.left : n.right;
  }
  return nodes_[i];
}

ClassProbabilities DecisionTree::leaf_distribution(const SparseVector& x) const {
  const auto& counts = leaf_for(x).class_counts;
  const double total = static_cast<double>(counts[0] + counts[1]);
  return {static_cast<double>(counts[0]) / total,
          static_cast<double>(counts[1]) / total};
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes_[i].leaf) {
      d[nodes_[i].left] = d[i] + 1;
      d[nodes_[i].right] = d[i] + 1;
    }
  }
  return deepest;
}

namespace {

struct Split {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double proxy = 0.0;  // sum over children of (sum of squared counts) / weight
};

struct ValuePoint {
  double value;
  std::size_t cls;
  std::uint64_t weight;
};

double sum_sq_over_total(const ClassCounts& c) {
  const double total = static_cast<double>(c[0] + c[1]);
  if (total == 0.0) return 0.0;
  const double a = static_cast<double>(c[0]);
  const double b = static_cast<double>(c[1]);
  return (a * a + b * b) / total;
}

class TreeBuilder {
 public:
  TreeBuilder(std::span<const SparseVector> x, std::span<const std::size_t> y,
              std::span<const std::uint32_t> weights, std::size_t n_features,
              const ForestConfig& config, std::uint64_t seed)
      : x_(x),
        y_(y),
        weights_(weights),
        config_(config),
        rng_(seed),
        present_count_(n_features, 0),
        first_value_(n_features, 0.0),
        varies_(n_features, 0),
        slot_(n_features, -1) {
    mtry_ = config.max_features == MaxFeatures::kAll
                ? n_features
                : static_cast<std::size_t>(
                      std::ceil(std::sqrt(static_cast<double>(n_features))));
    mtry_ = std::max<std::size_t>(mtry_, 1);
  }

  std::vector<TreeNode> build() {
    std::vector<std::size_t> samples;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i] > 0) samples.push_back(i);
    }
    grow(samples);
    return std::move(nodes_);
  }

 private:
  std::size_t grow(const std::vector<std::size_t>& samples) {
    ClassCounts counts{0, 0};
    for (std::size_t s : samples) counts[y_[s]] += weights_[s];
    const std::size_t index = nodes_.size();
    nodes_.push_back(TreeNode{});
    nodes_[index].class_counts = counts;

    const std::uint64_t total = counts[0] + counts[1];
    if (counts[0] == 0 || counts[1] == 0 || total < 2 * config_.min_leaf)
      return index;

    Split split = best_split(samples, counts);
    if (!split.found) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t s : samples) {
      (x_[s].at(split.feature) <= split.threshold ? left : right).push_back(s);
    }
    nodes_[index].leaf = false;
    nodes_[index].feature = split.feature;
    nodes_[index].threshold = split.threshold;
    nodes_[index].left = static_cast<std::uint32_t>(grow(left));
    nodes_[index].right = static_cast<std::uint32_t>(grow(right));
    return index;
  }

  // Features taking more than one value among `samples`, ascending. A
  // feature absent from every sample is constant zero and never listed.
  std::vector<std::uint32_t> varying_features(
      const std::vector<std::size_t>& samples) {
    std::vector<std::uint32_t> touched;
    for (std::size_t s : samples) {
      for (const auto& e : x_[s].entries()) {
        if (present_count_[e.index]++ == 0) {
          touched.push_back(e.index);
          first_value_[e.index] = e.value;
          varies_[e.index] = 0;
        } else if (e.value != first_value_[e.index]) {
          varies_[e.index] = 1;
        }
      }
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t f : touched) {
      if (present_count_[f] < samples.size() || varies_[f]) out.push_back(f);
      present_count_[f] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Split best_split(const std::vector<std::size_t>& samples,
                   const ClassCounts& counts) {
    std::vector<std::uint32_t> candidates = varying_features(samples);
    if (candidates.empty()) return {};
    const std::size_t q = std::min(mtry_, candidates.size());
    for (std::size_t i = 0; i < q; ++i) {
      std::size_t j = i + rng_.uniform_index(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(q);
    std::sort(candidates.begin(), candidates.end());

    std::vector<std::vector<ValuePoint>> columns(q);
    for (std::size_t c = 0; c < q; ++c)
      slot_[candidates[c]] = static_cast<std::int32_t>(c);
    for (std::size_t s : samples) {
      for (const auto& e : x_[s].entries()) {
        if (std::int32_t c = slot_[e.index]; c >= 0)
          columns[static_cast<std::size_t>(c)].push_back(
              {e.value, y_[s], weights_[s]});
      }
    }
    for (std::uint32_t f : candidates) slot_[f] = -1;

    const double total = static_cast<double>(counts[0] + counts[1]);
    const double parent_proxy = sum_sq_over_total(counts);
    const double eps = 1e-12 * total;
    Split best;
    best.proxy = parent_proxy + eps;
    for (std::size_t c = 0; c < q; ++c) {
      auto& col = columns[c];
      ClassCounts zeros = counts;
      for (const auto& p : col) zeros[p.cls] -= p.weight;
      if (zeros[0] + zeros[1] > 0) {
        col.push_back({0.0, 0, zeros[0]});
        col.push_back({0.0, 1, zeros[1]});
      }
      std::sort(col.begin(), col.end(),
                [](const ValuePoint& a, const ValuePoint& b) {
                  return a.value < b.value;
                });
      ClassCounts left{0, 0};
      for (std::size_t i = 0; i + 1 < col.size(); ++i) {
        left[col[i].cls] += col[i].weight;
        if (col[i].value == col[i + 1].value) continue;
        const ClassCounts right{counts[0] - left[0], counts[1] - left[1]};
        if (left[0] + left[1] < config_.min_leaf ||
            right[0] + right[1] < config_.min_leaf)
          continue;
        const double proxy = sum_sq_over_total(left) + sum_sq_over_total(right);
        if (proxy > best.proxy) {
          double threshold = col[i].value + (col[i + 1].value - col[i].value) / 2;
          if (threshold >= col[i + 1].value) threshold = col[i].value;
          best.found = true;
          best.feature = candidates[c];
          best.threshold = threshold;
          best.proxy = proxy + eps;
        }
      }
    }
    return best;
  }

  std::span<const SparseVector> x_;
  std::span<const std::size_t> y_;
  std::span<const std::uint32_t> weights_;
  const ForestConfig& config_;
  Rng rng_;
  std::size_t mtry_ = 1;
  std::vector<TreeNode> nodes_;
  // Per-feature scratch, reset after each use.
  std::vector<std::size_t> present_count_;
  std::vector<double> first_value_;
  std::vector<char> varies_;
  std::vector<std::int32_t> slot_;
};

}  // namespace

DecisionTree grow_tree(std::span<const SparseVector> x,
                       std::span<const std::size_t> y,
                       std::span<const std::uint32_t> weights,
                       std::size_t n_features, const ForestConfig& config,
                       std::uint64_t tree_seed) {
  if (x.size() != y.size() || x.size() != weights.size())
    throw ConfigError("grow_tree: x, y and weights differ in length");
  for (const auto& v : x) {
    if (!v.empty() && v.entries().back().index >= n_features)
      throw ConfigError("grow_tree: feature index out of range");
  }
  TreeBuilder builder(x, y, weights, n_features, config, tree_seed);
  auto nodes = builder.build();
  if (nodes.empty() || nodes[0].class_counts[0] + nodes[0].class_counts[1] == 0)
    throw ConfigError("grow_tree: no samples with positive weight");
  return DecisionTree(std::move(nodes));
}

ForestModel::ForestModel(std::vector<DecisionTree> trees,
                         std::size_t n_features,
                         std::array<std::string, 2> classes,
                         ForestConfig config)
    : trees_(std::move(trees)),
      n_features_(n_features),
      classes_(std::move(classes)),
      config_(config) {
  if (trees_.size() != config_.n_trees)
    throw FormatError("forest has " + std::to_string(trees_.size()) +
                      " trees, config says " + std::to_string(config_.n_trees));
  for (const auto& tree : trees_) {
    for (const auto& node : tree.nodes()) {
      if (!node.leaf && node.feature >= n_features_)
        throw FormatError("tree node feature index out of range");
    }
  }
}

ForestModel ForestModel::train(std::span<const SparseVector> x,
                               std::span<const std::size_t> y,
                               std::size_t n_features,
                               std::array<std::string, 2> classes,
                               const ForestConfig& config) {
  if (x.empty()) throw ConfigError("forest: no training samples");
  if (x.size() != y.size())
    throw ConfigError("forest: x and y differ in length");
  if (config.n_trees < 1) throw ConfigError("forest: n_trees must be >= 1");
  if (config.min_leaf < 1) throw ConfigError("forest: min_leaf must be >= 1");
  if (n_features < 1) throw ConfigError("forest: n_features must be >= 1");
  bool seen[2] = {false, false};
  for (std::size_t label : y) {
    if (label > 1) throw ConfigError("forest: class index out of range");
    seen[label] = true;
  }
  if (!seen[0] || !seen[1])
    throw ConfigError("forest: both classes must be present in training data");

  std::vector<DecisionTree> trees(config.n_trees);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < config.n_trees; t = next++) {
      const std::uint64_t seed = config.seed + t;
      std::vector<std::uint32_t> weights(x.size(), 1);
      Rng rng(seed);
      if (config.bootstrap) {
        std::fill(weights.begin(), weights.end(), 0);
        for (std::size_t i = 0; i < x.size(); ++i)
          ++weights[rng.uniform_index(x.size())];
      }
      // Bootstrap draws and split draws use separate streams.
      trees[t] = grow_tree(x, y, weights, n_features, config, Rng::mix(seed));
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, config.n_trees);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }
  return ForestModel(std::move(trees), n_features, std::move(classes), config);
}

ClassProbabilities ForestModel::predict_proba(const SparseVector& x) const {
  ClassProbabilities sum{0.0, 0.0};
  for (const auto& tree : trees_) {
    const auto d = tree.leaf_distribution(x);
    sum[0] += d[0];
    sum[1] += d[1];
  }
  const double n = static_cast<double>(trees_.size());
  return {sum[0] / n, sum[1] / n};
}

std::size_t ForestModel::predict(const SparseVector& x) const {
  const auto p = predict_proba(x);
  return p[1] > p[0] ? 1 : 0;
}

std::vector<double> ForestModel::feature_importance() const {
  std::vector<double> total(n_features_, 0.0);
  std::vector<double> tree_imp(n_features_, 0.0);
  for (const auto& tree : trees_) {
    std::fill(tree_imp.begin(), tree_imp.end(), 0.0);
    double tree_sum = 0.0;
    for (const auto& node : tree.nodes()) {
      if (node.leaf) continue;
      const auto& l = tree.nodes()[node.left].class_counts;
      const auto& r = tree.nodes()[node.right].class_counts;
      auto weight = [](const ClassCounts& c) {
        return static_cast<double>(c[0] + c[1]);
      };
      const double decrease = weight(node.class_counts) * gini(node.class_counts) -
                              weight(l) * gini(l) - weight(r) * gini(r);
      tree_imp[node.feature] += decrease;
      tree_sum += decrease;
    }
    if (tree_sum <= 0.0) continue;
    for (std::size_t f = 0; f < n_features_; ++f)
      total[f] += tree_imp[f] / tree_sum;
  }
  double sum = 0.0;
  for (double v : total) sum += v;
  if (sum > 0.0) {
    for (double& v : total) v /= sum;
  }
  return total;
}

}  // namespace slantsum
