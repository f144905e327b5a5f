#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slantsum/vectorizer.hpp"

namespace slantsum {

enum class MaxFeatures {
  kSqrt,  // ceil(sqrt(n_features)) candidates per split
  kAll,
};

std::string_view to_string(MaxFeatures rule);
MaxFeatures max_features_from_string(std::string_view name);

struct ForestConfig {
  std::size_t n_trees = 100;
  MaxFeatures max_features = MaxFeatures::kSqrt;
  std::size_t min_leaf = 1;
  bool bootstrap = true;
  std::uint64_t seed = 0;

  bool operator==(const ForestConfig&) const = default;
};

using ClassCounts = std::array<std::uint64_t, 2>;
using ClassProbabilities = std::array<double, 2>;

// Internal nodes send value <= threshold left. Leaves hold (bootstrap
// weighted) class counts. class_counts is kept on internal nodes as well,
// as the sum over the subtree's leaves.
struct TreeNode {
  bool leaf = true;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  ClassCounts class_counts{0, 0};

  bool operator==(const TreeNode&) const = default;
};

// CART tree stored in preorder; nodes()[0] is the root and an internal
// node's left child immediately follows it.
class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& leaf_for(const SparseVector& x) const;
  ClassProbabilities leaf_distribution(const SparseVector& x) const;
  std::size_t depth() const;

  bool operator==(const DecisionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

// Grows one tree. `weights[i]` is how many times sample i is in the
// training sample (0 = left out). Used directly by tests with unit weights.
DecisionTree grow_tree(std::span<const SparseVector> x,
                       std::span<const std::size_t> y,
                       std::span<const std::uint32_t> weights,
                       std::size_t n_features, const ForestConfig& config,
                       std::uint64_t tree_seed);

class ForestModel {
 public:
  ForestModel() = default;
  ForestModel(std::vector<DecisionTree> trees, std::size_t n_features,
              std::array<std::string, 2> classes, ForestConfig config);

  // y holds class indices 0/1. Throws ConfigError on empty input, length
  // mismatch or a single class.
  static ForestModel train(std::span<const SparseVector> x,
                           std::span<const std::size_t> y,
                           std::size_t n_features,
                           std::array<std::string, 2> classes,
                           const ForestConfig& config);

  // Mean of the per-tree leaf class distributions.
  ClassProbabilities predict_proba(const SparseVector& x) const;
  // argmax of predict_proba, ties to class 0.
  std::size_t predict(const SparseVector& x) const;
  // Mean decrease in Gini impurity per feature, normalized to sum to 1.
  std::vector<double> feature_importance() const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  std::size_t n_features() const { return n_features_; }
  const std::array<std::string, 2>& classes() const { return classes_; }
  const ForestConfig& config() const { return config_; }

  bool operator==(const ForestModel&) const = default;

 private:
  std::vector<DecisionTree> trees_;
  std::size_t n_features_ = 0;
  std::array<std::string, 2> classes_;
  ForestConfig config_;
};

// Gini impurity of a two-class count vector.
double gini(const ClassCounts& counts);

}  // namespace slantsum
