#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace slantsum::testing {

namespace {

// a/b as an exact fraction with positive denominator.
struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

bool less(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
bool equal(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }

// Sum over children of (n0^2 + n1^2) / n; larger means purer children.
Fraction purity(std::int64_t l0, std::int64_t l1, std::int64_t r0, std::int64_t r1) {
  const std::int64_t nl = l0 + l1, nr = r0 + r1;
  return {(l0 * l0 + l1 * l1) * nr + (r0 * r0 + r1 * r1) * nl, nl * nr};
}

}  // namespace

SplitOracleResult best_gini_splits(std::span<const QuarterSample> samples) {
  std::int64_t total[2] = {0, 0};
  for (const auto& s : samples) ++total[s.label];
  const std::int64_t n = total[0] + total[1];
  const Fraction parent{total[0] * total[0] + total[1] * total[1], n};

  SplitOracleResult result;
  bool have_best = false;
  Fraction best{0, 1};
  for (std::size_t f = 0; f < 2; ++f) {
    std::set<int> values;
    for (const auto& s : samples) values.insert(s.quarters[f]);
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      const int lo = *it, hi = *std::next(it);
      std::int64_t l[2] = {0, 0}, r[2] = {0, 0};
      for (const auto& s : samples) {
        if (s.quarters[f] <= lo) ++l[s.label]; else ++r[s.label];
      }
      const Fraction p = purity(l[0], l[1], r[0], r[1]);
      const OracleSplit split{f, (lo + hi) / 8.0};
      if (!have_best || less(best, p)) {
        have_best = true;
        best = p;
        result.optimal = {split};
      } else if (equal(best, p)) {
        result.optimal.push_back(split);
      }
    }
  }
  result.improves = have_best && less(parent, best);
  if (!result.improves) result.optimal.clear();
  return result;
}

namespace {

std::string check_node(std::span<const QuarterSample> samples, const DecisionTree& tree,
                       std::size_t index) {
  const TreeNode& node = tree.nodes()[index];
  std::uint64_t counts[2] = {0, 0};
  for (const auto& s : samples) ++counts[s.label];
  if (node.class_counts[0] != counts[0] || node.class_counts[1] != counts[1])
    return "node " + std::to_string(index) + ": class counts differ";
  const bool pure = counts[0] == 0 || counts[1] == 0;
  const SplitOracleResult oracle = pure ? SplitOracleResult{} : best_gini_splits(samples);
  if (node.leaf) {
    if (oracle.improves) return "node " + std::to_string(index) + ": leaf but a split improves";
    return {};
  }
  if (!oracle.improves)
    return "node " + std::to_string(index) + ": split but no split improves";
  const OracleSplit& want = oracle.optimal.front();
  if (node.feature != want.feature || node.threshold != want.threshold)
    return "node " + std::to_string(index) + ": split (" + std::to_string(node.feature) + ", " +
           std::to_string(node.threshold) + ") but oracle (" + std::to_string(want.feature) +
           ", " + std::to_string(want.threshold) + ")";
  std::vector<QuarterSample> left, right;
  for (const auto& s : samples)
    (s.quarters[want.feature] / 4.0 <= want.threshold ? left : right).push_back(s);
  if (auto e = check_node(left, tree, node.left); !e.empty()) return e;
  return check_node(right, tree, node.right);
}

void enumerate(std::size_t remaining, std::size_t first_kind, std::size_t n_kinds,
               std::span<const int> values, std::vector<QuarterSample>& current,
               const std::function<void(std::span<const QuarterSample>)>& visit) {
  if (remaining == 0) {
    visit(current);
    return;
  }
  for (std::size_t kind = first_kind; kind < n_kinds; ++kind) {
    const std::size_t v = values.size();
    current.push_back({{values[kind % v], values[(kind / v) % v]}, kind / (v * v)});
    enumerate(remaining - 1, kind, n_kinds, values, current, visit);
    current.pop_back();
  }
}

}  // namespace

std::string check_tree(std::span<const QuarterSample> samples, const DecisionTree& tree) {
  return check_node(samples, tree, 0);
}

void for_each_dataset(std::size_t n, std::span<const int> values,
                      const std::function<void(std::span<const QuarterSample>)>& visit) {
  std::vector<QuarterSample> current;
  enumerate(n, 0, values.size() * values.size() * 2, values, current, visit);
}

std::vector<std::size_t> oracle_select(std::span<const double> weighted,
                                       std::span<const std::size_t> lengths,
                                       std::size_t max_chars) {
  const std::size_t n = weighted.size();
  std::vector<std::size_t> rank;
  for (std::size_t i = 0; i < n; ++i) {
    // Insertion into rank order.
    auto pos = rank.begin();
    while (pos != rank.end() &&
           (weighted[*pos] > weighted[i] ||
            (weighted[*pos] == weighted[i] && *pos < i)))
      ++pos;
    rank.insert(pos, i);
  }

  std::uint64_t best_key = 0;
  std::vector<std::size_t> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::size_t chars = 0, count = 0;
    std::uint64_t key = 0;
    std::vector<std::size_t> members;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(mask >> r & 1)) continue;
      chars += lengths[rank[r]];
      ++count;
      key |= std::uint64_t{1} << (n - 1 - r);
      members.push_back(rank[r]);
    }
    chars += count - 1;
    const bool top_alone = count == 1 && (mask & 1);
    if (chars > max_chars && !top_alone) continue;
    if (key > best_key) {
      best_key = key;
      best = members;
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

}  // namespace slantsum::testing
