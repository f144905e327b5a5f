#include "slantsum/balance.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "slantsum/error.hpp"
#include "slantsum/rng.hpp"

namespace slantsum {

SparseVector interpolate(const SparseVector& x, const SparseVector& neighbor,
                         double g) {
  const auto& a = x.entries();
  const auto& b = neighbor.entries();
  std::vector<SparseVector::Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::uint32_t index;
    double xv = 0.0, nv = 0.0;
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      index = a[i].index;
      xv = a[i++].value;
    } else if (i == a.size() || b[j].index < a[i].index) {
      index = b[j].index;
      nv = b[j++].value;
    } else {
      index = a[i].index;
      xv = a[i++].value;
      nv = b[j++].value;
    }
    double v = xv + g * (nv - xv);
    v = std::clamp(v, std::min(xv, nv), std::max(xv, nv));
    if (v != 0.0) out.push_back({index, v});
  }
  return SparseVector(std::move(out));
}

std::vector<std::size_t> nearest_neighbors(std::span<const SparseVector> samples,
                                           std::size_t sample, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (j == sample) continue;
    dist.emplace_back(squared_distance(samples[sample], samples[j]), j);
  }
  k = std::min(k, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                    dist.end());
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(dist[i].second);
  return out;
}

std::vector<SparseVector> smote(std::span<const SparseVector> minority,
                                std::size_t target_count,
                                const SmoteConfig& config) {
  if (minority.empty()) throw ConfigError("smote: minority class is empty");
  if (target_count < minority.size())
    throw ConfigError("smote: cannot undersample (target " +
                      std::to_string(target_count) + " < " +
                      std::to_string(minority.size()) + ")");
  if (config.k_neighbors < 1) throw ConfigError("smote: k_neighbors must be >= 1");

  const std::size_t needed = target_count - minority.size();
  std::vector<SparseVector> synthetic;
  synthetic.reserve(needed);
  if (minority.size() == 1) {
    synthetic.assign(needed, minority[0]);
    return synthetic;
  }

  const std::size_t k = std::min(config.k_neighbors, minority.size() - 1);
  // Only parents that are actually used need a neighbor search.
  std::vector<std::vector<std::size_t>> neighbors(
      std::min(needed, minority.size()));
  for (std::size_t p = 0; p < neighbors.size(); ++p)
    neighbors[p] = nearest_neighbors(minority, p, k);

  Rng rng(config.seed);
  for (std::size_t s = 0; s < needed; ++s) {
    const std::size_t parent = s % minority.size();
    const auto& nn = neighbors[parent];
    const std::size_t chosen = nn[rng.uniform_index(nn.size())];
    const double g = rng.uniform01();
    synthetic.push_back(interpolate(minority[parent], minority[chosen], g));
  }
  return synthetic;
}

ClassVectors balance_classes(ClassVectors vectors, const SmoteConfig& config) {
  if (vectors[0].empty() || vectors[1].empty())
    throw ConfigError("balance: both classes need at least one sample");
  if (vectors[0].size() == vectors[1].size()) return vectors;
  const std::size_t minority = vectors[0].size() < vectors[1].size() ? 0 : 1;
  const std::size_t target = vectors[1 - minority].size();
  auto extra = smote(vectors[minority], target, config);
  auto& dst = vectors[minority];
  dst.insert(dst.end(), std::make_move_iterator(extra.begin()),
             std::make_move_iterator(extra.end()));
  return vectors;
}

}  // namespace slantsum
