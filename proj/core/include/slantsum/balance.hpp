#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slantsum/vectorizer.hpp"

namespace slantsum {

struct SmoteConfig {
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 0;
};

// x + g * (neighbor - x) per coordinate over the union of supports, clamped
// to the per-coordinate segment so rounding never leaves it.
SparseVector interpolate(const SparseVector& x, const SparseVector& neighbor,
                         double g);

// Indices of the k nearest other samples to `sample` by Euclidean distance,
// ties broken by lower index.
std::vector<std::size_t> nearest_neighbors(std::span<const SparseVector> samples,
                                           std::size_t sample, std::size_t k);

// Returns target_count - minority.size() synthetic samples. Parents are taken
// round-robin; for each, one of its k nearest minority neighbors is drawn and
// then the gap g in [0, 1). Effective k is min(k_neighbors, size - 1); with a
// single sample the synthetic samples are copies of it.
std::vector<SparseVector> smote(std::span<const SparseVector> minority,
                                std::size_t target_count,
                                const SmoteConfig& config);

using ClassVectors = std::array<std::vector<SparseVector>, 2>;

// Extends the smaller class with SMOTE output until both sizes match. The
// larger class is returned untouched.
ClassVectors balance_classes(ClassVectors vectors, const SmoteConfig& config);

}  // namespace slantsum
