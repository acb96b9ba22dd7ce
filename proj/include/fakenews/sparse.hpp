#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fakenews/error.hpp"

namespace fakenews {

struct SparseEntry {
    std::size_t index;
    double value;
};

// Sparse feature vector: entries strictly increasing by index, no stored
// zeros, indices < dim.
struct SparseVector {
    std::vector<SparseEntry> entries;
    std::size_t dim = 0;

    double at(std::size_t index) const {
        auto it = std::lower_bound(
            entries.begin(), entries.end(), index,
            [](const SparseEntry& e, std::size_t i) { return e.index < i; });
        return (it != entries.end() && it->index == index) ? it->value : 0.0;
    }

    double norm() const {
        double sum = 0.0;
        for (const SparseEntry& e : entries) sum += e.value * e.value;
        return std::sqrt(sum);
    }
};

inline void check_dim(const SparseVector& x, std::size_t expected) {
    if (x.dim != expected)
        raise(ErrorKind::DimensionMismatch,
              "vector dimension " + std::to_string(x.dim) + " does not match " +
                  std::to_string(expected));
}

inline double dot(const std::vector<double>& dense, const SparseVector& x) {
    double sum = 0.0;
    for (const SparseEntry& e : x.entries) sum += dense[e.index] * e.value;
    return sum;
}

}  // namespace fakenews
