#pragma once

#include "ccmshift/dataset.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ccms {

// Sorted distances from one source to a set of points, with the permutation
// mapping rank -> original point index. Ties are broken by ascending index.
struct SortedDistanceRow {
    std::size_t source_index = 0; // meaningful for sorted_row only
    std::vector<double> distances;
    std::vector<std::size_t> order;

    std::size_t size() const { return distances.size(); }
};

double euclidean(std::span<const double> a, std::span<const double> b);

// Distances from point i to all j != i (n-1 entries, ascending).
SortedDistanceRow sorted_row(const Dataset& ds, std::size_t i);

// Distances from an arbitrary query to every dataset point (n entries, no
// self-exclusion).
SortedDistanceRow sorted_row_from(std::span<const double> query, const Dataset& ds);

// Indices of the k nearest points to query, ascending distance, ties by index.
std::vector<std::size_t> knn_indices(const Dataset& ds, std::span<const double> query, std::size_t k);

// All n rows, computed with a parallel map over point indices. Identical to
// calling sorted_row serially.
std::vector<SortedDistanceRow> all_sorted_rows(const Dataset& ds);

} // namespace ccms
