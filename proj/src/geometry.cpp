#include "ccmshift/geometry.hpp"

#include "ccmshift/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccms {

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("euclidean: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    double sq = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

namespace {

// Sort (distance, index) pairs ascending, ties by index.
void sort_by_distance(std::vector<double>& dist, std::vector<std::size_t>& idx) {
    std::vector<std::size_t> perm(dist.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (dist[a] != dist[b]) {
            return dist[a] < dist[b];
        }
        return idx[a] < idx[b];
    });
    std::vector<double> sd(dist.size());
    std::vector<std::size_t> si(idx.size());
    for (std::size_t r = 0; r < perm.size(); ++r) {
        sd[r] = dist[perm[r]];
        si[r] = idx[perm[r]];
    }
    dist = std::move(sd);
    idx = std::move(si);
}

} // namespace

SortedDistanceRow sorted_row(const Dataset& ds, std::size_t i) {
    if (i >= ds.n) {
        throw std::out_of_range("sorted_row: index " + std::to_string(i) + " out of range (n=" + std::to_string(ds.n) +
                                ")");
    }
    SortedDistanceRow row;
    row.source_index = i;
    row.distances.reserve(ds.n - 1);
    row.order.reserve(ds.n - 1);
    const auto src = ds.row(i);
    for (std::size_t j = 0; j < ds.n; ++j) {
        if (j == i) {
            continue;
        }
        row.distances.push_back(euclidean(src, ds.row(j)));
        row.order.push_back(j);
    }
    sort_by_distance(row.distances, row.order);
    return row;
}

SortedDistanceRow sorted_row_from(std::span<const double> query, const Dataset& ds) {
    if (query.size() != ds.d) {
        throw std::invalid_argument("sorted_row_from: query dimension " + std::to_string(query.size()) +
                                    " does not match dataset dimension " + std::to_string(ds.d));
    }
    SortedDistanceRow row;
    row.distances.reserve(ds.n);
    row.order.reserve(ds.n);
    for (std::size_t j = 0; j < ds.n; ++j) {
        row.distances.push_back(euclidean(query, ds.row(j)));
        row.order.push_back(j);
    }
    sort_by_distance(row.distances, row.order);
    return row;
}

std::vector<std::size_t> knn_indices(const Dataset& ds, std::span<const double> query, std::size_t k) {
    if (k < 1 || k > ds.n) {
        throw std::out_of_range("knn_indices: k=" + std::to_string(k) + " out of range [1, " + std::to_string(ds.n) +
                                "]");
    }
    const SortedDistanceRow row = sorted_row_from(query, ds);
    return {row.order.begin(), row.order.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<SortedDistanceRow> all_sorted_rows(const Dataset& ds) {
    std::vector<SortedDistanceRow> rows(ds.n);
    parallel_for(ds.n, [&](std::size_t i) { rows[i] = sorted_row(ds, i); });
    return rows;
}

} // namespace ccms
