#pragma once

#include "ccmshift/dataset.hpp"
#include "ccmshift/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ccms {

// A boundary value given either as an absolute count or as a fraction of n.
struct Boundary {
    double value = 0.0;
    bool is_fraction = false;

    static Boundary count(std::size_t c) { return {static_cast<double>(c), false}; }
    static Boundary fraction(double f) { return {f, true}; }

    std::size_t resolve(std::size_t n) const;
};

// User-facing boundary configuration; resolve() turns it into counts.
struct BoundarySpec {
    Boundary min_boundary = Boundary::count(5);
    Boundary max_boundary = Boundary::fraction(0.5);
    double extension_factor = 1.1;
};

// Resolved scan boundaries for a dataset of n points. extended_max is
// floor(extension_factor * max_boundary); max_boundary is clamped so that
// extended_max <= n - 1.
struct BoundaryParams {
    std::size_t min_boundary = 5;
    std::size_t max_boundary = 0;
    double extension_factor = 1.1;

    std::size_t extended_max() const;

    static BoundaryParams resolve(const BoundarySpec& spec, std::size_t n);
    void validate(std::size_t n) const;
};

// gamma statistic over an ascending distance prefix y_(1)..y_(k):
// sample variance (divisor k) over (mean - y_(k))^2. Scale-invariant.
// Throws std::domain_error when mean == y_(k), which makes it undefined.
double gamma(std::span<const double> prefix);

// gamma evaluated for every prefix length k in [k_offset, k_offset+values.size()).
// Undefined entries (mean == y_(k)) hold NaN.
struct GammaProfile {
    std::vector<double> values;
    std::size_t k_offset = 0;

    double at_k(std::size_t k) const { return values[k - k_offset]; }
    std::size_t k_last() const { return k_offset + values.size() - 1; }
};

// Index of the smallest gamma value for k in [k_lo, k_hi], ties broken toward
// the smallest k, NaN entries skipped. Empty when every entry is undefined.
std::optional<std::size_t> argmin_k(const GammaProfile& profile, std::size_t k_lo, std::size_t k_hi);

// Profile over k in [min_boundary, extended_max], computed with running
// mean/variance updates. Throws when the row is shorter than extended_max.
GammaProfile gamma_profile(const SortedDistanceRow& row, const BoundaryParams& bp);

struct CardinalityEstimate {
    std::size_t n_hat = 0; // estimated local cluster cardinality
    bool good = false;     // argmin unaffected by extending the scan range
    double h = 0.0;        // std dev of the n_hat nearest distances
    double omega = 0.0;    // the n_hat-th sorted distance (kernel radius)
    double mean_dist = 0.0;
    double msd = 0.0;      // mean square distance / dimension
};

// Estimate the local cluster cardinality from one sorted distance row.
// dimension is the ambient d, used only for the MSD statistic.
CardinalityEstimate estimate_cardinality(const SortedDistanceRow& row, const BoundaryParams& bp,
                                         std::size_t dimension);

struct EstimateSet {
    std::vector<CardinalityEstimate> estimates; // one per point
    std::vector<std::size_t> good_indices;      // the point set P1
    BoundaryParams params;

    std::vector<std::size_t> bad_indices() const;
};

// Per-point estimation over the whole dataset (parallel map). Throws when no
// point gets a good estimate, suggesting boundary adjustment.
EstimateSet estimate_all(const Dataset& ds, const BoundarySpec& spec);
EstimateSet estimate_all(const Dataset& ds, const BoundaryParams& bp);

// Rule-of-thumb bandwidth 0.9 * min(sd, IQR/1.34) * n^(-1/5). Returns 0 for a
// constant vector. Kept as a utility; the pipeline uses the local distance
// standard deviation instead.
double silverman_bandwidth(std::span<const double> values);

} // namespace ccms
