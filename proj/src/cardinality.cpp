#include "ccmshift/cardinality.hpp"

#include "ccmshift/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccms {

std::size_t Boundary::resolve(std::size_t n) const {
    if (is_fraction) {
        if (!(value > 0.0) || value > 1.0) {
            throw std::invalid_argument("boundary fraction must be in (0, 1]");
        }
        return static_cast<std::size_t>(std::floor(value * static_cast<double>(n)));
    }
    if (value < 0.0 || std::floor(value) != value) {
        throw std::invalid_argument("boundary count must be a nonnegative integer");
    }
    return static_cast<std::size_t>(value);
}

std::size_t BoundaryParams::extended_max() const {
    return static_cast<std::size_t>(std::floor(extension_factor * static_cast<double>(max_boundary)));
}

BoundaryParams BoundaryParams::resolve(const BoundarySpec& spec, std::size_t n) {
    BoundaryParams bp;
    bp.min_boundary = spec.min_boundary.resolve(n);
    bp.max_boundary = spec.max_boundary.resolve(n);
    bp.extension_factor = spec.extension_factor;
    // Clamp so the extended scan stays within a distance row of length n-1.
    while (bp.max_boundary > bp.min_boundary + 1 && bp.extended_max() > n - 1) {
        --bp.max_boundary;
    }
    bp.validate(n);
    return bp;
}

void BoundaryParams::validate(std::size_t n) const {
    if (min_boundary < 2) {
        throw std::invalid_argument("min_boundary must be at least 2");
    }
    if (min_boundary >= max_boundary) {
        throw std::invalid_argument("min_boundary (" + std::to_string(min_boundary) +
                                    ") must be smaller than max_boundary (" + std::to_string(max_boundary) + ")");
    }
    if (!(extension_factor > 1.0)) {
        throw std::invalid_argument("extension_factor must be greater than 1");
    }
    if (n > 0 && extended_max() > n - 1) {
        throw std::invalid_argument("extended boundary " + std::to_string(extended_max()) +
                                    " exceeds row length " + std::to_string(n - 1));
    }
}

double gamma(std::span<const double> prefix) {
    const std::size_t k = prefix.size();
    if (k < 2) {
        throw std::invalid_argument("gamma: need a prefix of at least 2 distances");
    }
    double mean = 0.0;
    for (double y : prefix) {
        mean += y;
    }
    mean /= static_cast<double>(k);
    double s2 = 0.0;
    for (double y : prefix) {
        const double c = y - mean;
        s2 += c * c;
    }
    s2 /= static_cast<double>(k);
    const double gap = mean - prefix.back();
    if (gap == 0.0) {
        throw std::domain_error("gamma: undefined, prefix mean equals its last element");
    }
    return s2 / (gap * gap);
}

std::optional<std::size_t> argmin_k(const GammaProfile& profile, std::size_t k_lo, std::size_t k_hi) {
    std::optional<std::size_t> best;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = std::max(k_lo, profile.k_offset); k <= std::min(k_hi, profile.k_last()); ++k) {
        const double v = profile.at_k(k);
        if (std::isnan(v)) {
            continue;
        }
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    return best;
}

GammaProfile gamma_profile(const SortedDistanceRow& row, const BoundaryParams& bp) {
    const std::size_t k_max = bp.extended_max();
    if (row.size() < k_max) {
        throw std::invalid_argument("gamma_profile: row has " + std::to_string(row.size()) +
                                    " distances, need at least " + std::to_string(k_max));
    }
    GammaProfile profile;
    profile.k_offset = bp.min_boundary;
    profile.values.assign(k_max - bp.min_boundary + 1, std::numeric_limits<double>::quiet_NaN());

    // Welford running mean / sum of squared deviations.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double y = row.distances[k - 1];
        const double delta = y - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (y - mean);
        if (k < bp.min_boundary) {
            continue;
        }
        const double gap = mean - y;
        if (gap != 0.0) {
            const double s2 = m2 / static_cast<double>(k);
            profile.values[k - bp.min_boundary] = s2 / (gap * gap);
        }
    }
    return profile;
}

namespace {

CardinalityEstimate estimate_from_profile(const SortedDistanceRow& row, const GammaProfile& profile,
                                          const BoundaryParams& bp, std::size_t dimension) {
    const auto n1 = argmin_k(profile, bp.min_boundary, bp.max_boundary);
    const auto n2 = argmin_k(profile, bp.min_boundary, bp.extended_max());

    CardinalityEstimate est;
    est.good = n1.has_value() && n2.has_value() && *n1 == *n2;
    est.n_hat = n1.value_or(bp.min_boundary);

    const std::size_t k = est.n_hat;
    double mean = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mean += row.distances[i];
        sumsq += row.distances[i] * row.distances[i];
    }
    mean /= static_cast<double>(k);
    double var = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double c = row.distances[i] - mean;
        var += c * c;
    }
    var /= static_cast<double>(k);

    est.mean_dist = mean;
    est.h = std::sqrt(var);
    est.omega = row.distances[k - 1];
    est.msd = sumsq / (static_cast<double>(dimension) * static_cast<double>(k));
    return est;
}

} // namespace

CardinalityEstimate estimate_cardinality(const SortedDistanceRow& row, const BoundaryParams& bp,
                                         std::size_t dimension) {
    const GammaProfile profile = gamma_profile(row, bp);
    return estimate_from_profile(row, profile, bp, dimension);
}

std::vector<std::size_t> EstimateSet::bad_indices() const {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        if (!estimates[i].good) {
            bad.push_back(i);
        }
    }
    return bad;
}

EstimateSet estimate_all(const Dataset& ds, const BoundarySpec& spec) {
    return estimate_all(ds, BoundaryParams::resolve(spec, ds.n));
}

EstimateSet estimate_all(const Dataset& ds, const BoundaryParams& bp) {
    ds.validate();
    if (ds.n <= bp.min_boundary + 1) {
        throw std::invalid_argument("estimate_all: need more than min_boundary + 1 points");
    }
    bp.validate(ds.n);

    EstimateSet out;
    out.params = bp;
    out.estimates.resize(ds.n);
    parallel_for(ds.n, [&](std::size_t i) {
        const SortedDistanceRow row = sorted_row(ds, i);
        out.estimates[i] = estimate_cardinality(row, bp, ds.d);
    });
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (out.estimates[i].good) {
            out.good_indices.push_back(i);
        }
    }
    if (out.good_indices.empty()) {
        throw std::runtime_error("estimate_all: no point obtained a stable cardinality estimate; "
                                 "adjust min/max boundary for this dataset");
    }
    return out;
}

double silverman_bandwidth(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("silverman_bandwidth: need at least 2 values");
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        const double c = v - mean;
        ss += c * c;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(n - 1);
        const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);

    const double a = std::min(sd, iqr / 1.34);
    return 0.9 * a * std::pow(static_cast<double>(n), -0.2);
}

} // namespace ccms
