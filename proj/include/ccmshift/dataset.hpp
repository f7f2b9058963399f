#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ccms {

// A dense n x d matrix of observations with optional ground-truth labels.
// Labels are interned: labels[i] indexes into label_names.
struct Dataset {
    std::vector<double> points; // row-major, n * d
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::vector<int>> labels;
    std::vector<std::string> label_names;
    std::string name;

    std::span<const double> row(std::size_t i) const { return {points.data() + i * d, d}; }
    double at(std::size_t i, std::size_t j) const { return points[i * d + j]; }

    std::size_t class_count() const { return label_names.size(); }

    // Throws std::invalid_argument if n < 2, d < 1, a coordinate is
    // non-finite, or the label vector length disagrees with n.
    void validate() const;
};

// One isotropic Gaussian blob of the synthetic mixture.
struct ToyCluster {
    std::size_t cardinality = 0;
    double sigma = 1.0;
    std::vector<double> center;
};

struct ToySpec {
    std::vector<ToyCluster> clusters;
    std::uint64_t seed = 0;

    // The four-blob mixture used throughout the benchmarks: cardinalities
    // 25/100/75/200 with sigma 0.7/1/1.5/2. The small cluster sits next to
    // cluster 2 (center gap 4*(sigma1+sigma2)); clusters 3 and 4 are placed
    // farther out. Centers are conventions of this library, not part of the
    // mixture definition, and can be overridden.
    static ToySpec default_spec(std::uint64_t seed);

    void validate() const;
};

// Column reference, either positional or by header name.
struct ColumnRef {
    enum class Kind { index, name };
    Kind kind = Kind::index;
    std::size_t index = 0;
    std::string name;

    static ColumnRef by_index(std::size_t i) { return {Kind::index, i, {}}; }
    static ColumnRef by_name(std::string n) { return {Kind::name, 0, std::move(n)}; }
    // "3" -> index, anything else -> name.
    static ColumnRef parse(const std::string& text);
};

// Load a comma-separated file. A header row is assumed when the first row has
// any cell that does not parse as a number. Parse errors report row/column;
// non-finite values are rejected.
Dataset load_csv(const std::string& path, const std::optional<ColumnRef>& label_column = std::nullopt);

// Write points (and the label column, when present) back to CSV in the
// original column order.
void save_csv(const Dataset& ds, const std::string& path, bool include_labels = true);

// Per-column zero mean, unit population variance. Throws on a zero-variance
// column, naming it.
Dataset standardize(const Dataset& ds);

// Drop zero-variance columns, center on the centroid, scale every remaining
// column by one common factor so the total population variance is 1, then add
// seeded Gaussian noise of scale noise_sigma to every entry.
Dataset gagolewski_preprocess(const Dataset& ds, double noise_sigma = 1e-9, std::uint64_t seed = 0);

// Sample the mixture described by spec. Labels are set to the cluster index.
// Deterministic for a fixed seed.
Dataset generate_toy(const ToySpec& spec);

} // namespace ccms
