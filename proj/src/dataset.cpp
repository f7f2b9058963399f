#include "ccmshift/dataset.hpp"

#include "ccmshift/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ccms {

void Dataset::validate() const {
    if (n < 2) {
        throw std::invalid_argument("dataset: need at least 2 points, got " + std::to_string(n));
    }
    if (d < 1) {
        throw std::invalid_argument("dataset: need at least 1 dimension");
    }
    if (points.size() != n * d) {
        throw std::invalid_argument("dataset: storage size does not match n*d");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i])) {
            throw std::invalid_argument("dataset: non-finite coordinate at flat index " + std::to_string(i));
        }
    }
    if (labels && labels->size() != n) {
        throw std::invalid_argument("dataset: label vector length " + std::to_string(labels->size()) +
                                    " does not match n=" + std::to_string(n));
    }
}

ToySpec ToySpec::default_spec(std::uint64_t seed) {
    ToySpec spec;
    spec.seed = seed;
    spec.clusters = {
        {25, 0.7, {0.0, 0.0}},
        {100, 1.0, {6.8, 0.0}},
        {75, 1.5, {0.0, 14.0}},
        {200, 2.0, {16.0, 14.0}},
    };
    return spec;
}

void ToySpec::validate() const {
    if (clusters.empty()) {
        throw std::invalid_argument("toy spec: need at least one cluster");
    }
    const std::size_t d = clusters.front().center.size();
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        const auto& c = clusters[k];
        if (c.cardinality < 1) {
            throw std::invalid_argument("toy spec: cluster " + std::to_string(k) + " has cardinality 0");
        }
        if (!(c.sigma > 0.0)) {
            throw std::invalid_argument("toy spec: cluster " + std::to_string(k) + " needs sigma > 0");
        }
        if (c.center.size() != d || d == 0) {
            throw std::invalid_argument("toy spec: cluster centers must share a nonzero dimension");
        }
    }
}

ColumnRef ColumnRef::parse(const std::string& text) {
    if (!text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return by_index(static_cast<std::size_t>(std::stoull(text)));
    }
    return by_name(text);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) {
        return false;
    }
    const char* begin = t.data();
    const char* end = begin + t.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

struct ColumnStats {
    std::vector<double> mean;
    std::vector<double> var; // population
};

ColumnStats column_stats(const Dataset& ds) {
    ColumnStats st;
    st.mean.assign(ds.d, 0.0);
    st.var.assign(ds.d, 0.0);
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            st.mean[j] += ds.at(i, j);
        }
    }
    for (std::size_t j = 0; j < ds.d; ++j) {
        st.mean[j] /= static_cast<double>(ds.n);
    }
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            const double c = ds.at(i, j) - st.mean[j];
            st.var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < ds.d; ++j) {
        st.var[j] /= static_cast<double>(ds.n);
    }
    return st;
}

} // namespace

Dataset load_csv(const std::string& path, const std::optional<ColumnRef>& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_csv: cannot open '" + path + "'");
    }

    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        rows.push_back(split_csv_line(line));
        if (rows.back().size() != rows.front().size()) {
            throw std::runtime_error("load_csv: row " + std::to_string(lineno) + " has " +
                                     std::to_string(rows.back().size()) + " cells, expected " +
                                     std::to_string(rows.front().size()));
        }
    }
    if (rows.empty()) {
        throw std::runtime_error("load_csv: '" + path + "' is empty");
    }

    // Header detection: any non-numeric cell in the first row.
    std::vector<std::string> header;
    double tmp = 0.0;
    const bool has_header =
        std::any_of(rows.front().begin(), rows.front().end(), [&](const std::string& c) { return !parse_number(c, tmp); });
    std::size_t first_data_row = 0;
    if (has_header) {
        header = rows.front();
        for (auto& h : header) {
            h = trim(h);
        }
        first_data_row = 1;
    }
    if (rows.size() <= first_data_row) {
        throw std::runtime_error("load_csv: '" + path + "' has a header but no data rows");
    }

    const std::size_t ncols = rows.front().size();
    std::optional<std::size_t> label_idx;
    if (label_column) {
        if (label_column->kind == ColumnRef::Kind::index) {
            label_idx = label_column->index;
        } else {
            auto it = std::find(header.begin(), header.end(), label_column->name);
            if (it == header.end()) {
                throw std::runtime_error("load_csv: no column named '" + label_column->name + "'");
            }
            label_idx = static_cast<std::size_t>(it - header.begin());
        }
        if (*label_idx >= ncols) {
            throw std::runtime_error("load_csv: label column " + std::to_string(*label_idx) + " out of range (" +
                                     std::to_string(ncols) + " columns)");
        }
    }

    Dataset ds;
    ds.name = path;
    ds.n = rows.size() - first_data_row;
    ds.d = label_idx ? ncols - 1 : ncols;
    ds.points.reserve(ds.n * ds.d);
    std::vector<int> labels;
    if (label_idx) {
        labels.reserve(ds.n);
    }

    for (std::size_t r = first_data_row; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < ncols; ++c) {
            if (label_idx && c == *label_idx) {
                const std::string token = trim(rows[r][c]);
                auto it = std::find(ds.label_names.begin(), ds.label_names.end(), token);
                if (it == ds.label_names.end()) {
                    ds.label_names.push_back(token);
                    labels.push_back(static_cast<int>(ds.label_names.size()) - 1);
                } else {
                    labels.push_back(static_cast<int>(it - ds.label_names.begin()));
                }
                continue;
            }
            double v = 0.0;
            if (!parse_number(rows[r][c], v)) {
                throw std::runtime_error("load_csv: cannot parse '" + trim(rows[r][c]) + "' as a number at row " +
                                         std::to_string(r + 1) + ", column " + std::to_string(c + 1));
            }
            if (!std::isfinite(v)) {
                throw std::runtime_error("load_csv: non-finite value at row " + std::to_string(r + 1) + ", column " +
                                         std::to_string(c + 1));
            }
            ds.points.push_back(v);
        }
    }
    if (label_idx) {
        ds.labels = std::move(labels);
    }
    ds.validate();
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path, bool include_labels) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_csv: cannot open '" + path + "' for writing");
    }
    out.precision(17);
    const bool with_labels = include_labels && ds.labels.has_value();
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            if (j) {
                out << ',';
            }
            out << ds.at(i, j);
        }
        if (with_labels) {
            const int lab = (*ds.labels)[i];
            out << ',';
            if (static_cast<std::size_t>(lab) < ds.label_names.size()) {
                out << ds.label_names[lab];
            } else {
                out << lab;
            }
        }
        out << '\n';
    }
    if (!out) {
        throw std::runtime_error("save_csv: write to '" + path + "' failed");
    }
}

Dataset standardize(const Dataset& ds) {
    ds.validate();
    const ColumnStats st = column_stats(ds);
    for (std::size_t j = 0; j < ds.d; ++j) {
        if (st.var[j] <= 0.0) {
            throw std::runtime_error("standardize: column " + std::to_string(j) + " has zero variance");
        }
    }
    Dataset out = ds;
    for (std::size_t j = 0; j < ds.d; ++j) {
        const double inv_sd = 1.0 / std::sqrt(st.var[j]);
        for (std::size_t i = 0; i < ds.n; ++i) {
            out.points[i * ds.d + j] = (ds.at(i, j) - st.mean[j]) * inv_sd;
        }
    }
    return out;
}

Dataset gagolewski_preprocess(const Dataset& ds, double noise_sigma, std::uint64_t seed) {
    ds.validate();
    const ColumnStats st = column_stats(ds);

    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < ds.d; ++j) {
        if (st.var[j] > 0.0) {
            keep.push_back(j);
        }
    }
    if (keep.empty()) {
        throw std::runtime_error("gagolewski_preprocess: all columns are constant");
    }

    double total_var = 0.0;
    for (std::size_t j : keep) {
        total_var += st.var[j];
    }
    const double scale = 1.0 / std::sqrt(total_var);

    Dataset out;
    out.name = ds.name;
    out.labels = ds.labels;
    out.label_names = ds.label_names;
    out.n = ds.n;
    out.d = keep.size();
    out.points.resize(out.n * out.d);
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t jj = 0; jj < keep.size(); ++jj) {
            const std::size_t j = keep[jj];
            out.points[i * out.d + jj] = (ds.at(i, j) - st.mean[j]) * scale;
        }
    }
    if (noise_sigma > 0.0) {
        Rng rng(seed);
        for (double& v : out.points) {
            v += rng.normal(0.0, noise_sigma);
        }
    }
    return out;
}

Dataset generate_toy(const ToySpec& spec) {
    spec.validate();
    const std::size_t d = spec.clusters.front().center.size();
    std::size_t n = 0;
    for (const auto& c : spec.clusters) {
        n += c.cardinality;
    }

    Dataset ds;
    ds.name = "toy";
    ds.n = n;
    ds.d = d;
    ds.points.reserve(n * d);
    std::vector<int> labels;
    labels.reserve(n);

    Rng rng(spec.seed);
    for (std::size_t k = 0; k < spec.clusters.size(); ++k) {
        const auto& c = spec.clusters[k];
        ds.label_names.push_back("cluster" + std::to_string(k + 1));
        for (std::size_t i = 0; i < c.cardinality; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                ds.points.push_back(rng.normal(c.center[j], c.sigma));
            }
            labels.push_back(static_cast<int>(k));
        }
    }
    ds.labels = std::move(labels);
    ds.validate();
    return ds;
}

} // namespace ccms
