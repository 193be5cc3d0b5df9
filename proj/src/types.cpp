// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/types.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace sdc {

PointCloud::PointCloud(int dim, std::vector<std::array<double, 3>> coords)
    : dim_(dim), coords_(std::move(coords)) {
    if (dim_ != 2 && dim_ != 3) {
        throw Error("point cloud dimension must be 2 or 3, got " + std::to_string(dim_));
    }
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        for (int a = 0; a < 3; ++a) {
            if (!std::isfinite(coords_[i][a])) {
                throw Error("non-finite coordinate at row " + std::to_string(i + 1));
            }
        }
        if (dim_ == 2 && coords_[i][2] != 0.0) {
            throw Error("2D point cloud carries nonzero z at row " + std::to_string(i + 1));
        }
    }
}

double PointCloud::bounding_box_diagonal() const {
    if (coords_.empty()) return 0.0;
    std::array<double, 3> lo = coords_[0];
    std::array<double, 3> hi = coords_[0];
    for (const auto& p : coords_) {
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    }
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double e = hi[a] - lo[a];
        d2 += e * e;
    }
    return std::sqrt(d2);
}

FieldSnapshot::FieldSnapshot(double time, std::size_t rows, std::size_t components,
                             std::vector<double> values)
    : time_(time), rows_(rows), components_(components), values_(std::move(values)) {
    if (components_ == 0) {
        throw Error("field snapshot needs at least one component");
    }
    if (values_.size() != rows_ * components_) {
        throw Error("field snapshot value count does not match rows x components");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error("non-finite field value");
    }
}

TimeSeriesManifest::TimeSeriesManifest(std::filesystem::path base_dir,
                                       std::vector<Entry> entries)
    : base_dir_(std::move(base_dir)), entries_(std::move(entries)) {
    if (entries_.empty()) throw Error("empty manifest");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].data_path.empty()) {
            throw Error("empty data path in manifest entry " + std::to_string(i + 1));
        }
        if (i > 0 && !(entries_[i - 1].time < entries_[i].time)) {
            throw Error("non-increasing time in manifest entry " + std::to_string(i + 1));
        }
    }
}

std::filesystem::path TimeSeriesManifest::resolved_path(std::size_t i) const {
    std::filesystem::path p(entries_[i].data_path);
    if (p.is_absolute()) return p;
    return base_dir_ / p;
}

void ColumnMap::validate() const {
    if (x_col < 0 || y_col < 0) {
        throw Error("column map must assign x and y columns");
    }
    std::set<int> coord_cols{x_col, y_col};
    if (has_z()) coord_cols.insert(z_col);
    if (coord_cols.size() != (has_z() ? 3u : 2u)) {
        throw Error("coordinate columns must be distinct");
    }
    std::set<int> vals(value_cols.begin(), value_cols.end());
    if (vals.size() != value_cols.size()) {
        throw Error("value columns must be distinct");
    }
    for (int c : value_cols) {
        if (c < 0) throw Error("value column indices must be non-negative");
    }
    if (step_value_col < 0 || step_file_col < 0 || step_value_col == step_file_col) {
        throw Error("step value and step file columns must be distinct and non-negative");
    }
}

}  // namespace sdc
