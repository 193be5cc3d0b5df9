// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdc {

/// Error raised by parsers and validators. Messages carry enough context
/// (file path, line or row number) to locate the offending input.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// N source or target point coordinates in 2D or 3D Cartesian space.
/// In 2D the z component is stored as 0.
class PointCloud {
public:
    PointCloud() = default;
    PointCloud(int dim, std::vector<std::array<double, 3>> coords);

    int dim() const { return dim_; }
    std::size_t size() const { return coords_.size(); }
    bool empty() const { return coords_.empty(); }

    const std::array<double, 3>& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<std::array<double, 3>>& coords() const { return coords_; }

    /// Diagonal length of the axis-aligned bounding box. Zero for a single
    /// point or a cloud of coincident points.
    double bounding_box_diagonal() const;

private:
    int dim_ = 2;
    std::vector<std::array<double, 3>> coords_;
};

/// Field values at the points of a PointCloud at one physical time.
/// Stored row-major: rows() points by components() values each.
class FieldSnapshot {
public:
    FieldSnapshot() = default;
    FieldSnapshot(double time, std::size_t rows, std::size_t components,
                  std::vector<double> values);

    double time() const { return time_; }
    void set_time(double t) { time_ = t; }
    std::size_t rows() const { return rows_; }
    std::size_t components() const { return components_; }

    double operator()(std::size_t row, std::size_t comp) const {
        return values_[row * components_ + comp];
    }
    double& operator()(std::size_t row, std::size_t comp) {
        return values_[row * components_ + comp];
    }
    const std::vector<double>& values() const { return values_; }

private:
    double time_ = 0.0;
    std::size_t rows_ = 0;
    std::size_t components_ = 0;
    std::vector<double> values_;
};

/// Ordered (time, data file) index parsed from a master file. Times are
/// strictly increasing; paths are kept verbatim and resolved against the
/// directory of the master file they came from.
class TimeSeriesManifest {
public:
    struct Entry {
        double time = 0.0;
        std::string data_path;
    };

    TimeSeriesManifest() = default;
    TimeSeriesManifest(std::filesystem::path base_dir, std::vector<Entry> entries);

    std::size_t size() const { return entries_.size(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<Entry>& entries() const { return entries_; }
    const std::filesystem::path& base_dir() const { return base_dir_; }

    double time(std::size_t i) const { return entries_[i].time; }

    /// Entry path joined with the master file's directory when relative.
    std::filesystem::path resolved_path(std::size_t i) const;

private:
    std::filesystem::path base_dir_;
    std::vector<Entry> entries_;
};

/// A point cloud plus its time series of field snapshots (the "csvt" object).
struct ScatteredDataset {
    PointCloud points;
    TimeSeriesManifest manifest;
    std::vector<FieldSnapshot> snapshots;  // one per manifest entry, same order
    std::string quantity_id;
};

/// Zero-based column assignments for the file hierarchy.
struct ColumnMap {
    int x_col = 0;
    int y_col = 1;
    int z_col = -1;  // < 0 when z is not mapped (2D data)
    std::vector<int> value_cols;
    int step_value_col = 0;
    int step_file_col = 1;

    bool has_z() const { return z_col >= 0; }

    /// Throws when column indices collide within a mapping or x/y are missing.
    void validate() const;
};

}  // namespace sdc
