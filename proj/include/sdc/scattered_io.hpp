// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sdc/types.hpp"

namespace sdc {

/// All files are comma-separated text. Fields are trimmed of surrounding
/// whitespace; blank lines and lines starting with '#' are skipped.

/// Locates a dataset on disk: the master file, the coordinates file and the
/// column assignments shared by every file in the hierarchy.
struct DatasetSource {
    std::filesystem::path master_path;
    std::filesystem::path coordinates_path;
    ColumnMap columns;
    std::string quantity_id;
};

/// Reads the master file: one (time, data file path) record per line at the
/// configured columns. Times must be strictly increasing; paths are stored
/// verbatim and resolve against the master file's directory.
TimeSeriesManifest parse_master_file(const std::filesystem::path& path, const ColumnMap& map);

/// Reads the point location file. dim = 3 iff a z column is mapped; an
/// unmapped z is filled with 0. Row order defines the source point index.
PointCloud parse_coordinates_file(const std::filesystem::path& path, const ColumnMap& map);

/// Reads one data file into an expected_n x value_cols.size() snapshot.
/// The snapshot time is left at 0 and filled by the caller.
FieldSnapshot parse_data_file(const std::filesystem::path& path,
                              const std::vector<int>& value_cols, std::size_t expected_n);

/// Parses the master file, the coordinates file and every referenced data
/// file eagerly. Any failure is reported with the offending file path.
ScatteredDataset load_dataset(const DatasetSource& source);

/// Writes "# x,y,z,<id>_0,..." followed by one comma-separated row per point.
/// Values are printed as shortest decimal text that parses back bit-equal.
void write_field_csv(const PointCloud& points, const FieldSnapshot& snapshot,
                     const std::string& quantity_id, const std::filesystem::path& path);

/// Writes a master file with the same "time,path" layout that
/// parse_master_file reads (step value column 0, step file column 1).
void write_master_csv(const std::vector<TimeSeriesManifest::Entry>& entries,
                      const std::filesystem::path& path);

/// Shortest decimal text for v that std::from_chars parses back bit-equal.
std::string format_double(double v);

}  // namespace sdc
