// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sdc/interpolation.hpp"
#include "sdc/scattered_io.hpp"
#include "sdc/spatial_index.hpp"
#include "sdc/types.hpp"

namespace sdc {

/// One scattered field inside a csvt reader definition.
struct QuantityConfig {
    std::string name;
    std::string id;
    std::string knn_lib;          // "Flann" or "Cgal", case-insensitive
    std::vector<int> value_cols;  // data file columns, in component order
};

/// Where the interpolation targets come from: quadrature points of a mesh
/// region, or a plain points file.
struct TargetsConfig {
    std::filesystem::path mesh;
    std::string region;
    int order = 2;
    std::filesystem::path points_file;

    bool from_mesh() const { return !mesh.empty(); }
    bool from_points() const { return !points_file.empty(); }
    bool configured() const { return from_mesh() || from_points(); }
};

struct RunConfig {
    std::string quantity_id;  // empty selects the only defined quantity
    InterpParams params;
    IndexBackend backend = IndexBackend::kdtree;
    bool all_steps = true;        // emit exactly the stored steps
    std::vector<double> times;    // explicit query times when !all_steps
    TargetsConfig targets;
};

/// Full run description: the csvt dataset definition (file paths, column
/// maps, quantities), the run options and the output directory. Relative
/// paths resolve against the directory of the config file.
struct CouplingConfig {
    std::filesystem::path master_file;       // csvt "fileName"
    std::string id;                          // csvt "id"
    int step_values_col = 0;
    int step_files_col = 1;
    std::filesystem::path coordinates_file;  // coordinates "fileName"
    int x_col = 0;
    int y_col = 1;
    int z_col = -1;
    std::vector<QuantityConfig> quantities;

    RunConfig run;
    std::filesystem::path output_dir = ".";
    std::filesystem::path base_dir;  // directory of the config file

    const QuantityConfig& selected_quantity() const;
    ColumnMap column_map() const;          // for the selected quantity
    DatasetSource dataset_source() const;  // with resolved paths

    std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Reads a JSON config whose keys replicate the csvt setup schema:
/// scatteredData/csvt with fileName, id, stepValues/col, stepFiles/col,
/// coordinates/comp/dof/col plus coordinates/fileName, and quantity with
/// name/id/knnLib and comp/col. Both "Flann" and "Cgal" select the kdtree
/// backend; run.backend chooses the linear reference scan instead.
CouplingConfig parse_coupling_config(const std::filesystem::path& path);

/// Same parser over an in-memory document (relative paths resolve against
/// base_dir).
CouplingConfig parse_coupling_config_text(const std::string& text,
                                          const std::filesystem::path& base_dir);

/// Serializes back to JSON with the exact key names the parser reads.
std::string config_to_json_text(const CouplingConfig& config);

enum class Severity { error, warning };

struct Finding {
    Severity severity = Severity::error;
    std::string message;
    std::string location;
};

/// Collected validation findings; a run may proceed only when error-free.
struct ValidationReport {
    std::vector<Finding> findings;

    bool ok() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
    std::string to_string() const;
};

/// Checks the whole file hierarchy without stopping at the first problem:
/// file existence, per-snapshot point counts, time monotonicity, finite
/// values, plus target configuration and query times (out-of-range times
/// are a clamp warning, not an error).
ValidationReport validate_dataset(const CouplingConfig& config);

/// Loads the configured dataset for the selected quantity.
ScatteredDataset load_dataset(const CouplingConfig& config);

}  // namespace sdc
