// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sdc/config.hpp"
#include "sdc/fem_targets.hpp"

namespace sdc {

/// What run_couple wrote: the output master file and its entries
/// (paths relative to the master's directory, as written).
struct OutputManifest {
    std::filesystem::path master_path;
    std::vector<TimeSeriesManifest::Entry> entries;
};

/// Builds the target set configured for the run (mesh quadrature points or
/// a points file).
TargetSet make_targets(const CouplingConfig& config);

/// End-to-end driver: validates, loads the dataset, builds the spatial
/// index once, generates targets, evaluates every requested time and writes
/// "<id>_<seq>.csv" files plus an "<id>.descrip" master file. The master is
/// written last, so a complete output is itself a loadable csvt dataset.
OutputManifest run_couple(const CouplingConfig& config);

/// Command-line overrides; unset fields leave the config untouched.
struct CliOverrides {
    std::optional<std::string> mesh;
    std::optional<std::string> region;
    std::optional<int> order;
    std::optional<std::string> targets_file;
    std::optional<std::size_t> k;
    std::optional<double> p;
    std::optional<std::string> time_mode;
    std::optional<std::string> times;  // "all-steps" or comma-separated values
    std::optional<std::string> backend;
    std::optional<std::string> output_dir;
};

void apply_overrides(CouplingConfig& config, const CliOverrides& overrides);

/// Subcommands: couple, validate, quadrature. Returns 0 on success, 1 on
/// validation or runtime errors, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace sdc
