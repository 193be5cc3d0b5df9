// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/coupler.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sdc/interpolation.hpp"
#include "sdc/log.hpp"

namespace sdc {

namespace {

std::string step_file_name(const std::string& quantity_id, std::size_t seq) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%04zu.csv", seq);
    return quantity_id + buf;
}

std::vector<double> parse_time_list(const std::string& text) {
    std::vector<double> times;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto field = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            const double t = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
            times.push_back(t);
        } catch (const std::exception&) {
            throw Error("unparseable time '" + field + "' in --times");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return times;
}

}  // namespace

TargetSet make_targets(const CouplingConfig& config) {
    const auto& t = config.run.targets;
    if (t.from_mesh()) {
        const auto mesh = parse_mesh(config.resolve(t.mesh));
        return quadrature_points(mesh, t.order, t.region);
    }
    if (t.from_points()) {
        return targets_from_points_file(config.resolve(t.points_file));
    }
    throw Error("no targets configured (set run.targets or pass --mesh/--targets-file)");
}

OutputManifest run_couple(const CouplingConfig& config) {
    const auto report = validate_dataset(config);
    for (const auto& f : report.findings) {
        if (f.severity == Severity::warning) log::warn(f.message);
    }
    if (!report.ok()) {
        throw Error("validation failed:\n" + report.to_string());
    }
    if (!config.run.targets.configured()) {
        throw Error("no targets configured (set run.targets or pass --mesh/--targets-file)");
    }

    const auto dataset = load_dataset(config);
    const auto targets = make_targets(config);
    if (targets.points.dim() != dataset.points.dim()) {
        log::warn("target dimension (" + std::to_string(targets.points.dim()) +
                  "D) differs from source dimension (" +
                  std::to_string(dataset.points.dim()) + "D)");
    }

    // One index for the whole run; the cloud is shared by all steps.
    const SpatialIndex index(dataset.points, config.run.backend);
    const auto& quantity = config.selected_quantity();

    std::vector<double> times;
    if (config.run.all_steps) {
        times.reserve(dataset.manifest.size());
        for (const auto& e : dataset.manifest.entries()) times.push_back(e.time);
    } else {
        times = config.run.times;
    }

    const auto out_dir = config.resolve(config.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    OutputManifest manifest;
    manifest.master_path = out_dir / (quantity.id + ".descrip");

    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto name = step_file_name(quantity.id, i);
        try {
            const FieldSnapshot field =
                config.run.all_steps
                    ? evaluate_snapshot(dataset, i, targets.points, index, config.run.params)
                    : evaluate_transient(dataset, times[i], targets.points, index,
                                         config.run.params);
            write_field_csv(targets.points, field, quantity.id, out_dir / name);
        } catch (const Error& e) {
            throw Error("step " + std::to_string(i) + " (t=" + format_double(times[i]) +
                        "): " + e.what());
        }
        manifest.entries.push_back({times[i], name});
        log::info("wrote " + (out_dir / name).string());
    }

    // The master goes last, after every step file landed.
    write_master_csv(manifest.entries, manifest.master_path);
    log::info("wrote " + manifest.master_path.string());
    return manifest;
}

void apply_overrides(CouplingConfig& config, const CliOverrides& o) {
    auto& run = config.run;
    if (o.mesh) {
        run.targets.mesh = *o.mesh;
        run.targets.points_file.clear();
    }
    if (o.region) run.targets.region = *o.region;
    if (o.order) run.targets.order = *o.order;
    if (o.targets_file) {
        run.targets.points_file = *o.targets_file;
        run.targets.mesh.clear();
        run.targets.region.clear();
    }
    if (o.k) run.params.k = *o.k;
    if (o.p) run.params.p = *o.p;
    if (o.time_mode) run.params.time_mode = parse_time_mode(*o.time_mode);
    if (o.times) {
        if (*o.times == "all-steps") {
            run.all_steps = true;
            run.times.clear();
        } else {
            run.all_steps = false;
            run.times = parse_time_list(*o.times);
        }
    }
    if (o.backend) run.backend = parse_backend(*o.backend);
    if (o.output_dir) config.output_dir = *o.output_dir;
    run.params.validate();
}

namespace {

void dump_quadrature(const TargetSet& targets, const std::filesystem::path& path) {
    const bool normals = std::all_of(targets.meta.begin(), targets.meta.end(),
                                     [](const TargetMeta& m) { return m.has_normal; });
    std::ofstream out(path);
    if (!out) throw Error(path.string() + ": cannot open file for writing");
    out << "# x,y,z,element,local,weight";
    if (normals) out << ",nx,ny";
    out << '\n';
    for (std::size_t i = 0; i < targets.points.size(); ++i) {
        const auto& p = targets.points[i];
        const auto& m = targets.meta[i];
        out << format_double(p[0]) << ',' << format_double(p[1]) << ','
            << format_double(p[2]) << ',' << m.element + 1 << ',' << m.local_index << ','
            << format_double(m.weight);
        if (normals) out << ',' << format_double(m.normal[0]) << ','
                         << format_double(m.normal[1]);
        out << '\n';
    }
    if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"scattered-data coupling toolkit"};
    app.require_subcommand(1);
    std::string log_level = "warn";
    const auto add_log_option = [&](CLI::App* sub) {
        sub->add_option("--log-level", log_level, "error, warn, info or debug")
            ->capture_default_str();
    };

    std::string config_path;
    CliOverrides overrides;

    auto* couple = app.add_subcommand(
        "couple", "interpolate a scattered dataset onto targets and write csvt output");
    couple->add_option("--config", config_path, "run configuration file")->required();
    auto* mesh_opt =
        couple->add_option("--mesh", overrides.mesh, "target mesh file (overrides config)");
    couple->add_option("--region", overrides.region, "mesh region filter");
    couple->add_option("--order", overrides.order, "quadrature points per direction (1..3)");
    couple->add_option("--targets-file", overrides.targets_file,
                       "CSV points file with target locations")
        ->excludes(mesh_opt);
    couple->add_option("--k", overrides.k, "neighbor count");
    couple->add_option("--p", overrides.p, "weighting exponent");
    couple->add_option("--time-mode", overrides.time_mode,
                       "nearest, hold_previous or linear");
    couple->add_option("--times", overrides.times,
                       "comma-separated query times, or all-steps");
    couple->add_option("--backend", overrides.backend, "kdtree or linear");
    couple->add_option("--output", overrides.output_dir, "output directory");
    add_log_option(couple);

    auto* validate = app.add_subcommand("validate", "check a configured dataset");
    validate->add_option("--config", config_path, "run configuration file")->required();
    add_log_option(validate);

    std::string mesh_path, region, quad_out;
    int order = 2;
    auto* quadrature = app.add_subcommand(
        "quadrature", "dump a mesh region's quadrature points as CSV");
    quadrature->add_option("--mesh", mesh_path, "mesh file")->required();
    quadrature->add_option("--region", region, "region filter (default: all elements)");
    quadrature->add_option("--order", order, "quadrature points per direction (1..3)")
        ->capture_default_str();
    quadrature->add_option("--output", quad_out, "output CSV path")->required();
    add_log_option(quadrature);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        log::set_level(log::parse_level(log_level));

        if (couple->parsed()) {
            auto config = parse_coupling_config(config_path);
            apply_overrides(config, overrides);
            const auto manifest = run_couple(config);
            std::cout << manifest.master_path.string() << '\n';
            return 0;
        }
        if (validate->parsed()) {
            const auto config = parse_coupling_config(config_path);
            const auto report = validate_dataset(config);
            std::cerr << report.to_string();
            if (report.ok()) {
                std::cerr << "ok: " << report.warning_count() << " warning(s)\n";
                return 0;
            }
            return 1;
        }
        if (quadrature->parsed()) {
            const auto mesh = parse_mesh(mesh_path);
            const auto targets = quadrature_points(mesh, order, region);
            dump_quadrature(targets, quad_out);
            std::cout << quad_out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace sdc
