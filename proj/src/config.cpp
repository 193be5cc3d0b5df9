// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdc/fem_targets.hpp"

namespace sdc {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

const json& require(const json& j, const char* key, const std::string& context) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw Error("missing required key '" + std::string(key) + "' in " + context);
    }
    return *it;
}

int require_col(const json& j, const std::string& context) {
    const auto& col = require(j, "col", context);
    if (!col.is_number_integer() || col.get<int>() < 0) {
        throw Error("'col' must be a non-negative integer in " + context);
    }
    return col.get<int>();
}

// "comp" may hold a single object or an array of objects.
std::vector<json> comp_list(const json& j, const std::string& context) {
    const auto& comp = require(j, "comp", context);
    if (comp.is_array()) return std::vector<json>(comp.begin(), comp.end());
    if (comp.is_object()) return {comp};
    throw Error("'comp' must be an object or an array in " + context);
}

QuantityConfig parse_quantity(const json& q) {
    QuantityConfig out;
    out.name = require(q, "name", "quantity").get<std::string>();
    out.id = require(q, "id", "quantity").get<std::string>();
    out.knn_lib = require(q, "knnLib", "quantity '" + out.id + "'").get<std::string>();
    const auto lib = lower(out.knn_lib);
    if (lib != "flann" && lib != "cgal") {
        throw Error("unknown knnLib '" + out.knn_lib + "' in quantity '" + out.id +
                    "' (expected Flann or Cgal)");
    }
    for (const auto& comp : comp_list(q, "quantity '" + out.id + "'")) {
        out.value_cols.push_back(require_col(comp, "quantity '" + out.id + "' comp"));
    }
    return out;
}

void parse_run(const json& r, RunConfig& run) {
    if (r.contains("quantityId")) run.quantity_id = r.at("quantityId").get<std::string>();
    if (r.contains("k")) run.params.k = r.at("k").get<std::size_t>();
    if (r.contains("p")) run.params.p = r.at("p").get<double>();
    if (r.contains("exactHitTol")) run.params.exact_hit_tol = r.at("exactHitTol").get<double>();
    if (r.contains("timeMode")) {
        run.params.time_mode = parse_time_mode(r.at("timeMode").get<std::string>());
    }
    if (r.contains("backend")) run.backend = parse_backend(r.at("backend").get<std::string>());
    if (r.contains("times")) {
        const auto& times = r.at("times");
        if (times.is_string()) {
            if (times.get<std::string>() != "all-steps") {
                throw Error("run.times must be \"all-steps\" or an array of times");
            }
            run.all_steps = true;
        } else if (times.is_array()) {
            run.all_steps = false;
            run.times = times.get<std::vector<double>>();
        } else {
            throw Error("run.times must be \"all-steps\" or an array of times");
        }
    }
    if (r.contains("targets")) {
        const auto& t = r.at("targets");
        if (t.contains("pointsFile")) {
            run.targets.points_file = t.at("pointsFile").get<std::string>();
        }
        if (t.contains("mesh")) {
            run.targets.mesh = t.at("mesh").get<std::string>();
            if (t.contains("region")) run.targets.region = t.at("region").get<std::string>();
            if (t.contains("order")) run.targets.order = t.at("order").get<int>();
        }
        if (run.targets.from_mesh() && run.targets.from_points()) {
            throw Error("run.targets: give either mesh/region/order or pointsFile, not both");
        }
    }
}

CouplingConfig parse_document(const json& doc, const std::filesystem::path& base_dir) {
    CouplingConfig cfg;
    cfg.base_dir = base_dir;

    const auto& scattered = require(doc, "scatteredData", "config");
    const auto& csvt = require(scattered, "csvt", "scatteredData");

    cfg.master_file = require(csvt, "fileName", "csvt").get<std::string>();
    cfg.id = require(csvt, "id", "csvt").get<std::string>();
    cfg.step_values_col = require_col(require(csvt, "stepValues", "csvt"), "stepValues");
    cfg.step_files_col = require_col(require(csvt, "stepFiles", "csvt"), "stepFiles");

    const auto& coords = require(csvt, "coordinates", "csvt");
    cfg.coordinates_file = require(coords, "fileName", "coordinates").get<std::string>();
    bool saw_x = false, saw_y = false;
    for (const auto& comp : comp_list(coords, "coordinates")) {
        const auto dof = require(comp, "dof", "coordinates comp").get<std::string>();
        const int col = require_col(comp, "coordinates comp dof='" + dof + "'");
        if (dof == "x") {
            if (saw_x) throw Error("duplicate coordinates comp dof='x'");
            cfg.x_col = col;
            saw_x = true;
        } else if (dof == "y") {
            if (saw_y) throw Error("duplicate coordinates comp dof='y'");
            cfg.y_col = col;
            saw_y = true;
        } else if (dof == "z") {
            if (cfg.z_col >= 0) throw Error("duplicate coordinates comp dof='z'");
            cfg.z_col = col;
        } else {
            throw Error("unknown coordinates dof '" + dof + "' (expected x, y or z)");
        }
    }
    if (!saw_x || !saw_y) throw Error("coordinates must map both x and y");

    const auto& quantity = require(csvt, "quantity", "csvt");
    if (quantity.is_array()) {
        for (const auto& q : quantity) cfg.quantities.push_back(parse_quantity(q));
    } else {
        cfg.quantities.push_back(parse_quantity(quantity));
    }
    if (cfg.quantities.empty()) throw Error("csvt defines no quantity");
    std::set<std::string> ids;
    for (const auto& q : cfg.quantities) {
        if (!ids.insert(q.id).second) throw Error("duplicate quantity id '" + q.id + "'");
    }

    if (doc.contains("run")) parse_run(doc.at("run"), cfg.run);
    if (doc.contains("output")) {
        cfg.output_dir = require(doc.at("output"), "directory", "output").get<std::string>();
    }

    cfg.run.params.validate();
    cfg.column_map().validate();
    cfg.selected_quantity();  // resolves and checks the quantityId reference
    return cfg;
}

}  // namespace

std::filesystem::path CouplingConfig::resolve(const std::filesystem::path& p) const {
    if (p.empty() || p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

const QuantityConfig& CouplingConfig::selected_quantity() const {
    if (quantities.empty()) throw Error("config defines no quantity");
    if (run.quantity_id.empty()) {
        if (quantities.size() > 1) {
            throw Error("run.quantityId is required when several quantities are defined");
        }
        return quantities.front();
    }
    for (const auto& q : quantities) {
        if (q.id == run.quantity_id) return q;
    }
    throw Error("run.quantityId '" + run.quantity_id + "' matches no quantity");
}

ColumnMap CouplingConfig::column_map() const {
    ColumnMap map;
    map.x_col = x_col;
    map.y_col = y_col;
    map.z_col = z_col;
    map.value_cols = selected_quantity().value_cols;
    map.step_value_col = step_values_col;
    map.step_file_col = step_files_col;
    return map;
}

DatasetSource CouplingConfig::dataset_source() const {
    return {resolve(master_file), resolve(coordinates_file), column_map(),
            selected_quantity().id};
}

CouplingConfig parse_coupling_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(path.string() + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_coupling_config_text(buf.str(), path.parent_path());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

CouplingConfig parse_coupling_config_text(const std::string& text,
                                          const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
    try {
        return parse_document(doc, base_dir);
    } catch (const json::exception& e) {
        throw Error(std::string("invalid config: ") + e.what());
    }
}

std::string config_to_json_text(const CouplingConfig& cfg) {
    json coords_comp = json::array();
    coords_comp.push_back({{"dof", "x"}, {"col", cfg.x_col}});
    coords_comp.push_back({{"dof", "y"}, {"col", cfg.y_col}});
    if (cfg.z_col >= 0) coords_comp.push_back({{"dof", "z"}, {"col", cfg.z_col}});

    json quantities = json::array();
    for (const auto& q : cfg.quantities) {
        json comps = json::array();
        for (int c : q.value_cols) comps.push_back({{"col", c}});
        quantities.push_back(
            {{"name", q.name}, {"id", q.id}, {"knnLib", q.knn_lib}, {"comp", comps}});
    }

    json run{{"k", cfg.run.params.k},
             {"p", cfg.run.params.p},
             {"exactHitTol", cfg.run.params.exact_hit_tol},
             {"timeMode", time_mode_name(cfg.run.params.time_mode)},
             {"backend", backend_name(cfg.run.backend)}};
    if (!cfg.run.quantity_id.empty()) run["quantityId"] = cfg.run.quantity_id;
    if (cfg.run.all_steps) {
        run["times"] = "all-steps";
    } else {
        run["times"] = cfg.run.times;
    }
    if (cfg.run.targets.from_points()) {
        run["targets"] = {{"pointsFile", cfg.run.targets.points_file.string()}};
    } else if (cfg.run.targets.from_mesh()) {
        run["targets"] = {{"mesh", cfg.run.targets.mesh.string()},
                          {"region", cfg.run.targets.region},
                          {"order", cfg.run.targets.order}};
    }

    const json doc{
        {"scatteredData",
         {{"csvt",
           {{"fileName", cfg.master_file.string()},
            {"id", cfg.id},
            {"stepValues", {{"col", cfg.step_values_col}}},
            {"stepFiles", {{"col", cfg.step_files_col}}},
            {"coordinates",
             {{"fileName", cfg.coordinates_file.string()}, {"comp", coords_comp}}},
            {"quantity", quantities}}}}},
        {"run", run},
        {"output", {{"directory", cfg.output_dir.string()}}}};
    return doc.dump(2);
}

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(),
                      [](const Finding& f) { return f.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const {
    return findings.size() - error_count();
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto& f : findings) {
        out += f.severity == Severity::error ? "error: " : "warning: ";
        out += f.message;
        if (!f.location.empty()) out += " [" + f.location + "]";
        out += '\n';
    }
    return out;
}

ValidationReport validate_dataset(const CouplingConfig& config) {
    ValidationReport report;
    const auto error = [&](std::string msg, std::string where) {
        report.findings.push_back({Severity::error, std::move(msg), std::move(where)});
    };
    const auto warning = [&](std::string msg, std::string where) {
        report.findings.push_back({Severity::warning, std::move(msg), std::move(where)});
    };

    const auto source = config.dataset_source();

    TimeSeriesManifest manifest;
    bool have_manifest = false;
    try {
        manifest = parse_master_file(source.master_path, source.columns);
        have_manifest = true;
    } catch (const Error& e) {
        error(e.what(), "master file");
    }

    PointCloud points;
    bool have_points = false;
    try {
        points = parse_coordinates_file(source.coordinates_path, source.columns);
        have_points = true;
    } catch (const Error& e) {
        error(e.what(), "coordinates file");
    }

    if (have_manifest && have_points) {
        for (std::size_t i = 0; i < manifest.size(); ++i) {
            try {
                parse_data_file(manifest.resolved_path(i), source.columns.value_cols,
                                points.size());
            } catch (const Error& e) {
                error(e.what(), "step " + std::to_string(i));
            }
        }
    }

    if (!config.run.all_steps) {
        if (config.run.times.empty()) {
            error("run.times is empty", "run.times");
        }
        for (std::size_t i = 1; i < config.run.times.size(); ++i) {
            if (!(config.run.times[i - 1] < config.run.times[i])) {
                error("query times must be strictly increasing", "run.times");
                break;
            }
        }
        if (have_manifest) {
            for (double t : config.run.times) {
                if (t < manifest.entries().front().time || t > manifest.entries().back().time) {
                    warning("query time " + format_double(t) +
                                " outside the stored range, will clamp",
                            "run.times");
                }
            }
        }
    }

    const auto& targets = config.run.targets;
    if (targets.from_mesh()) {
        try {
            const auto mesh = parse_mesh(config.resolve(targets.mesh));
            quadrature_points(mesh, targets.order, targets.region);
        } catch (const Error& e) {
            error(e.what(), "targets");
        }
    } else if (targets.from_points()) {
        try {
            targets_from_points_file(config.resolve(targets.points_file));
        } catch (const Error& e) {
            error(e.what(), "targets");
        }
    }

    return report;
}

ScatteredDataset load_dataset(const CouplingConfig& config) {
    return load_dataset(config.dataset_source());
}

}  // namespace sdc
