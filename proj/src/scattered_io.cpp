// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/scattered_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace sdc {

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

bool parse_double(std::string_view field, double& out) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return false;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    return res.ec == std::errc() && res.ptr == field.data() + field.size();
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(path.string() + ": cannot open file");
    return in;
}

/// Calls fn(line_number, fields) for every non-blank, non-comment line.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        fn(line_no, split_fields(stripped));
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

TimeSeriesManifest parse_master_file(const std::filesystem::path& path, const ColumnMap& map) {
    auto in = open_input(path);
    const auto need = static_cast<std::size_t>(
        std::max(map.step_value_col, map.step_file_col)) + 1;

    std::vector<TimeSeriesManifest::Entry> entries;
    double prev_time = 0.0;
    for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& fields) {
        if (fields.size() < need) {
            throw Error(path.string() + ": too few columns at line " + std::to_string(line_no) +
                        " (" + std::to_string(fields.size()) + " < " + std::to_string(need) + ")");
        }
        double t = 0.0;
        if (!parse_double(fields[map.step_value_col], t) || !std::isfinite(t)) {
            throw Error(path.string() + ": unparseable time at line " + std::to_string(line_no));
        }
        const auto data_path = fields[map.step_file_col];
        if (data_path.empty()) {
            throw Error(path.string() + ": empty data path at line " + std::to_string(line_no));
        }
        if (!entries.empty() && !(prev_time < t)) {
            throw Error(path.string() + ": non-increasing time at line " + std::to_string(line_no));
        }
        prev_time = t;
        entries.push_back({t, std::string(data_path)});
    });

    if (entries.empty()) throw Error(path.string() + ": empty manifest");
    return TimeSeriesManifest(path.parent_path(), std::move(entries));
}

PointCloud parse_coordinates_file(const std::filesystem::path& path, const ColumnMap& map) {
    auto in = open_input(path);
    std::vector<int> cols{map.x_col, map.y_col};
    if (map.has_z()) cols.push_back(map.z_col);
    const auto need = static_cast<std::size_t>(*std::max_element(cols.begin(), cols.end())) + 1;

    std::vector<std::array<double, 3>> coords;
    for_each_record(in, [&](std::size_t, const std::vector<std::string_view>& fields) {
        const auto row = coords.size() + 1;
        if (fields.size() < need) {
            throw Error(path.string() + ": missing column at row " + std::to_string(row) +
                        " (" + std::to_string(fields.size()) + " < " + std::to_string(need) + ")");
        }
        std::array<double, 3> p{0.0, 0.0, 0.0};
        for (std::size_t a = 0; a < cols.size(); ++a) {
            double v = 0.0;
            if (!parse_double(fields[cols[a]], v) || !std::isfinite(v)) {
                throw Error(path.string() + ": bad coordinate at row " + std::to_string(row) +
                            " column " + std::to_string(cols[a]));
            }
            p[a] = v;
        }
        coords.push_back(p);
    });

    if (coords.empty()) throw Error(path.string() + ": empty point cloud");
    return PointCloud(map.has_z() ? 3 : 2, std::move(coords));
}

FieldSnapshot parse_data_file(const std::filesystem::path& path,
                              const std::vector<int>& value_cols, std::size_t expected_n) {
    if (value_cols.empty()) throw Error(path.string() + ": no value columns configured");
    auto in = open_input(path);
    const auto need = static_cast<std::size_t>(
        *std::max_element(value_cols.begin(), value_cols.end())) + 1;

    std::vector<double> values;
    values.reserve(expected_n * value_cols.size());
    std::size_t rows = 0;
    for_each_record(in, [&](std::size_t, const std::vector<std::string_view>& fields) {
        ++rows;
        if (fields.size() < need) {
            throw Error(path.string() + ": missing column at row " + std::to_string(rows) +
                        " (" + std::to_string(fields.size()) + " < " + std::to_string(need) + ")");
        }
        for (int c : value_cols) {
            double v = 0.0;
            if (!parse_double(fields[c], v) || !std::isfinite(v)) {
                throw Error(path.string() + ": bad value at row " + std::to_string(rows) +
                            " column " + std::to_string(c));
            }
            values.push_back(v);
        }
    });

    if (rows != expected_n) {
        throw Error(path.string() + ": point count mismatch (" + std::to_string(rows) +
                    " vs " + std::to_string(expected_n) + ")");
    }
    return FieldSnapshot(0.0, rows, value_cols.size(), std::move(values));
}

ScatteredDataset load_dataset(const DatasetSource& source) {
    source.columns.validate();

    ScatteredDataset ds;
    ds.quantity_id = source.quantity_id;
    ds.manifest = parse_master_file(source.master_path, source.columns);
    ds.points = parse_coordinates_file(source.coordinates_path, source.columns);

    ds.snapshots.reserve(ds.manifest.size());
    for (std::size_t i = 0; i < ds.manifest.size(); ++i) {
        auto snap = parse_data_file(ds.manifest.resolved_path(i), source.columns.value_cols,
                                    ds.points.size());
        snap.set_time(ds.manifest.time(i));
        ds.snapshots.push_back(std::move(snap));
    }
    return ds;
}

void write_field_csv(const PointCloud& points, const FieldSnapshot& snapshot,
                     const std::string& quantity_id, const std::filesystem::path& path) {
    if (points.empty()) throw Error(path.string() + ": empty target set");
    if (points.size() != snapshot.rows()) {
        throw Error(path.string() + ": point count mismatch (" + std::to_string(points.size()) +
                    " vs " + std::to_string(snapshot.rows()) + ")");
    }

    std::ofstream out(path);
    if (!out) throw Error(path.string() + ": cannot open file for writing");

    out << "# x,y,z";
    for (std::size_t c = 0; c < snapshot.components(); ++c) {
        out << ',' << quantity_id << '_' << c;
    }
    out << '\n';

    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        out << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]);
        for (std::size_t c = 0; c < snapshot.components(); ++c) {
            out << ',' << format_double(snapshot(i, c));
        }
        out << '\n';
    }
    if (!out) throw Error(path.string() + ": write failed");
}

void write_master_csv(const std::vector<TimeSeriesManifest::Entry>& entries,
                      const std::filesystem::path& path) {
    if (entries.empty()) throw Error(path.string() + ": empty manifest");
    std::ofstream out(path);
    if (!out) throw Error(path.string() + ": cannot open file for writing");
    for (const auto& e : entries) {
        out << format_double(e.time) << ',' << e.data_path << '\n';
    }
    if (!out) throw Error(path.string() + ": write failed");
}

}  // namespace sdc
