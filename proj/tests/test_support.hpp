// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "sdc/types.hpp"

namespace sdc::test {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto base = std::filesystem::temp_directory_path();
        path_ = base / ("sdcouple_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

/// Message of the sdc::Error thrown by fn, or empty when nothing threw.
template <typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

inline bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, int dim,
                               double extent = 1.0) {
    std::uniform_real_distribution<double> u(-extent, extent);
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) {
        p = {u(rng), u(rng), dim == 3 ? u(rng) : 0.0};
    }
    return PointCloud(dim, std::move(pts));
}

/// Two-step, four-point scalar dataset under <root>/csvt/, in the layout the
/// demo config below refers to.
inline void write_demo_dataset(const std::filesystem::path& root,
                               const std::string& step0 = "1.0\n2.0\n3.0\n4.0\n",
                               const std::string& step1 = "5.0\n6.0\n7.0\n8.0\n") {
    std::filesystem::create_directories(root / "csvt");
    write_file(root / "csvt" / "data.descrip", "0.0,step0.csv\n0.001,step1.csv\n");
    write_file(root / "csvt" / "points.csv", "0.0,0.0\n1.0,0.0\n1.0,1.0\n0.0,1.0\n");
    write_file(root / "csvt" / "step0.csv", step0);
    write_file(root / "csvt" / "step1.csv", step1);
}

/// Config document matching write_demo_dataset; extra_sections is appended
/// after the scatteredData block (e.g. run and output sections).
inline std::string demo_config_json(const std::string& extra_sections = "") {
    std::string text = R"({
  "scatteredData": {
    "csvt": {
      "fileName": "./csvt/data.descrip",
      "id": "myCSVT",
      "stepValues": {"col": 0},
      "stepFiles": {"col": 1},
      "coordinates": {
        "fileName": "./csvt/points.csv",
        "comp": [{"dof": "x", "col": 0}, {"dof": "y", "col": 1}]
      },
      "quantity": {"name": "scatter", "id": "acouPot", "knnLib": "Flann", "comp": [{"col": 0}]}
    }
  })";
    if (!extra_sections.empty()) text += ",\n" + extra_sections;
    text += "\n}\n";
    return text;
}

inline void write_unit_square_mesh(const std::filesystem::path& path) {
    write_file(path,
               "$nodes\n"
               "1 0.0 0.0\n2 1.0 0.0\n3 1.0 1.0\n4 0.0 1.0\n"
               "$elements\n"
               "1 quad4 dom 1 2 3 4\n"
               "2 line2 bnd 1 2\n3 line2 bnd 2 3\n4 line2 bnd 3 4\n5 line2 bnd 4 1\n");
}

}  // namespace sdc::test
