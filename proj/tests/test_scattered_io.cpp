// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/scattered_io.hpp"

#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

#include "test_support.hpp"

using namespace sdc;
using namespace sdc::test;

namespace {

ColumnMap default_map(int components = 1) {
    ColumnMap map;
    map.x_col = 0;
    map.y_col = 1;
    map.z_col = -1;
    map.step_value_col = 0;
    map.step_file_col = 1;
    for (int c = 0; c < components; ++c) map.value_cols.push_back(c);
    return map;
}

}  // namespace

TEST_SUITE("scattered_io") {

TEST_CASE("master file parses in line order with verbatim paths") {
    TempDir dir;
    const auto path = dir / "data.descrip";
    write_file(path, "# time, data file\n0.0,step0.csv\n\n0.001,step1.csv\n");

    const auto manifest = parse_master_file(path, default_map());
    REQUIRE(manifest.size() == 2);
    CHECK(manifest[0].time == 0.0);
    CHECK(manifest[0].data_path == "step0.csv");
    CHECK(manifest[1].time == 0.001);
    CHECK(manifest[1].data_path == "step1.csv");
    CHECK(manifest.resolved_path(0) == dir.path() / "step0.csv");
}

TEST_CASE("master file with swapped columns") {
    TempDir dir;
    const auto path = dir / "data.descrip";
    write_file(path, "step0.csv,0.0\nstep1.csv,0.5\n");
    ColumnMap map = default_map();
    map.step_value_col = 1;
    map.step_file_col = 0;

    const auto manifest = parse_master_file(path, map);
    REQUIRE(manifest.size() == 2);
    CHECK(manifest[1].data_path == "step1.csv");
    CHECK(manifest[1].time == 0.5);
}

TEST_CASE("master file error cases") {
    TempDir dir;
    const auto path = dir / "data.descrip";

    SUBCASE("missing file") {
        CHECK(contains(thrown_message([&] { parse_master_file(path, default_map()); }),
                       "cannot open"));
    }
    SUBCASE("empty manifest") {
        write_file(path, "# only a comment\n");
        CHECK(contains(thrown_message([&] { parse_master_file(path, default_map()); }),
                       "empty manifest"));
    }
    SUBCASE("non-increasing times") {
        write_file(path, "0.0,step0.csv\n0.0,step1.csv\n");
        CHECK(contains(thrown_message([&] { parse_master_file(path, default_map()); }),
                       "non-increasing time at line 2"));
    }
    SUBCASE("unparseable time") {
        write_file(path, "0.0,step0.csv\nabc,step1.csv\n");
        CHECK(contains(thrown_message([&] { parse_master_file(path, default_map()); }),
                       "unparseable time at line 2"));
    }
    SUBCASE("too few columns") {
        write_file(path, "0.0\n");
        CHECK(contains(thrown_message([&] { parse_master_file(path, default_map()); }),
                       "too few columns at line 1"));
    }
}

TEST_CASE("coordinates file defines dimension by the mapped dofs") {
    TempDir dir;
    const auto path = dir / "points.csv";

    SUBCASE("2D when z is unmapped") {
        write_file(path, "0.0,0.0\n1.0,0.0\n");
        const auto cloud = parse_coordinates_file(path, default_map());
        CHECK(cloud.dim() == 2);
        REQUIRE(cloud.size() == 2);
        CHECK(cloud[1][0] == 1.0);
        CHECK(cloud[1][2] == 0.0);
    }
    SUBCASE("extra columns are ignored when unmapped") {
        write_file(path, "0.0,0.0,7.5\n1.0,0.0,8.5\n");
        const auto cloud = parse_coordinates_file(path, default_map());
        CHECK(cloud.dim() == 2);
        CHECK(cloud[0][2] == 0.0);
    }
    SUBCASE("3D when z is mapped") {
        write_file(path, "0.0,0.0,7.5\n1.0,0.0,8.5\n");
        ColumnMap map = default_map();
        map.z_col = 2;
        const auto cloud = parse_coordinates_file(path, map);
        CHECK(cloud.dim() == 3);
        CHECK(cloud[1][2] == 8.5);
    }
    SUBCASE("non-finite coordinate is rejected with its row") {
        write_file(path, "0.0,0.0,nan\n");
        ColumnMap map = default_map();
        map.z_col = 2;
        CHECK(contains(thrown_message([&] { parse_coordinates_file(path, map); }),
                       "row 1"));
    }
    SUBCASE("missing column") {
        write_file(path, "0.0,0.0\n1.0\n");
        CHECK(contains(thrown_message([&] { parse_coordinates_file(path, default_map()); }),
                       "missing column at row 2"));
    }
    SUBCASE("empty file") {
        write_file(path, "\n");
        CHECK(contains(thrown_message([&] { parse_coordinates_file(path, default_map()); }),
                       "empty point cloud"));
    }
}

TEST_CASE("data file parsing") {
    TempDir dir;
    const auto path = dir / "step0.csv";

    SUBCASE("single component") {
        write_file(path, "1.5\n-2.5\n");
        const auto snap = parse_data_file(path, {0}, 2);
        CHECK(snap.rows() == 2);
        CHECK(snap.components() == 1);
        CHECK(snap(0, 0) == 1.5);
        CHECK(snap(1, 0) == -2.5);
    }
    SUBCASE("vector field picks the mapped columns") {
        write_file(path, "1.0,2.0,3.0\n4.0,5.0,6.0\n");
        const auto snap = parse_data_file(path, {0, 1, 2}, 2);
        CHECK(snap.components() == 3);
        CHECK(snap(1, 2) == 6.0);
    }
    SUBCASE("row count mismatch") {
        write_file(path, "1.0\n2.0\n3.0\n");
        CHECK(contains(thrown_message([&] { parse_data_file(path, {0}, 2); }),
                       "point count mismatch (3 vs 2)"));
    }
    SUBCASE("non-finite value") {
        write_file(path, "1.0\ninf\n");
        CHECK(contains(thrown_message([&] { parse_data_file(path, {0}, 2); }),
                       "bad value at row 2"));
    }
}

TEST_CASE("load_dataset composes the full hierarchy") {
    TempDir dir;
    write_file(dir / "data.descrip", "0.0,step0.csv\n0.001,step1.csv\n");
    write_file(dir / "points.csv", "0.0,0.0\n1.0,0.0\n1.0,1.0\n0.0,1.0\n");
    write_file(dir / "step0.csv", "1.0\n2.0\n3.0\n4.0\n");
    write_file(dir / "step1.csv", "5.0\n6.0\n7.0\n8.0\n");

    DatasetSource source{dir / "data.descrip", dir / "points.csv", default_map(), "acouPot"};

    SUBCASE("loads two snapshots with manifest times") {
        const auto ds = load_dataset(source);
        CHECK(ds.points.size() == 4);
        REQUIRE(ds.snapshots.size() == 2);
        CHECK(ds.snapshots[0].time() == 0.0);
        CHECK(ds.snapshots[1].time() == 0.001);
        CHECK(ds.snapshots[1](3, 0) == 8.0);
        CHECK(ds.quantity_id == "acouPot");
    }
    SUBCASE("missing data file names the path") {
        std::filesystem::remove(dir / "step1.csv");
        CHECK(contains(thrown_message([&] { load_dataset(source); }), "step1.csv"));
    }
    SUBCASE("snapshot row mismatch is rejected") {
        write_file(dir / "step1.csv", "5.0\n6.0\n7.0\n");
        CHECK(contains(thrown_message([&] { load_dataset(source); }),
                       "point count mismatch (3 vs 4)"));
    }
}

TEST_CASE("write_field_csv layout and errors") {
    TempDir dir;
    PointCloud points(2, {{0.0, 0.0, 0.0}, {1.0, 2.0, 0.0}});

    SUBCASE("three components make a six-column body") {
        FieldSnapshot snap(0.0, 2, 3, {1, 2, 3, 4, 5, 6});
        const auto path = dir / "out.csv";
        write_field_csv(points, snap, "vel", path);
        const auto text = read_file(path);
        CHECK(contains(text, "# x,y,z,vel_0,vel_1,vel_2"));
        CHECK(contains(text, "1,2,0,4,5,6"));
    }
    SUBCASE("empty target set") {
        PointCloud empty;
        FieldSnapshot snap(0.0, 1, 1, {1.0});
        CHECK(contains(thrown_message([&] {
                           write_field_csv(empty, snap, "q", dir / "out.csv");
                       }),
                       "empty target set"));
    }
    SUBCASE("unwritable path") {
        FieldSnapshot snap(0.0, 2, 1, {1.0, 2.0});
        CHECK(contains(thrown_message([&] {
                           write_field_csv(points, snap, "q", dir / "no_dir" / "out.csv");
                       }),
                       "cannot open"));
    }
}

TEST_CASE("write/parse round trip is bit-exact for random matrices") {
    TempDir dir;
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-18, 18);

    for (int round = 0; round < 20; ++round) {
        std::uniform_int_distribution<std::size_t> size(1, 12);
        const std::size_t n = size(rng);
        const std::size_t comps = 1 + round % 3;

        std::vector<std::array<double, 3>> coords(n);
        std::vector<double> values(n * comps);
        for (auto& p : coords) {
            p = {mant(rng) * std::pow(10.0, expo(rng)),
                 mant(rng) * std::pow(10.0, expo(rng)),
                 mant(rng) * std::pow(10.0, expo(rng))};
        }
        for (auto& v : values) v = mant(rng) * std::pow(10.0, expo(rng));

        PointCloud points(3, coords);
        FieldSnapshot snap(0.0, n, comps, values);
        const auto path = dir / "roundtrip.csv";
        write_field_csv(points, snap, "q", path);

        std::vector<int> value_cols;
        for (std::size_t c = 0; c < comps; ++c) value_cols.push_back(3 + static_cast<int>(c));
        const auto reread = parse_data_file(path, value_cols, n);
        REQUIRE(reread.rows() == n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < comps; ++c) {
                const double got = reread(i, c);
                const double want = snap(i, c);
                CHECK(std::memcmp(&got, &want, sizeof(double)) == 0);
            }
        }

        ColumnMap coord_map;
        coord_map.x_col = 0;
        coord_map.y_col = 1;
        coord_map.z_col = 2;
        const auto cloud = parse_coordinates_file(path, coord_map);
        for (std::size_t i = 0; i < n; ++i) {
            for (int a = 0; a < 3; ++a) {
                CHECK(std::memcmp(&cloud[i][a], &points[i][a], sizeof(double)) == 0);
            }
        }
    }
}

TEST_CASE("round trip holds at floating-point extremes") {
    TempDir dir;
    const std::vector<double> extremes{
        0.0,
        -0.0,
        1.0,
        -1.0 / 3.0,
        std::numeric_limits<double>::max(),
        -std::numeric_limits<double>::max(),
        std::numeric_limits<double>::min(),       // smallest normal
        std::numeric_limits<double>::denorm_min(),
        -std::numeric_limits<double>::denorm_min(),
        1e300,
        -1e-300,
        6.02214076e23};

    PointCloud points(2, std::vector<std::array<double, 3>>(extremes.size(),
                                                            {0.0, 0.0, 0.0}));
    FieldSnapshot snap(0.0, extremes.size(), 1, extremes);
    const auto path = dir / "extremes.csv";
    write_field_csv(points, snap, "q", path);
    const auto reread = parse_data_file(path, {3}, extremes.size());
    for (std::size_t i = 0; i < extremes.size(); ++i) {
        const double got = reread(i, 0);
        CHECK(std::memcmp(&got, &extremes[i], sizeof(double)) == 0);
    }
}

TEST_CASE("master write/parse round trip") {
    TempDir dir;
    const std::vector<TimeSeriesManifest::Entry> entries{
        {0.0, "a.csv"}, {1.0 / 3.0, "b.csv"}, {0.5, "c.csv"}};
    const auto path = dir / "out.descrip";
    write_master_csv(entries, path);

    const auto manifest = parse_master_file(path, default_map());
    REQUIRE(manifest.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(manifest[i].time == entries[i].time);
        CHECK(manifest[i].data_path == entries[i].data_path);
    }
}

}  // TEST_SUITE
