// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

// Timing harness for the evaluation kernel: serial reference vs the OpenMP
// path, and kdtree vs linear-scan neighbor search. Sizes are overridable:
//   sdc_bench [n_sources] [n_targets] [k]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sdc/interpolation.hpp"
#include "sdc/spatial_index.hpp"

using namespace sdc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng), 0.0};
    return PointCloud(2, std::move(pts));
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n_sources = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 200000;
    const std::size_t n_targets = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 50000;
    InterpParams params;
    params.k = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 4;

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    ScatteredDataset ds;
    ds.quantity_id = "bench";
    ds.manifest = TimeSeriesManifest(".", {{0.0, "step0.csv"}});
    ds.points = random_cloud(rng, n_sources);
    std::vector<double> values(n_sources);
    for (auto& v : values) v = u(rng);
    ds.snapshots.emplace_back(0.0, n_sources, 1, std::move(values));

    const auto targets = random_cloud(rng, n_targets);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled, parallel path runs serially\n");
#endif
    std::printf("sources: %zu, targets: %zu, k: %zu\n\n", n_sources, n_targets, params.k);

    auto start = std::chrono::steady_clock::now();
    const SpatialIndex tree(ds.points, IndexBackend::kdtree);
    std::printf("%-34s %8.3f s\n", "kdtree build", seconds_since(start));

    start = std::chrono::steady_clock::now();
    const auto serial = evaluate_snapshot_serial(ds, 0, targets, tree, params);
    const double t_serial = seconds_since(start);
    std::printf("%-34s %8.3f s\n", "evaluate serial (kdtree)", t_serial);

    start = std::chrono::steady_clock::now();
    const auto parallel = evaluate_snapshot(ds, 0, targets, tree, params);
    const double t_parallel = seconds_since(start);
    std::printf("%-34s %8.3f s  (speedup %.2fx)\n", "evaluate OpenMP (kdtree)", t_parallel,
                t_serial / t_parallel);

    if (std::memcmp(serial.values().data(), parallel.values().data(),
                    serial.values().size() * sizeof(double)) != 0) {
        std::printf("ERROR: parallel result differs from the serial reference\n");
        return 1;
    }
    std::printf("%-34s %8s\n", "serial vs parallel values", "equal");

    // The linear backend is the testing oracle; time it on a reduced target
    // count so the quadratic cost stays sane.
    const std::size_t reduced = std::min<std::size_t>(n_targets, 2000);
    std::vector<std::array<double, 3>> sub(targets.coords().begin(),
                                           targets.coords().begin() + reduced);
    const PointCloud sub_targets(2, std::move(sub));

    const SpatialIndex scan(ds.points, IndexBackend::linear);
    start = std::chrono::steady_clock::now();
    const auto via_scan = evaluate_snapshot(ds, 0, sub_targets, scan, params);
    const double t_scan = seconds_since(start);
    start = std::chrono::steady_clock::now();
    const auto via_tree = evaluate_snapshot(ds, 0, sub_targets, tree, params);
    const double t_tree = seconds_since(start);
    std::printf("%-34s %8.3f s  (%zu targets)\n", "evaluate OpenMP (linear scan)", t_scan,
                reduced);
    std::printf("%-34s %8.3f s  (%zu targets, %.1fx faster)\n", "evaluate OpenMP (kdtree)",
                t_tree, reduced, t_scan / t_tree);

    if (std::memcmp(via_scan.values().data(), via_tree.values().data(),
                    via_scan.values().size() * sizeof(double)) != 0) {
        std::printf("ERROR: kdtree result differs from the linear-scan reference\n");
        return 1;
    }
    std::printf("%-34s %8s\n", "kdtree vs linear values", "equal");
    return 0;
}
