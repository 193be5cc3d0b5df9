// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "sdc/types.hpp"

namespace sdc {

enum class IndexBackend { kdtree, linear };

IndexBackend parse_backend(const std::string& name);
const char* backend_name(IndexBackend backend);

/// One query result: source point id and true Euclidean distance.
struct Neighbor {
    std::size_t index = 0;
    double distance = 0.0;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Sorted by distance, ties by ascending source index.
using NeighborSet = std::vector<Neighbor>;

/// Exact nearest-neighbor search over a point cloud under the Euclidean
/// norm. The kdtree backend (median split on the widest axis, leaf size 16)
/// and the linear backend return identical results; the linear scan is kept
/// as the reference implementation.
///
/// The index holds a reference to the cloud, which must outlive it. Once
/// built it is immutable; concurrent queries from many threads are safe.
class SpatialIndex {
public:
    SpatialIndex(const PointCloud& points, IndexBackend backend);

    const PointCloud& points() const { return *points_; }
    IndexBackend backend() const { return backend_; }

    /// The min(k, N) nearest points, distance-sorted, ties by ascending index.
    NeighborSet knn(const std::array<double, 3>& query, std::size_t k) const;

    /// All points with distance² <= radius², sorted as in knn. May be empty.
    NeighborSet radius_search(const std::array<double, 3>& query, double radius) const;

private:
    struct Node {
        double split = 0.0;
        std::int32_t axis = -1;          // -1 marks a leaf
        std::uint32_t left = 0, right = 0;
        std::uint32_t begin = 0, end = 0;  // leaf payload in order_
    };

    static constexpr std::size_t kLeafSize = 16;

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);
    void knn_recurse(std::uint32_t node, const std::array<double, 3>& q, std::size_t k,
                     std::vector<std::pair<double, std::size_t>>& best) const;
    void radius_recurse(std::uint32_t node, const std::array<double, 3>& q, double r2,
                        std::vector<std::pair<double, std::size_t>>& hits) const;

    const PointCloud* points_;
    IndexBackend backend_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

/// Convenience factory mirroring the index's role as a built artifact.
SpatialIndex build_index(const PointCloud& points, IndexBackend backend);

}  // namespace sdc
