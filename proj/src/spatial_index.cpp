// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/spatial_index.hpp"

#include <algorithm>
#include <cmath>

namespace sdc {

namespace {

// Both backends use this exact accumulation order so their distances
// agree bitwise.
double sq_dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    double d2 = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        const double d = a[axis] - b[axis];
        d2 += d * d;
    }
    return d2;
}

// Candidates are ordered by (distance², source index); pair comparison
// gives exactly that.
using Candidate = std::pair<double, std::size_t>;

void insert_bounded(std::vector<Candidate>& best, std::size_t k, Candidate cand) {
    if (best.size() == k && !(cand < best.back())) return;
    best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
    if (best.size() > k) best.pop_back();
}

NeighborSet to_neighbors(const std::vector<Candidate>& candidates) {
    NeighborSet out;
    out.reserve(candidates.size());
    for (const auto& [d2, idx] : candidates) {
        out.push_back({idx, std::sqrt(d2)});
    }
    return out;
}

void check_query(const std::array<double, 3>& q) {
    for (int a = 0; a < 3; ++a) {
        if (!std::isfinite(q[a])) throw Error("non-finite query coordinate");
    }
}

}  // namespace

IndexBackend parse_backend(const std::string& name) {
    if (name == "kdtree") return IndexBackend::kdtree;
    if (name == "linear") return IndexBackend::linear;
    throw Error("unknown backend '" + name + "' (expected kdtree or linear)");
}

const char* backend_name(IndexBackend backend) {
    return backend == IndexBackend::kdtree ? "kdtree" : "linear";
}

SpatialIndex::SpatialIndex(const PointCloud& points, IndexBackend backend)
    : points_(&points), backend_(backend) {
    if (points.empty()) throw Error("cannot build index over an empty point cloud");
    if (backend_ == IndexBackend::kdtree) {
        order_.resize(points.size());
        for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
        nodes_.reserve(2 * points.size() / kLeafSize + 2);
        root_ = build(0, static_cast<std::uint32_t>(order_.size()));
    }
}

SpatialIndex build_index(const PointCloud& points, IndexBackend backend) {
    return SpatialIndex(points, backend);
}

std::uint32_t SpatialIndex::build(std::uint32_t begin, std::uint32_t end) {
    const auto& pts = points_->coords();

    std::array<double, 3> lo = pts[order_[begin]];
    std::array<double, 3> hi = pts[order_[begin]];
    for (std::uint32_t i = begin + 1; i < end; ++i) {
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], pts[order_[i]][a]);
            hi[a] = std::max(hi[a], pts[order_[i]][a]);
        }
    }
    int axis = 0;
    double extent = hi[0] - lo[0];
    for (int a = 1; a < 3; ++a) {
        if (hi[a] - lo[a] > extent) {
            extent = hi[a] - lo[a];
            axis = a;
        }
    }

    Node node;
    // Coincident subranges become leaves whatever their size.
    if (end - begin <= kLeafSize || extent == 0.0) {
        node.begin = begin;
        node.end = end;
        nodes_.push_back(node);
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         return pts[a][axis] < pts[b][axis];
                     });
    node.axis = axis;
    node.split = pts[order_[mid]][axis];

    nodes_.push_back(node);
    const auto self = static_cast<std::uint32_t>(nodes_.size() - 1);
    const auto left = build(begin, mid);
    const auto right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

void SpatialIndex::knn_recurse(std::uint32_t node_id, const std::array<double, 3>& q,
                               std::size_t k, std::vector<Candidate>& best) const {
    const Node& node = nodes_[node_id];
    const auto& pts = points_->coords();

    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const std::size_t idx = order_[i];
            insert_bounded(best, k, {sq_dist(q, pts[idx]), idx});
        }
        return;
    }

    const double diff = q[node.axis] - node.split;
    const std::uint32_t near = diff < 0.0 ? node.left : node.right;
    const std::uint32_t far = diff < 0.0 ? node.right : node.left;

    knn_recurse(near, q, k, best);
    // Equal plane distance can still displace the current worst on the index
    // tie rule, so only a strictly larger plane distance prunes.
    if (best.size() < k || diff * diff <= best.back().first) {
        knn_recurse(far, q, k, best);
    }
}

NeighborSet SpatialIndex::knn(const std::array<double, 3>& query, std::size_t k) const {
    if (k == 0) throw Error("k must be at least 1");
    check_query(query);
    const auto& pts = points_->coords();
    k = std::min(k, pts.size());

    std::vector<Candidate> best;
    best.reserve(k + 1);
    if (backend_ == IndexBackend::kdtree) {
        knn_recurse(root_, query, k, best);
    } else {
        std::vector<Candidate> all;
        all.reserve(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            all.emplace_back(sq_dist(query, pts[i]), i);
        }
        std::partial_sort(all.begin(), all.begin() + k, all.end());
        all.resize(k);
        best = std::move(all);
    }
    return to_neighbors(best);
}

void SpatialIndex::radius_recurse(std::uint32_t node_id, const std::array<double, 3>& q,
                                  double r2, std::vector<Candidate>& hits) const {
    const Node& node = nodes_[node_id];
    const auto& pts = points_->coords();

    if (node.axis < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const std::size_t idx = order_[i];
            const double d2 = sq_dist(q, pts[idx]);
            if (d2 <= r2) hits.emplace_back(d2, idx);
        }
        return;
    }

    const double diff = q[node.axis] - node.split;
    const std::uint32_t near = diff < 0.0 ? node.left : node.right;
    const std::uint32_t far = diff < 0.0 ? node.right : node.left;

    radius_recurse(near, q, r2, hits);
    if (diff * diff <= r2) radius_recurse(far, q, r2, hits);
}

NeighborSet SpatialIndex::radius_search(const std::array<double, 3>& query,
                                        double radius) const {
    if (!(radius > 0.0)) throw Error("radius must be positive");
    check_query(query);
    const double r2 = radius * radius;
    const auto& pts = points_->coords();

    std::vector<Candidate> hits;
    if (backend_ == IndexBackend::kdtree) {
        radius_recurse(root_, query, r2, hits);
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d2 = sq_dist(query, pts[i]);
            if (d2 <= r2) hits.emplace_back(d2, i);
        }
    }
    std::sort(hits.begin(), hits.end());
    return to_neighbors(hits);
}

}  // namespace sdc
