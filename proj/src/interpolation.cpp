// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "sdc/log.hpp"
#include "sdc/scattered_io.hpp"

namespace sdc {

TimeMode parse_time_mode(const std::string& name) {
    if (name == "nearest") return TimeMode::nearest;
    if (name == "hold_previous") return TimeMode::hold_previous;
    if (name == "linear") return TimeMode::linear;
    throw Error("unknown time mode '" + name +
                "' (expected nearest, hold_previous or linear)");
}

const char* time_mode_name(TimeMode mode) {
    switch (mode) {
        case TimeMode::nearest: return "nearest";
        case TimeMode::hold_previous: return "hold_previous";
        case TimeMode::linear: return "linear";
    }
    return "?";
}

void InterpParams::validate() const {
    if (k < 1) throw Error("k must be at least 1");
    if (!(p > 0.0) || !std::isfinite(p)) throw Error("weighting exponent p must be positive");
    if (!(exact_hit_tol >= 0.0) || !std::isfinite(exact_hit_tol)) {
        throw Error("exact hit tolerance must be non-negative");
    }
}

namespace {

std::size_t count_exact_hits(const std::vector<double>& distances, double threshold) {
    std::size_t hits = 0;
    while (hits < distances.size() && distances[hits] <= threshold) ++hits;
    return hits;
}

}  // namespace

std::vector<double> shepard_weights(const std::vector<double>& distances, double p,
                                    double exact_hit_tol, double scale) {
    if (distances.empty()) throw Error("shepard weights need at least one distance");
    if (!(p > 0.0)) throw Error("weighting exponent p must be positive");
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (!(distances[i] >= 0.0)) throw Error("distances must be non-negative");
        if (i > 0 && distances[i] < distances[i - 1]) {
            throw Error("distances must be sorted non-decreasing");
        }
    }

    std::vector<double> weights(distances.size(), 0.0);
    const std::size_t hits = count_exact_hits(distances, exact_hit_tol * scale);
    if (hits > 0) {
        const double w = 1.0 / static_cast<double>(hits);
        std::fill(weights.begin(), weights.begin() + hits, w);
        return weights;
    }
    if (scale == 0.0) {
        throw Error("degenerate point cloud: zero bounding box but nonzero distances");
    }

    // (d_min/d)^p instead of 1/d^p: same weights after normalization, but the
    // largest term is 1, so huge p cannot overflow.
    const double d_min = distances.front();
    double sum = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        weights[i] = std::pow(d_min / distances[i], p);
        sum += weights[i];
    }
    for (double& w : weights) w /= sum;
    return weights;
}

std::vector<double> interpolate_point(const FieldSnapshot& snapshot,
                                      const NeighborSet& neighbors,
                                      const InterpParams& params, double scale) {
    if (neighbors.empty()) throw Error("interpolation needs at least one neighbor");
    for (const auto& n : neighbors) {
        if (n.index >= snapshot.rows()) throw Error("neighbor index out of range");
    }

    std::vector<double> distances(neighbors.size());
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        distances[i] = neighbors[i].distance;
        if (!(distances[i] >= 0.0)) throw Error("distances must be non-negative");
        if (i > 0 && distances[i] < distances[i - 1]) {
            throw Error("distances must be sorted non-decreasing");
        }
    }

    const std::size_t components = snapshot.components();
    std::vector<double> result(components);

    // A unique exact hit returns the source row verbatim.
    if (count_exact_hits(distances, params.exact_hit_tol * scale) == 1) {
        for (std::size_t c = 0; c < components; ++c) {
            result[c] = snapshot(neighbors[0].index, c);
        }
        return result;
    }

    const auto weights = shepard_weights(distances, params.p, params.exact_hit_tol, scale);
    for (std::size_t c = 0; c < components; ++c) {
        double acc = 0.0;
        double lo = snapshot(neighbors[0].index, c);
        double hi = lo;
        for (std::size_t i = 0; i < neighbors.size(); ++i) {
            const double f = snapshot(neighbors[i].index, c);
            acc += weights[i] * f;
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
        // The exact value is a convex combination; clamping removes the few
        // ulps of rounding that could leak past the neighbor range.
        result[c] = std::clamp(acc, lo, hi);
    }
    return result;
}

namespace {

struct EvalSetup {
    const FieldSnapshot* snapshot;
    double scale;
};

EvalSetup prepare_eval(const ScatteredDataset& dataset, std::size_t step,
                       const SpatialIndex& index, const InterpParams& params) {
    params.validate();
    if (step >= dataset.snapshots.size()) {
        throw Error("step " + std::to_string(step) + " out of range (dataset has " +
                    std::to_string(dataset.snapshots.size()) + " steps)");
    }
    if (index.points().size() != dataset.points.size()) {
        throw Error("spatial index was not built over the dataset's point cloud");
    }
    return {&dataset.snapshots[step], dataset.points.bounding_box_diagonal()};
}

void eval_row(const FieldSnapshot& snapshot, const SpatialIndex& index,
              const PointCloud& targets, const InterpParams& params, double scale,
              std::size_t t, FieldSnapshot& out) {
    const auto neighbors = index.knn(targets[t], params.k);
    const auto row = interpolate_point(snapshot, neighbors, params, scale);
    for (std::size_t c = 0; c < row.size(); ++c) out(t, c) = row[c];
}

}  // namespace

FieldSnapshot evaluate_snapshot_serial(const ScatteredDataset& dataset, std::size_t step,
                                       const PointCloud& targets, const SpatialIndex& index,
                                       const InterpParams& params) {
    const auto setup = prepare_eval(dataset, step, index, params);
    FieldSnapshot out(setup.snapshot->time(), targets.size(), setup.snapshot->components(),
                      std::vector<double>(targets.size() * setup.snapshot->components(), 0.0));
    for (std::size_t t = 0; t < targets.size(); ++t) {
        eval_row(*setup.snapshot, index, targets, params, setup.scale, t, out);
    }
    return out;
}

FieldSnapshot evaluate_snapshot(const ScatteredDataset& dataset, std::size_t step,
                                const PointCloud& targets, const SpatialIndex& index,
                                const InterpParams& params) {
    const auto setup = prepare_eval(dataset, step, index, params);
    FieldSnapshot out(setup.snapshot->time(), targets.size(), setup.snapshot->components(),
                      std::vector<double>(targets.size() * setup.snapshot->components(), 0.0));

    const auto n = static_cast<std::ptrdiff_t>(targets.size());
    bool failed = false;
    std::string error;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        try {
            eval_row(*setup.snapshot, index, targets, params, setup.scale,
                     static_cast<std::size_t>(t), out);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                error = e.what();
            }
        }
    }
    if (failed) throw Error(error);
    return out;
}

TimeSelection select_time_step(const TimeSeriesManifest& manifest, double t,
                               const InterpParams& params) {
    const auto& entries = manifest.entries();
    if (entries.empty()) throw Error("empty manifest");
    const std::size_t n = entries.size();
    const std::size_t last = n - 1;

    TimeSelection sel;
    sel.clamped = t < entries.front().time || t > entries.back().time;

    // First step with time >= t.
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), t,
        [](const TimeSeriesManifest::Entry& e, double v) { return e.time < v; });
    const std::size_t j = static_cast<std::size_t>(it - entries.begin());

    switch (params.time_mode) {
        case TimeMode::nearest: {
            if (j == 0) {
                sel.lower_step = sel.upper_step = 0;
            } else if (j == n) {
                sel.lower_step = sel.upper_step = last;
            } else {
                const double d_lo = t - entries[j - 1].time;
                const double d_hi = entries[j].time - t;
                const std::size_t pick = d_lo <= d_hi ? j - 1 : j;  // tie -> earlier
                sel.lower_step = sel.upper_step = pick;
            }
            break;
        }
        case TimeMode::hold_previous: {
            const std::size_t pick = (j < n && entries[j].time == t) ? j : (j == 0 ? 0 : j - 1);
            sel.lower_step = sel.upper_step = pick;
            break;
        }
        case TimeMode::linear: {
            if (j == 0) {
                sel.lower_step = sel.upper_step = 0;
            } else if (j == n) {
                sel.lower_step = sel.upper_step = last;
            } else if (entries[j].time == t) {
                sel.lower_step = sel.upper_step = j;
            } else {
                sel.lower_step = j - 1;
                sel.upper_step = j;
                sel.alpha = (t - entries[j - 1].time) /
                            (entries[j].time - entries[j - 1].time);
            }
            break;
        }
    }
    return sel;
}

FieldSnapshot evaluate_transient(const ScatteredDataset& dataset, double t,
                                 const PointCloud& targets, const SpatialIndex& index,
                                 const InterpParams& params) {
    params.validate();
    const auto sel = select_time_step(dataset.manifest, t, params);
    if (sel.clamped) {
        log::warn("query time " + format_double(t) + " outside stored range [" +
                  format_double(dataset.manifest.entries().front().time) + ", " +
                  format_double(dataset.manifest.entries().back().time) + "], clamping");
    }

    FieldSnapshot out = evaluate_snapshot(dataset, sel.lower_step, targets, index, params);
    if (sel.upper_step != sel.lower_step && sel.alpha > 0.0) {
        const FieldSnapshot upper =
            evaluate_snapshot(dataset, sel.upper_step, targets, index, params);
        for (std::size_t i = 0; i < out.rows(); ++i) {
            for (std::size_t c = 0; c < out.components(); ++c) {
                out(i, c) = (1.0 - sel.alpha) * out(i, c) + sel.alpha * upper(i, c);
            }
        }
    }
    out.set_time(t);
    return out;
}

}  // namespace sdc
