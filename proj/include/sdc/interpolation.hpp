// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "sdc/spatial_index.hpp"
#include "sdc/types.hpp"

namespace sdc {

/// Behavior of transient queries between stored time steps.
enum class TimeMode { nearest, hold_previous, linear };

TimeMode parse_time_mode(const std::string& name);
const char* time_mode_name(TimeMode mode);

struct InterpParams {
    std::size_t k = 4;            // neighbors per target
    double p = 2.0;               // inverse-distance weighting exponent
    double exact_hit_tol = 1e-12; // exact-hit tolerance, relative to cloud diagonal
    TimeMode time_mode = TimeMode::nearest;

    void validate() const;
};

/// Normalized inverse-distance weights 1/d^p for a distance-sorted neighbor
/// list. Any distance within exact_hit_tol * scale of zero is an exact hit:
/// the weight mass is split uniformly over all hits and everything else gets
/// zero, which removes the 1/d^p pole deterministically. scale is the source
/// cloud's bounding-box diagonal; weights sum to 1.
///
/// Internally the weights are evaluated as (d_min/d_i)^p, which cannot
/// overflow for large p and cancels a uniform coordinate scaling exactly.
std::vector<double> shepard_weights(const std::vector<double>& distances, double p,
                                    double exact_hit_tol, double scale);

/// Convex combination of the neighbors' snapshot rows under shepard_weights.
/// Each component is clamped to the neighbor min/max, so constants reproduce
/// exactly; a unique exact hit returns that source row bit-for-bit.
std::vector<double> interpolate_point(const FieldSnapshot& snapshot,
                                      const NeighborSet& neighbors,
                                      const InterpParams& params, double scale);

/// Interpolates one stored step at every target point. Row t of the result
/// is interpolate_point at target t; the result keeps the snapshot's time.
/// Targets are independent, so the parallel path and the serial reference
/// produce identical output.
FieldSnapshot evaluate_snapshot(const ScatteredDataset& dataset, std::size_t step,
                                const PointCloud& targets, const SpatialIndex& index,
                                const InterpParams& params);

/// Serial reference implementation of evaluate_snapshot.
FieldSnapshot evaluate_snapshot_serial(const ScatteredDataset& dataset, std::size_t step,
                                       const PointCloud& targets, const SpatialIndex& index,
                                       const InterpParams& params);

/// Steps selected for a transient query, with the blend factor between them.
struct TimeSelection {
    std::size_t lower_step = 0;
    std::size_t upper_step = 0;
    double alpha = 0.0;     // 0 when the steps are equal
    bool clamped = false;   // query time fell outside the stored range
};

/// nearest: smallest |t - time|, ties toward the earlier step.
/// hold_previous: largest step with time <= t, clamped to step 0 below range.
/// linear: bracketing pair with alpha in (0,1), clamped at the range ends.
/// Out-of-range times clamp (flagged in the result) instead of erroring.
TimeSelection select_time_step(const TimeSeriesManifest& manifest, double t,
                               const InterpParams& params);

/// Evaluates the field at physical time t: the selected step for nearest and
/// hold_previous, the alpha-blend of the bracketing steps for linear. The
/// result carries time t. Emits a warning when t is clamped into range.
FieldSnapshot evaluate_transient(const ScatteredDataset& dataset, double t,
                                 const PointCloud& targets, const SpatialIndex& index,
                                 const InterpParams& params);

}  // namespace sdc
