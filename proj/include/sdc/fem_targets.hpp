// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/types.hpp"

namespace sdc {

enum class ElementKind { line2, tri3, quad4 };

ElementKind parse_element_kind(const std::string& name);
const char* element_kind_name(ElementKind kind);
int element_node_count(ElementKind kind);

struct Element {
    ElementKind kind = ElementKind::line2;
    std::array<std::uint32_t, 4> nodes{};  // 0-based, first node_count used
    std::string region;
};

/// 2D mesh of line2/tri3/quad4 elements with per-element region tags.
struct Mesh {
    PointCloud nodes;                // dim 2
    std::vector<Element> elements;
};

/// Text format: "$nodes" section of "id x y" lines, "$elements" section of
/// "id kind region n1 n2 [n3 [n4]]" lines, '#' comments, 1-based ids.
Mesh parse_mesh(const std::filesystem::path& path);

/// One quadrature point on the reference element.
struct RefPoint {
    std::array<double, 2> coords{};  // line2 uses coords[0] only
    double weight = 0.0;
};

/// Gauss rules on the reference elements, order = points per direction
/// (1..3). line2 lives on [-1,1], quad4 on [-1,1]^2, tri3 on the unit
/// triangle. Weights sum to the reference measure (2, 4, 1/2). All rules
/// are exact for total degree order (tri3) or degree 2*order-1 per
/// direction (line2/quad4), and all weights are positive.
std::vector<RefPoint> gauss_points_reference(ElementKind kind, int order);

struct PhysicalPoint {
    std::array<double, 3> position{};  // z = 0
    double jacobian = 0.0;             // line2: half-length; tri3: 2*area
};

/// Isoparametric map of a reference point into element coordinates.
/// Throws "inverted element" when the Jacobian is not positive.
PhysicalPoint map_to_physical(const Mesh& mesh, std::size_t element,
                              const std::array<double, 2>& ref);

struct TargetMeta {
    std::size_t element = 0;
    int local_index = 0;
    double weight = 0.0;  // reference weight * |J|, in physical measure
    bool has_normal = false;
    std::array<double, 2> normal{};  // unit outward normal, line2 only
};

/// Interpolation targets plus quadrature metadata, one entry per
/// (element, quadrature point) pair.
struct TargetSet {
    PointCloud points;
    std::vector<TargetMeta> meta;
};

/// Gauss points of every element whose region matches the filter (an empty
/// filter matches all). line2 normals are the tangent rotated -90 degrees
/// (clockwise), so counter-clockwise boundary traversal points them outward.
TargetSet quadrature_points(const Mesh& mesh, int order, std::string_view region_filter);

/// Targets read from a CSV points file (columns x,y and optionally z);
/// weights are 1 and no normals are attached.
TargetSet targets_from_points_file(const std::filesystem::path& path);

}  // namespace sdc
