// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/fem_targets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sdc/scattered_io.hpp"

namespace sdc {

ElementKind parse_element_kind(const std::string& name) {
    if (name == "line2") return ElementKind::line2;
    if (name == "tri3") return ElementKind::tri3;
    if (name == "quad4") return ElementKind::quad4;
    throw Error("unknown element kind '" + name + "'");
}

const char* element_kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::line2: return "line2";
        case ElementKind::tri3: return "tri3";
        case ElementKind::quad4: return "quad4";
    }
    return "?";
}

int element_node_count(ElementKind kind) {
    switch (kind) {
        case ElementKind::line2: return 2;
        case ElementKind::tri3: return 3;
        case ElementKind::quad4: return 4;
    }
    return 0;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

double shoelace_area(const Mesh& mesh, const Element& e) {
    const int n = element_node_count(e.kind);
    double twice = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto& a = mesh.nodes[e.nodes[i]];
        const auto& b = mesh.nodes[e.nodes[(i + 1) % n]];
        twice += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * twice;
}

void check_element(const Mesh& mesh, const Element& e, std::size_t file_id) {
    const int n = element_node_count(e.kind);
    const auto context = [&] {
        return "element " + std::to_string(file_id);
    };
    for (int i = 0; i < n; ++i) {
        if (e.nodes[i] >= mesh.nodes.size()) {
            throw Error(context() + ": bad node id " + std::to_string(e.nodes[i] + 1) +
                        " (mesh has " + std::to_string(mesh.nodes.size()) + " nodes)");
        }
        for (int j = i + 1; j < n; ++j) {
            if (e.nodes[i] == e.nodes[j]) {
                throw Error(context() + ": degenerate element (repeated node " +
                            std::to_string(e.nodes[i] + 1) + ")");
            }
        }
    }
    if (e.kind == ElementKind::line2) {
        const auto& a = mesh.nodes[e.nodes[0]];
        const auto& b = mesh.nodes[e.nodes[1]];
        const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        if (len <= 0.0) throw Error(context() + ": degenerate element (zero length)");
    } else if (shoelace_area(mesh, e) == 0.0) {
        throw Error(context() + ": degenerate element (zero area)");
    }
}

}  // namespace

Mesh parse_mesh(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(path.string() + ": cannot open file");

    enum class Section { none, nodes, elements } section = Section::none;
    std::vector<std::array<double, 3>> nodes;
    std::vector<Element> elements;

    const auto fail = [&](std::size_t line_no, const std::string& msg) -> void {
        throw Error(path.string() + ":" + std::to_string(line_no) + ": " + msg);
    };
    const auto parse_num = [](const std::string& tok, double& out) {
        const char* end = tok.data() + tok.size();
        const auto res = std::from_chars(tok.data(), end, out);
        return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;

        if (tokens[0] == "$nodes") {
            section = Section::nodes;
            continue;
        }
        if (tokens[0] == "$elements") {
            section = Section::elements;
            continue;
        }

        if (section == Section::nodes) {
            if (tokens.size() != 3) fail(line_no, "expected 'id x y'");
            double id = 0.0, x = 0.0, y = 0.0;
            if (!parse_num(tokens[0], id) || !parse_num(tokens[1], x) || !parse_num(tokens[2], y)) {
                fail(line_no, "unparseable node line");
            }
            if (id != static_cast<double>(nodes.size() + 1)) {
                fail(line_no, "node ids must be sequential starting at 1");
            }
            nodes.push_back({x, y, 0.0});
        } else if (section == Section::elements) {
            if (tokens.size() < 5) fail(line_no, "expected 'id kind region n1 n2 [n3 [n4]]'");
            Element e;
            try {
                e.kind = parse_element_kind(tokens[1]);
            } catch (const Error& err) {
                fail(line_no, err.what());
            }
            e.region = tokens[2];
            const int want = element_node_count(e.kind);
            if (static_cast<int>(tokens.size()) != 3 + want) {
                fail(line_no, std::string(element_kind_name(e.kind)) + " needs " +
                                  std::to_string(want) + " nodes");
            }
            double id = 0.0;
            if (!parse_num(tokens[0], id) || id != static_cast<double>(elements.size() + 1)) {
                fail(line_no, "element ids must be sequential starting at 1");
            }
            for (int i = 0; i < want; ++i) {
                double nid = 0.0;
                if (!parse_num(tokens[3 + i], nid) || nid < 1.0 ||
                    nid != std::floor(nid)) {
                    fail(line_no, "bad node id '" + tokens[3 + i] + "'");
                }
                e.nodes[i] = static_cast<std::uint32_t>(nid) - 1;
            }
            elements.push_back(std::move(e));
        } else {
            fail(line_no, "content before any $nodes/$elements section");
        }
    }

    if (nodes.empty()) throw Error(path.string() + ": mesh has no nodes");
    if (elements.empty()) throw Error(path.string() + ": mesh has no elements");

    Mesh mesh{PointCloud(2, std::move(nodes)), std::move(elements)};
    for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
        check_element(mesh, mesh.elements[i], i + 1);
    }
    return mesh;
}

std::vector<RefPoint> gauss_points_reference(ElementKind kind, int order) {
    if (order < 1 || order > 3) {
        throw Error("unsupported quadrature order " + std::to_string(order) +
                    " (supported: 1..3)");
    }

    // Gauss-Legendre on [-1,1].
    std::vector<RefPoint> line;
    switch (order) {
        case 1:
            line = {{{0.0, 0.0}, 2.0}};
            break;
        case 2: {
            const double a = 1.0 / std::sqrt(3.0);
            line = {{{-a, 0.0}, 1.0}, {{a, 0.0}, 1.0}};
            break;
        }
        case 3: {
            const double a = std::sqrt(3.0 / 5.0);
            line = {{{-a, 0.0}, 5.0 / 9.0}, {{0.0, 0.0}, 8.0 / 9.0}, {{a, 0.0}, 5.0 / 9.0}};
            break;
        }
    }

    switch (kind) {
        case ElementKind::line2:
            return line;
        case ElementKind::quad4: {
            std::vector<RefPoint> rule;
            rule.reserve(line.size() * line.size());
            for (const auto& py : line) {
                for (const auto& px : line) {
                    rule.push_back({{px.coords[0], py.coords[0]}, px.weight * py.weight});
                }
            }
            return rule;
        }
        case ElementKind::tri3:
            switch (order) {
                case 1:
                    return {{{1.0 / 3.0, 1.0 / 3.0}, 0.5}};
                case 2: {
                    const double w = 1.0 / 6.0;
                    return {{{1.0 / 6.0, 1.0 / 6.0}, w},
                            {{2.0 / 3.0, 1.0 / 6.0}, w},
                            {{1.0 / 6.0, 2.0 / 3.0}, w}};
                }
                case 3: {
                    // Collapsed Gauss-Jacobi(1,0) x Gauss-Legendre product rule:
                    // degree 3 with four positive weights.
                    const double s6 = std::sqrt(6.0);
                    const std::array<double, 2> xi{0.4 - s6 / 10.0, 0.4 + s6 / 10.0};
                    const std::array<double, 2> wx{0.25 + s6 / 36.0, 0.25 - s6 / 36.0};
                    const double s3 = std::sqrt(3.0);
                    const std::array<double, 2> eta{0.5 - s3 / 6.0, 0.5 + s3 / 6.0};
                    std::vector<RefPoint> rule;
                    rule.reserve(4);
                    for (int j = 0; j < 2; ++j) {
                        for (int i = 0; i < 2; ++i) {
                            rule.push_back({{xi[i], eta[j] * (1.0 - xi[i])}, wx[i] * 0.5});
                        }
                    }
                    return rule;
                }
            }
    }
    throw Error("unsupported element kind");
}

PhysicalPoint map_to_physical(const Mesh& mesh, std::size_t element,
                              const std::array<double, 2>& ref) {
    if (element >= mesh.elements.size()) throw Error("element index out of range");
    const Element& e = mesh.elements[element];
    const auto node = [&](int i) -> const std::array<double, 3>& {
        return mesh.nodes[e.nodes[i]];
    };

    PhysicalPoint out;
    switch (e.kind) {
        case ElementKind::line2: {
            const auto &a = node(0), &b = node(1);
            const double xi = ref[0];
            out.position = {0.5 * (1.0 - xi) * a[0] + 0.5 * (1.0 + xi) * b[0],
                            0.5 * (1.0 - xi) * a[1] + 0.5 * (1.0 + xi) * b[1], 0.0};
            out.jacobian = 0.5 * std::hypot(b[0] - a[0], b[1] - a[1]);
            break;
        }
        case ElementKind::tri3: {
            const auto &a = node(0), &b = node(1), &c = node(2);
            const double r = ref[0], s = ref[1];
            out.position = {a[0] + r * (b[0] - a[0]) + s * (c[0] - a[0]),
                            a[1] + r * (b[1] - a[1]) + s * (c[1] - a[1]), 0.0};
            out.jacobian = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
            break;
        }
        case ElementKind::quad4: {
            const double xi = ref[0], eta = ref[1];
            const std::array<double, 4> shape{
                0.25 * (1.0 - xi) * (1.0 - eta), 0.25 * (1.0 + xi) * (1.0 - eta),
                0.25 * (1.0 + xi) * (1.0 + eta), 0.25 * (1.0 - xi) * (1.0 + eta)};
            const std::array<double, 4> dxi{-0.25 * (1.0 - eta), 0.25 * (1.0 - eta),
                                            0.25 * (1.0 + eta), -0.25 * (1.0 + eta)};
            const std::array<double, 4> deta{-0.25 * (1.0 - xi), -0.25 * (1.0 + xi),
                                             0.25 * (1.0 + xi), 0.25 * (1.0 - xi)};
            double x = 0.0, y = 0.0;
            double jxx = 0.0, jxe = 0.0, jyx = 0.0, jye = 0.0;
            for (int i = 0; i < 4; ++i) {
                const auto& p = node(i);
                x += shape[i] * p[0];
                y += shape[i] * p[1];
                jxx += dxi[i] * p[0];
                jxe += deta[i] * p[0];
                jyx += dxi[i] * p[1];
                jye += deta[i] * p[1];
            }
            out.position = {x, y, 0.0};
            out.jacobian = jxx * jye - jxe * jyx;
            break;
        }
    }
    if (!(out.jacobian > 0.0)) {
        throw Error("inverted element " + std::to_string(element + 1) +
                    " (non-positive Jacobian)");
    }
    return out;
}

TargetSet quadrature_points(const Mesh& mesh, int order, std::string_view region_filter) {
    std::vector<std::array<double, 3>> points;
    std::vector<TargetMeta> meta;

    for (std::size_t ei = 0; ei < mesh.elements.size(); ++ei) {
        const Element& e = mesh.elements[ei];
        if (!region_filter.empty() && e.region != region_filter) continue;

        std::array<double, 2> normal{};
        bool has_normal = false;
        if (e.kind == ElementKind::line2) {
            const auto& a = mesh.nodes[e.nodes[0]];
            const auto& b = mesh.nodes[e.nodes[1]];
            const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
            // Tangent rotated clockwise by 90 degrees.
            normal = {(b[1] - a[1]) / len, -(b[0] - a[0]) / len};
            has_normal = true;
        }

        const auto rule = gauss_points_reference(e.kind, order);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const auto mapped = map_to_physical(mesh, ei, rule[q].coords);
            points.push_back(mapped.position);
            meta.push_back({ei, static_cast<int>(q), rule[q].weight * mapped.jacobian,
                            has_normal, normal});
        }
    }

    if (points.empty()) {
        throw Error("empty region: filter '" + std::string(region_filter) +
                    "' matches no elements");
    }
    return {PointCloud(2, std::move(points)), std::move(meta)};
}

TargetSet targets_from_points_file(const std::filesystem::path& path) {
    // Peek at the first record to decide whether a z column is present.
    std::ifstream in(path);
    if (!in) throw Error(path.string() + ": cannot open file");
    std::string line;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        std::string stripped = line;
        const auto b = stripped.find_first_not_of(" \t\r\n");
        if (b == std::string::npos || stripped[b] == '#') continue;
        columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
        break;
    }
    if (columns < 2) throw Error(path.string() + ": points file needs at least x,y columns");
    in.close();

    ColumnMap map;
    map.x_col = 0;
    map.y_col = 1;
    map.z_col = columns >= 3 ? 2 : -1;
    auto cloud = parse_coordinates_file(path, map);

    std::vector<TargetMeta> meta(cloud.size());
    for (std::size_t i = 0; i < meta.size(); ++i) {
        meta[i] = {i, 0, 1.0, false, {}};
    }
    return {std::move(cloud), std::move(meta)};
}

}  // namespace sdc
