// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "support/fixtures.hpp"

#include <array>
#include <cmath>

namespace texweave::testing {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct MeshBuilder {
    TriangleMesh mesh;

    int vertex(const Vec3& p) {
        mesh.vertices.push_back(p);
        return static_cast<int>(mesh.vertices.size()) - 1;
    }

    void tri(int a, int b, int c, const Vec2& ua, const Vec2& ub, const Vec2& uc) {
        mesh.faces.push_back({a, b, c});
        mesh.uv_corners.push_back({ua, ub, uc});
    }

    // Quad given CCW (seen against the normal); splits along corner0-corner2.
    void quad(const std::array<int, 4>& v, const std::array<Vec2, 4>& uv) {
        tri(v[0], v[1], v[2], uv[0], uv[1], uv[2]);
        tri(v[0], v[2], v[3], uv[0], uv[2], uv[3]);
    }

    TriangleMesh finish() {
        compute_vertex_normals(mesh);
        return mesh;
    }
};

// UV rectangle of one cell in a margin-padded grid layout.
std::array<Vec2, 4> cell_uv(int row, int col, int rows, int cols, double margin = 0.04) {
    const double cw = 1.0 / cols;
    const double ch = 1.0 / rows;
    const double u0 = col * cw + margin * cw;
    const double u1 = (col + 1) * cw - margin * cw;
    const double v0 = row * ch + margin * ch;
    const double v1 = (row + 1) * ch - margin * ch;
    return {Vec2{u0, v0}, Vec2{u1, v0}, Vec2{u1, v1}, Vec2{u0, v1}};
}

// Subdivided planar patch: corners c00 -> c10 -> c11 -> c01 CCW, UV rectangle
// mapped the same way.
void add_patch(MeshBuilder& b, const Vec3& c00, const Vec3& c10, const Vec3& c11,
               const Vec3& c01, const std::array<Vec2, 4>& uv, int divisions) {
    const int n = divisions;
    std::vector<int> grid((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            const double s = static_cast<double>(i) / n;
            const double t = static_cast<double>(j) / n;
            const Vec3 bottom = c00 + (c10 - c00) * s;
            const Vec3 top = c01 + (c11 - c01) * s;
            grid[j * (n + 1) + i] = b.vertex(bottom + (top - bottom) * t);
        }
    }
    auto uv_at = [&](double s, double t) {
        const Vec2 bottom = uv[0] + (uv[1] - uv[0]) * s;
        const Vec2 top = uv[3] + (uv[2] - uv[3]) * s;
        return bottom + (top - bottom) * t;
    };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double s0 = static_cast<double>(i) / n;
            const double s1 = static_cast<double>(i + 1) / n;
            const double t0 = static_cast<double>(j) / n;
            const double t1 = static_cast<double>(j + 1) / n;
            b.quad({grid[j * (n + 1) + i], grid[j * (n + 1) + i + 1],
                    grid[(j + 1) * (n + 1) + i + 1], grid[(j + 1) * (n + 1) + i]},
                   {uv_at(s0, t0), uv_at(s1, t0), uv_at(s1, t1), uv_at(s0, t1)});
        }
    }
}

}  // namespace

std::string single_triangle_obj() {
    return "# one triangle\n"
           "v 0 0 0\n"
           "v 1 0 0\n"
           "v 0 1 0\n"
           "vt 0.1 0.1\n"
           "vt 0.9 0.1\n"
           "vt 0.1 0.9\n"
           "vn 0 0 1\n"
           "f 1/1/1 2/2/1 3/3/1\n";
}

std::string quad_obj() {
    return "v 0 0 0\n"
           "v 1 0 0\n"
           "v 1 1 0\n"
           "v 0 1 0\n"
           "vt 0.1 0.1\n"
           "vt 0.9 0.1\n"
           "vt 0.9 0.9\n"
           "vt 0.1 0.9\n"
           "f 1/1 2/2 3/3 4/4\n";
}

std::string bad_index_obj() {
    return "v 0 0 0\n"
           "v 1 0 0\n"
           "v 0 1 0\n"
           "vt 0 0\n"
           "vt 1 0\n"
           "vt 0 1\n"
           "f 1/1 2/2 7/3\n";
}

std::string missing_uv_obj() {
    return "v 0 0 0\n"
           "v 1 0 0\n"
           "v 0 1 0\n"
           "vn 0 0 1\n"
           "f 1//1 2//1 3//1\n";
}

TriangleMesh make_quad(double half_size) {
    MeshBuilder b;
    const double s = half_size;
    const int v0 = b.vertex({-s, -s, 0});
    const int v1 = b.vertex({s, -s, 0});
    const int v2 = b.vertex({s, s, 0});
    const int v3 = b.vertex({-s, s, 0});
    b.quad({v0, v1, v2, v3},
           {Vec2{0.05, 0.05}, Vec2{0.95, 0.05}, Vec2{0.95, 0.95}, Vec2{0.05, 0.95}});
    return b.finish();
}

TriangleMesh make_unit_cube() {
    MeshBuilder b;
    int corner[8];
    for (int i = 0; i < 8; ++i) {
        const double x = (i & 1) ? 1.0 : -1.0;
        const double y = (i & 2) ? 1.0 : -1.0;
        const double z = (i & 4) ? 1.0 : -1.0;
        corner[i] = b.vertex({x, y, z});
    }
    auto in_tetra = [&](int i) {
        const int sx = (i & 1) ? 1 : -1;
        const int sy = (i & 2) ? 1 : -1;
        const int sz = (i & 4) ? 1 : -1;
        return sx * sy * sz > 0;
    };
    // CCW-from-outside corner cycles per face.
    const std::array<std::array<int, 4>, 6> faces = {{
        {1, 3, 7, 5},  // +x
        {0, 4, 6, 2},  // -x
        {2, 6, 7, 3},  // +y
        {0, 1, 5, 4},  // -y
        {4, 5, 7, 6},  // +z
        {0, 2, 3, 1},  // -z
    }};
    for (int f = 0; f < 6; ++f) {
        std::array<int, 4> idx = faces[f];
        std::array<Vec2, 4> uv = cell_uv(f / 3, f % 3, 2, 3);
        // Rotate so the split diagonal joins the two inscribed-tetrahedron
        // corners; this balances the per-vertex area weights and makes
        // corner normals exactly radial.
        while (!in_tetra(idx[0])) {
            std::rotate(idx.begin(), idx.begin() + 1, idx.end());
            std::rotate(uv.begin(), uv.begin() + 1, uv.end());
        }
        std::array<int, 4> verts;
        for (int k = 0; k < 4; ++k) verts[k] = corner[idx[k]];
        b.quad(verts, uv);
    }
    return b.finish();
}

TriangleMesh make_octahedron() {
    MeshBuilder b;
    const int px = b.vertex({1, 0, 0});
    const int nx = b.vertex({-1, 0, 0});
    const int py = b.vertex({0, 1, 0});
    const int ny = b.vertex({0, -1, 0});
    const int pz = b.vertex({0, 0, 1});
    const int nz = b.vertex({0, 0, -1});
    int chart = 0;
    for (int sx = -1; sx <= 1; sx += 2) {
        for (int sy = -1; sy <= 1; sy += 2) {
            for (int sz = -1; sz <= 1; sz += 2) {
                int a = sx > 0 ? px : nx;
                int c = sy > 0 ? py : ny;
                int d = sz > 0 ? pz : nz;
                if (sx * sy * sz < 0) std::swap(c, d);  // outward orientation
                const auto uv = cell_uv(chart / 4, chart % 4, 2, 4, 0.1);
                b.tri(a, c, d, uv[0], uv[1], uv[3]);
                ++chart;
            }
        }
    }
    return b.finish();
}

TriangleMesh make_uv_sphere(int segments, int rings, double radius) {
    MeshBuilder b;
    const double lat0 = -80.0 * kPi / 180.0;
    const double lat1 = 80.0 * kPi / 180.0;
    const double inset = 0.02;
    std::vector<int> grid((rings + 1) * (segments + 1));
    for (int r = 0; r <= rings; ++r) {
        const double lat = lat0 + (lat1 - lat0) * r / rings;
        for (int s = 0; s <= segments; ++s) {
            const double lon = 2.0 * kPi * s / segments;
            grid[r * (segments + 1) + s] =
                b.vertex({radius * std::cos(lat) * std::sin(lon), radius * std::sin(lat),
                          radius * std::cos(lat) * std::cos(lon)});
        }
    }
    auto uv_at = [&](int r, int s) {
        return Vec2{inset + (1.0 - 2.0 * inset) * s / segments,
                    inset + (1.0 - 2.0 * inset) * r / rings};
    };
    for (int r = 0; r < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            const int i00 = grid[r * (segments + 1) + s];
            const int i10 = grid[r * (segments + 1) + s + 1];
            const int i11 = grid[(r + 1) * (segments + 1) + s + 1];
            const int i01 = grid[(r + 1) * (segments + 1) + s];
            b.quad({i00, i10, i11, i01}, {uv_at(r, s), uv_at(r, s + 1), uv_at(r + 1, s + 1),
                                          uv_at(r + 1, s)});
        }
    }
    return b.finish();
}

TriangleMesh make_two_perpendicular_planes(int divisions) {
    MeshBuilder b;
    // Square 2x2 planes on square UV cells keep the texel density isotropic.
    // A: y = 0, normal +y.
    add_patch(b, {-1, 0, 2}, {1, 0, 2}, {1, 0, 0}, {-1, 0, 0},
              cell_uv(0, 0, 2, 2, 0.06), divisions);
    // B: z = 0, hanging down from the shared line y=0,z=0; normal +z.
    add_patch(b, {-1, -2, 0}, {1, -2, 0}, {1, 0, 0}, {-1, 0, 0},
              cell_uv(0, 1, 2, 2, 0.06), divisions);
    return b.finish();
}

TriangleMesh make_abutting_charts(int divisions) {
    MeshBuilder b;
    // Left half [-1,0] and right half [0,1] of the z=0 plane, normals +z,
    // separate charts with identical texel density.
    add_patch(b, {-1, -1, 0}, {0, -1, 0}, {0, 1, 0}, {-1, 1, 0},
              {Vec2{0.05, 0.05}, Vec2{0.45, 0.05}, Vec2{0.45, 0.85}, Vec2{0.05, 0.85}},
              divisions);
    add_patch(b, {0, -1, 0}, {1, -1, 0}, {1, 1, 0}, {0, 1, 0},
              {Vec2{0.55, 0.05}, Vec2{0.95, 0.05}, Vec2{0.95, 0.85}, Vec2{0.55, 0.85}},
              divisions);
    return b.finish();
}

TriangleMesh make_stacked_quads(double front_half, double back_half, double front_z,
                                double back_z) {
    MeshBuilder b;
    const double f = front_half;
    add_patch(b, {-f, -f, front_z}, {f, -f, front_z}, {f, f, front_z}, {-f, f, front_z},
              cell_uv(0, 0, 1, 2, 0.06), 4);
    const double k = back_half;
    add_patch(b, {-k, -k, back_z}, {k, -k, back_z}, {k, k, back_z}, {-k, k, back_z},
              cell_uv(0, 1, 1, 2, 0.06), 8);
    return b.finish();
}

TriangleMesh make_cup(double half_width, double height, int divisions) {
    MeshBuilder b;
    const double w = half_width;
    const double h = height;
    // Outward walls.
    add_patch(b, {w, 0, -w}, {w, 0, w}, {w, h, w}, {w, h, -w}, cell_uv(0, 0, 2, 3),
              divisions);  // +x
    add_patch(b, {-w, 0, w}, {-w, 0, -w}, {-w, h, -w}, {-w, h, w}, cell_uv(0, 1, 2, 3),
              divisions);  // -x
    add_patch(b, {w, 0, w}, {-w, 0, w}, {-w, h, w}, {w, h, w}, cell_uv(0, 2, 2, 3),
              divisions);  // +z
    add_patch(b, {-w, 0, -w}, {w, 0, -w}, {w, h, -w}, {-w, h, -w}, cell_uv(1, 0, 2, 3),
              divisions);  // -z
    // Interior floor, normal +y; only visible through the opening.
    add_patch(b, {-w, 0, -w}, {-w, 0, w}, {w, 0, w}, {w, 0, -w}, cell_uv(1, 1, 2, 3),
              divisions);
    return b.finish();
}

TriangleMesh make_chart_grid(int rows, int cols) {
    MeshBuilder b;
    const double tile = 2.0 / std::max(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const double x0 = -1.0 + c * tile;
            const double y0 = -1.0 + r * tile;
            add_patch(b, {x0, y0, 0}, {x0 + tile, y0, 0}, {x0 + tile, y0 + tile, 0},
                      {x0, y0 + tile, 0}, cell_uv(r, c, rows, cols, 0.08), 2);
        }
    }
    return b.finish();
}

std::string cube_obj() {
    const TriangleMesh cube = make_unit_cube();
    std::string out;
    char line[128];
    for (const Vec3& v : cube.vertices) {
        std::snprintf(line, sizeof(line), "v %.9f %.9f %.9f\n", v.x, v.y, v.z);
        out += line;
    }
    for (const auto& corners : cube.uv_corners) {
        for (const Vec2& uv : corners) {
            std::snprintf(line, sizeof(line), "vt %.9f %.9f\n", uv.x, uv.y);
            out += line;
        }
    }
    for (size_t f = 0; f < cube.faces.size(); ++f) {
        std::snprintf(line, sizeof(line), "f %d/%zu %d/%zu %d/%zu\n", cube.faces[f][0] + 1,
                      f * 3 + 1, cube.faces[f][1] + 1, f * 3 + 2, cube.faces[f][2] + 1,
                      f * 3 + 3);
        out += line;
    }
    return out;
}

}  // namespace texweave::testing
