// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "texweave/vec.hpp"

namespace texweave {

// Triangle mesh with corner-attributed UVs. A vertex may carry different UV
// coordinates in different faces; that is exactly what produces chart seams,
// so UVs are stored per face corner rather than per vertex.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<Vec2, 3>> uv_corners;  // one triple per face
    std::vector<Vec3> vertex_normals;             // unit, one per vertex

    bool empty() const { return faces.empty(); }
    size_t face_count() const { return faces.size(); }
    size_t vertex_count() const { return vertices.size(); }

    Vec3 face_normal(size_t face) const;  // area-weighted (unnormalized cross)
    double face_area(size_t face) const;
};

struct BoundingSphere {
    Vec3 center;
    double radius = 0.0;
};

struct MeshStats {
    size_t face_count = 0;
    size_t vertex_count = 0;
    size_t chart_count = 0;
    BoundingSphere bounding_sphere;
};

// Non-fatal observations collected while loading/validating.
struct MeshLoadReport {
    size_t dropped_degenerate_faces = 0;
    size_t clamped_uvs = 0;
    size_t ignored_directives = 0;
    size_t isolated_vertices = 0;  // received the default +z normal
};

// Center of the axis-aligned bounding box plus the max vertex distance.
// Deterministic and idempotent under normalize_mesh.
BoundingSphere bounding_sphere(const TriangleMesh& mesh);

// Wavefront-style text format: v/vt/vn/f lines, '#' comments, everything
// else ignored with a warning count. Faces must reference a vt for every
// corner; quads are fan-triangulated at corner 0, larger polygons rejected.
// Degenerate faces (3D area below 1e-12 at normalized scale) are dropped.
// UVs are clamped into [0,1]^2. Vertex normals are recomputed from faces
// unless recompute_normals is false and the file provided them.
TriangleMesh load_mesh(const std::string& path, MeshLoadReport* report = nullptr,
                       bool recompute_normals = true);

// Same contract as load_mesh on in-memory text, used by loaders and tests.
TriangleMesh parse_mesh_text(const std::string& text, MeshLoadReport* report = nullptr,
                             bool recompute_normals = true);

// Translates the bounding-sphere center to the origin and scales the mesh so
// the bounding-sphere radius is 0.9. UVs are unchanged.
TriangleMesh normalize_mesh(const TriangleMesh& mesh);

// Area-weighted average of incident face normals, normalized per vertex.
// Isolated vertices get +z and are counted in the report.
void compute_vertex_normals(TriangleMesh& mesh, MeshLoadReport* report = nullptr);

// Connected components of the face graph where two faces are adjacent iff
// they share a 3D edge with identical UV coordinates on both corners.
size_t count_uv_charts(const TriangleMesh& mesh);

MeshStats mesh_stats(const TriangleMesh& mesh);

void save_mesh_obj(const std::string& path, const TriangleMesh& mesh);

}  // namespace texweave
