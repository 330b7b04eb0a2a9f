// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "texweave/camera.hpp"
#include "texweave/image.hpp"
#include "texweave/mesh.hpp"

namespace texweave {

constexpr int32_t kInvalidFace = -1;

// Per-texel geometry rasterized into UV space: 3D surface position, unit
// surface normal and the covering face. valid_mask marks texels whose center
// lies inside some UV triangle.
struct GeometryBuffers {
    int width = 0;
    int height = 0;
    std::vector<Vec3> position_map;
    std::vector<Vec3> normal_map;
    Mask valid_mask;
    Grid<int32_t> face_id_map;
    size_t overlap_count = 0;  // texels written by more than one UV triangle

    Vec3& position_at(int row, int col) {
        return position_map[static_cast<size_t>(row) * width + col];
    }
    const Vec3& position_at(int row, int col) const {
        return position_map[static_cast<size_t>(row) * width + col];
    }
    Vec3& normal_at(int row, int col) {
        return normal_map[static_cast<size_t>(row) * width + col];
    }
    const Vec3& normal_at(int row, int col) const {
        return normal_map[static_cast<size_t>(row) * width + col];
    }
    size_t valid_count() const;
};

// A perspective render from one camera. Depth is the Euclidean distance from
// the camera origin to the surface point (infinite where nothing was hit).
struct ViewRender {
    int width = 0;
    int height = 0;
    Grid<double> depth_map;
    std::vector<Vec3> normal_map;
    std::vector<Color> color_map;  // filled only when rendering with a texture
    Mask hit_mask;

    bool has_color() const { return !color_map.empty(); }
    double max_finite_depth() const;
};

// Texel-center coverage with a top-left tie rule; overlapping UV triangles
// resolve last-writer-wins in face order, counted in overlap_count.
GeometryBuffers rasterize_uv(const TriangleMesh& mesh, int width, int height,
                             bool flat_normals = false);

// Z-buffer rasterization with perspective-correct interpolation. When a
// texture is given, colors are bilinear samples of it at the interpolated UV.
ViewRender render_view(const TriangleMesh& mesh, const Camera& camera, int width,
                       int height, const UvTexture* texture = nullptr);

}  // namespace texweave
