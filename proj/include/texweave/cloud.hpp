// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "texweave/image.hpp"
#include "texweave/raster.hpp"

namespace texweave {

// Colored 3D point cloud with one point per valid texel. Points keep a
// back-reference to their texel so colors can be written back after
// processing in 3D space.
struct TexelCloud {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<Color> colors;
    std::vector<uint8_t> painted;
    std::vector<std::pair<int, int>> texel_index;  // (row, col)

    size_t size() const { return positions.size(); }

    size_t painted_count() const;
    bool fully_painted() const;
};

// Lifts valid texels into a point cloud in scanline order. Unpainted points
// start with color (0,0,0).
TexelCloud cloud_from_texture(const UvTexture& texture, const GeometryBuffers& buffers);

// Writes point colors back to their texels. Requires a fully painted cloud;
// afterwards painted_mask equals valid_mask.
void texture_from_cloud(const TexelCloud& cloud, UvTexture& texture);

// Mean 3D distance between 4-adjacent valid texels; the natural length scale
// of the sampling density.
double mean_texel_edge_length(const GeometryBuffers& buffers);

// Debug dump: one `x y z nx ny nz r g b painted` line per point.
void dump_cloud_text(const std::string& path, const TexelCloud& cloud);

}  // namespace texweave
