// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/cloud.hpp"

#include <fstream>

#include "texweave/error.hpp"

namespace texweave {

size_t TexelCloud::painted_count() const {
    size_t n = 0;
    for (uint8_t p : painted) n += p ? 1 : 0;
    return n;
}

bool TexelCloud::fully_painted() const { return painted_count() == size(); }

TexelCloud cloud_from_texture(const UvTexture& texture, const GeometryBuffers& buffers) {
    require_same_resolution(texture.width, texture.height, buffers.width, buffers.height,
                            "cloud_from_texture");
    TexelCloud cloud;
    const size_t n = buffers.valid_count();
    cloud.positions.reserve(n);
    cloud.normals.reserve(n);
    cloud.colors.reserve(n);
    cloud.painted.reserve(n);
    cloud.texel_index.reserve(n);
    for (int row = 0; row < buffers.height; ++row) {
        for (int col = 0; col < buffers.width; ++col) {
            if (!buffers.valid_mask.at(row, col)) continue;
            cloud.positions.push_back(buffers.position_at(row, col));
            cloud.normals.push_back(buffers.normal_at(row, col));
            const bool is_painted = texture.painted.at(row, col) != 0;
            cloud.painted.push_back(is_painted ? 1 : 0);
            cloud.colors.push_back(is_painted ? texture.at(row, col) : Color{});
            cloud.texel_index.emplace_back(row, col);
        }
    }
    return cloud;
}

void texture_from_cloud(const TexelCloud& cloud, UvTexture& texture) {
    if (!cloud.fully_painted()) {
        throw Error(ErrorCode::UnpaintedPoints,
                    "texture_from_cloud requires a fully painted cloud");
    }
    for (size_t i = 0; i < cloud.size(); ++i) {
        const auto [row, col] = cloud.texel_index[i];
        if (row < 0 || row >= texture.height || col < 0 || col >= texture.width) {
            throw Error(ErrorCode::InvalidArgument, "cloud texel index out of texture bounds");
        }
        texture.at(row, col) = cloud.colors[i];
        texture.painted.at(row, col) = texture.valid.at(row, col);
    }
}

double mean_texel_edge_length(const GeometryBuffers& buffers) {
    double sum = 0.0;
    size_t count = 0;
    for (int row = 0; row < buffers.height; ++row) {
        for (int col = 0; col < buffers.width; ++col) {
            if (!buffers.valid_mask.at(row, col)) continue;
            if (col + 1 < buffers.width && buffers.valid_mask.at(row, col + 1)) {
                sum += distance(buffers.position_at(row, col), buffers.position_at(row, col + 1));
                ++count;
            }
            if (row + 1 < buffers.height && buffers.valid_mask.at(row + 1, col)) {
                sum += distance(buffers.position_at(row, col), buffers.position_at(row + 1, col));
                ++count;
            }
        }
    }
    return count > 0 ? sum / count : 0.0;
}

void dump_cloud_text(const std::string& path, const TexelCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot open cloud dump file: " + path);
    out.precision(8);
    for (size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.positions[i];
        const Vec3& n = cloud.normals[i];
        const Color& c = cloud.colors[i];
        out << p.x << " " << p.y << " " << p.z << " " << n.x << " " << n.y << " " << n.z
            << " " << c.r << " " << c.g << " " << c.b << " " << int(cloud.painted[i]) << "\n";
    }
}

}  // namespace texweave
