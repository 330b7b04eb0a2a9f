// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "texweave/camera.hpp"
#include "texweave/mesh.hpp"
#include "texweave/raster.hpp"

namespace texweave {

// Painted fraction of the valid region; 1.0 for an empty valid mask.
double coverage(const UvTexture& texture);

struct RayHit {
    double distance = 0.0;
    int face = -1;
};

// Exact nearest ray-triangle intersection by exhaustive face iteration.
// Shared-edge ties resolve to the smallest face index. Intentionally simple:
// this is the geometric oracle the fast paths are checked against.
std::optional<RayHit> raycast_oracle(const TriangleMesh& mesh, const Vec3& origin,
                                     const Vec3& direction);

struct ConsistencyReport {
    // Mean per-channel color disagreement per camera pair (a < b order).
    std::vector<double> pair_mean;
    std::vector<std::pair<int, int>> pairs;
    double overall_mean = 0.0;
    size_t samples = 0;
};

// Renders the texture from each camera and compares colors across every
// camera pair at surface points visible in both (mutual visibility decided by
// the ray-cast oracle at texel-sample granularity). stride subsamples the
// texel grid; 0 picks a stride that keeps the oracle workload desk-scale.
ConsistencyReport cross_view_consistency(const TriangleMesh& mesh, const UvTexture& texture,
                                         const std::vector<Camera>& cameras,
                                         const GeometryBuffers& buffers, int stride = 0);

// Per-camera textures (one per camera, e.g. independent single-view bakes):
// measures how much "what view a shows" disagrees with "what view b shows".
// With the same texture for every camera this reduces to the overload above.
ConsistencyReport cross_view_consistency(const TriangleMesh& mesh,
                                         const std::vector<const UvTexture*>& textures,
                                         const std::vector<Camera>& cameras,
                                         const GeometryBuffers& buffers, int stride = 0);

}  // namespace texweave
