// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "texweave/camera.hpp"
#include "texweave/image.hpp"
#include "texweave/raster.hpp"

namespace texweave {

// Cameras with their input images and geometry renders, one triple per view.
struct ViewSet {
    std::vector<Camera> cameras;
    std::vector<RgbImage> images;
    std::vector<ViewRender> renders;

    size_t size() const { return cameras.size(); }
    void validate() const;  // lengths match, image sizes match cameras
};

// Per-texel visibility for one view. Unobserved covers texels outside the
// frustum or projecting onto a miss pixel; occluded means another surface is
// strictly nearer than the texel (beyond delta).
enum class TexelVisibility : uint8_t {
    Unobserved = 0,
    Visible = 1,
    Occluded = 2,
};

struct OcclusionMask {
    Grid<uint8_t> state;  // TexelVisibility values
    size_t occluded = 0;
    size_t unobserved = 0;
    size_t candidates = 0;  // valid texels

    TexelVisibility at(int row, int col) const {
        return static_cast<TexelVisibility>(state.at(row, col));
    }
};

// Sensible delta when none is configured: twice the scene diameter divided by
// the depth-image resolution, tying the tolerance to depth quantization.
double default_occlusion_delta(double scene_diameter, int depth_resolution);

// Depth-compare visibility: a valid texel is occluded iff it projects inside
// the image onto a hit pixel whose rendered depth is more than delta nearer
// than the texel's own distance.
OcclusionMask detect_occlusion(const GeometryBuffers& buffers, const Camera& camera,
                               const ViewRender& depth_render, double delta);

// One view reprojected into UV space: bilinear color samples plus the cosine
// weight, zero wherever the view does not (reliably) observe the texel.
struct PerViewUvLayer {
    int width = 0;
    int height = 0;
    std::vector<Color> color;
    std::vector<float> weight;
    size_t backfacing = 0;  // texels dropped by the min_cos threshold

    float weight_at(int row, int col) const {
        return weight[static_cast<size_t>(row) * width + col];
    }
};

PerViewUvLayer inverse_project(const RgbImage& image, const Camera& camera,
                               const GeometryBuffers& buffers,
                               const OcclusionMask& occlusion, double min_cos);

enum class FuseMode {
    WeightedAverage,  // cosine-weighted convex combination
    BestView,         // winner-takes-all, highest weight wins
};

// Fuses per-view layers into one texture. Weighted sums are normalized by the
// total weight so the result is a convex combination of the contributing
// views; raw weight sums land in weight_sum for diagnostics.
UvTexture fuse_layers(const std::vector<PerViewUvLayer>& layers, const Mask& valid_mask,
                      FuseMode mode = FuseMode::WeightedAverage,
                      Grid<float>* weight_sum = nullptr);

struct OcclusionReport {
    size_t candidates = 0;
    std::vector<size_t> occluded;    // per view
    std::vector<size_t> unobserved;  // per view
    std::vector<size_t> backfacing;  // per view
};

// inverse_project for every view, then fuse_layers.
UvTexture project_and_fuse(const ViewSet& views, const GeometryBuffers& buffers,
                           double min_cos, double delta, FuseMode mode,
                           OcclusionReport* report = nullptr, bool use_occlusion = true);

struct RoundtripReport {
    std::vector<double> per_view_mean_error;  // over reliably observed pixels
    double overall_mean_error = 0.0;
};

// Projects, fuses, re-renders each view with the fused texture, and reports
// the mean absolute difference against the input images on pixels observed
// with cosine above min_cos. The residual measures cross-view inconsistency.
std::pair<UvTexture, RoundtripReport> sync_roundtrip(const TriangleMesh& mesh,
                                                     const ViewSet& views,
                                                     const GeometryBuffers& buffers,
                                                     double min_cos, double delta);

}  // namespace texweave
