// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "texweave/camera.hpp"
#include "texweave/mesh.hpp"
#include "texweave/project.hpp"
#include "texweave/seam.hpp"

namespace texweave {

struct PipelineConfig {
    int texture_resolution = 1024;
    int final_resolution = 2048;
    int upscale_factor = 2;

    int n_views = 8;
    double view_elevation = 30.0;
    double view_radius = 2.2;
    double view_fov_y = 45.0;
    int view_resolution = 512;

    double min_cos = 0.2;
    double occlusion_delta = 0.0;  // 0 = auto from scene diameter / depth res
    bool use_occlusion = true;

    int k_inpaint = 8;
    int max_rounds = 64;
    bool normal_gating = true;

    int seam_band_radius = 2;      // at 2K; scaled proportionally elsewhere
    int k_seam = 8;
    bool seam_use_robust_map = true;

    int dilation_radius = 3;       // Lanczos-3 support
    uint32_t seed = 0;
    double jitter = 0.0;           // per-view brightness jitter for synth views
    int threads = 0;               // 0 = hardware concurrency
    int metrics_stride = 0;        // 0 = auto
    int held_out_views = 4;
    double held_out_elevation = 15.0;

    // final_resolution must equal texture_resolution * upscale_factor and all
    // counts must be positive.
    void validate() const;

    double occlusion_delta_or_default() const;
    int seam_band_radius_for(int resolution) const;

    void set(const std::string& key, const std::string& value);
    static PipelineConfig from_file(const std::string& path);
    std::string to_json() const;
};

// Renders geometry from each camera and replaces hit-pixel colors with a
// procedural field of the surface position, optionally adding a deterministic
// per-view brightness offset in [-jitter, jitter]. Stands in for an external
// multi-view image source.
ViewSet synth_views(const TriangleMesh& mesh, const std::vector<Camera>& cameras,
                    const std::string& field_id, uint32_t seed, double jitter = 0.0);

// Attaches geometry renders to externally loaded view images.
ViewSet views_from_images(const TriangleMesh& mesh, const std::vector<Camera>& cameras,
                          std::vector<RgbImage> images);

struct BakeResult {
    UvTexture texture;  // the incomplete fused texture
    GeometryBuffers buffers;
    OcclusionReport occlusion;
};

// rasterize_uv + per-view occlusion-limited inverse projection + fusion.
BakeResult bake_views(const TriangleMesh& mesh, const ViewSet& views,
                      const PipelineConfig& config,
                      FuseMode mode = FuseMode::WeightedAverage);

// Fills every unpainted valid texel by 3D color propagation; buffers must
// match the texture resolution.
UvTexture inpaint_texture(const UvTexture& texture, const GeometryBuffers& buffers,
                          const PipelineConfig& config);

// Chart-aware dilation then Lanczos upscaling per config.
UvTexture upscale_texture(const UvTexture& texture, const PipelineConfig& config);

struct SmoothResult {
    UvTexture texture;
    double seam_energy_before = 0.0;
    double seam_energy_after = 0.0;
    size_t seam_texels = 0;
    size_t chart_count = 0;
};

// Seam detection + 3D-aware smoothing on the texel cloud at `texture`
// resolution.
SmoothResult smooth_seams(const TriangleMesh& mesh, const UvTexture& texture,
                          const GeometryBuffers& buffers, const PipelineConfig& config);

struct PipelineResult {
    UvTexture fused;     // T_i at texture_resolution
    UvTexture complete;  // T_c at texture_resolution
    UvTexture upscaled;  // T_up at final_resolution
    UvTexture final;     // T at final_resolution

    double coverage_after_fusion = 0.0;
    double coverage_after_inpaint = 0.0;
    double seam_energy_before = 0.0;
    double seam_energy_after = 0.0;
    double consistency_mean = 0.0;
    size_t occlusion_excluded = 0;
    size_t chart_count = 0;
    int inpaint_rounds = 0;
    std::string config_echo;  // the configuration the run actually used

    // Flat metrics report with the configuration embedded, for
    // reproducibility.
    std::string report_json() const;
};

// The full flow: bake -> inpaint -> dilate+upscale -> seam smoothing ->
// metrics, all per config. The mesh must already be normalized.
PipelineResult run_pipeline(const TriangleMesh& mesh, const ViewSet& views,
                            const PipelineConfig& config,
                            const std::string& dump_dir = "");

}  // namespace texweave
