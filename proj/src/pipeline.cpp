// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "texweave/cloud.hpp"
#include "texweave/enhance.hpp"
#include "texweave/error.hpp"
#include "texweave/fields.hpp"
#include "texweave/image_io.hpp"
#include "texweave/inpaint.hpp"
#include "texweave/metrics.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

namespace fs = std::filesystem;
using nlohmann::json;

void PipelineConfig::validate() const {
    if (texture_resolution < 16 || final_resolution < 16) {
        throw Error(ErrorCode::InvalidArgument, "texture resolutions must be >= 16");
    }
    if (upscale_factor < 1) {
        throw Error(ErrorCode::InvalidArgument, "upscale factor must be >= 1");
    }
    if (final_resolution != texture_resolution * upscale_factor) {
        throw Error(ErrorCode::UpscalerMismatch,
                    "final_resolution must equal texture_resolution * upscale_factor");
    }
    if (n_views < 1 || view_resolution < 1 || k_inpaint < 1 || k_seam < 1 ||
        seam_band_radius < 1 || dilation_radius < 0 || max_rounds < 0 || held_out_views < 0) {
        throw Error(ErrorCode::InvalidArgument, "pipeline counts must be positive");
    }
}

double PipelineConfig::occlusion_delta_or_default() const {
    if (occlusion_delta > 0.0) return occlusion_delta;
    // Normalized meshes fit in a radius-0.9 sphere.
    return default_occlusion_delta(1.8, view_resolution);
}

int PipelineConfig::seam_band_radius_for(int resolution) const {
    const int scaled = static_cast<int>(
        std::lround(seam_band_radius * static_cast<double>(resolution) / 2048.0));
    return std::max(1, scaled);
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
    auto as_int = [&]() { return std::stoi(value); };
    auto as_double = [&]() { return std::stod(value); };
    auto as_bool = [&]() {
        if (value == "true" || value == "1" || value == "on") return true;
        if (value == "false" || value == "0" || value == "off") return false;
        throw Error(ErrorCode::Parse, "bad boolean config value: " + value);
    };
    try {
        if (key == "texture_resolution") texture_resolution = as_int();
        else if (key == "final_resolution") final_resolution = as_int();
        else if (key == "upscale_factor") upscale_factor = as_int();
        else if (key == "n_views") n_views = as_int();
        else if (key == "view_elevation") view_elevation = as_double();
        else if (key == "view_radius") view_radius = as_double();
        else if (key == "view_fov_y") view_fov_y = as_double();
        else if (key == "view_resolution") view_resolution = as_int();
        else if (key == "min_cos") min_cos = as_double();
        else if (key == "occlusion_delta") occlusion_delta = as_double();
        else if (key == "use_occlusion") use_occlusion = as_bool();
        else if (key == "k_inpaint") k_inpaint = as_int();
        else if (key == "max_rounds") max_rounds = as_int();
        else if (key == "normal_gating") normal_gating = as_bool();
        else if (key == "seam_band_radius") seam_band_radius = as_int();
        else if (key == "k_seam") k_seam = as_int();
        else if (key == "seam_use_robust_map") seam_use_robust_map = as_bool();
        else if (key == "dilation_radius") dilation_radius = as_int();
        else if (key == "seed") seed = static_cast<uint32_t>(std::stoul(value));
        else if (key == "jitter") jitter = as_double();
        else if (key == "threads") threads = as_int();
        else if (key == "metrics_stride") metrics_stride = as_int();
        else if (key == "held_out_views") held_out_views = as_int();
        else if (key == "held_out_elevation") held_out_elevation = as_double();
        else throw Error(ErrorCode::Parse, "unknown config key: " + key);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "bad value for config key " + key + ": " + value);
    }
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::Io, "cannot open config file: " + path);
    PipelineConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::istringstream check(line);
            std::string token;
            if (check >> token) {
                throw Error(ErrorCode::Parse,
                            "config line " + std::to_string(line_no) + ": expected key = value");
            }
            continue;
        }
        auto trim = [](std::string s) {
            const auto begin = s.find_first_not_of(" \t\r");
            const auto end = s.find_last_not_of(" \t\r");
            return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw Error(ErrorCode::Parse,
                        "config line " + std::to_string(line_no) + ": empty key or value");
        }
        config.set(key, value);
    }
    return config;
}

std::string PipelineConfig::to_json() const {
    json j = {
        {"texture_resolution", texture_resolution},
        {"final_resolution", final_resolution},
        {"upscale_factor", upscale_factor},
        {"n_views", n_views},
        {"view_elevation", view_elevation},
        {"view_radius", view_radius},
        {"view_fov_y", view_fov_y},
        {"view_resolution", view_resolution},
        {"min_cos", min_cos},
        {"occlusion_delta", occlusion_delta_or_default()},
        {"use_occlusion", use_occlusion},
        {"k_inpaint", k_inpaint},
        {"max_rounds", max_rounds},
        {"normal_gating", normal_gating},
        {"seam_band_radius", seam_band_radius},
        {"k_seam", k_seam},
        {"seam_use_robust_map", seam_use_robust_map},
        {"dilation_radius", dilation_radius},
        {"seed", seed},
        {"jitter", jitter},
        {"threads", threads},
        {"metrics_stride", metrics_stride},
        {"held_out_views", held_out_views},
        {"held_out_elevation", held_out_elevation},
    };
    return j.dump(2);
}

ViewSet synth_views(const TriangleMesh& mesh, const std::vector<Camera>& cameras,
                    const std::string& field_id, uint32_t seed, double jitter) {
    const ColorField field = make_color_field(field_id);
    ViewSet views;
    views.cameras = cameras;
    views.images.reserve(cameras.size());
    views.renders.reserve(cameras.size());

    // One brightness offset per view, deterministic in (seed, view index).
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-jitter, jitter);
    std::vector<double> offsets(cameras.size(), 0.0);
    for (double& o : offsets) o = jitter > 0.0 ? dist(rng) : 0.0;

    for (size_t v = 0; v < cameras.size(); ++v) {
        const Camera& camera = cameras[v];
        ViewRender render = render_view(mesh, camera, camera.width(), camera.height());
        RgbImage image(camera.width(), camera.height());
        const double offset = offsets[v];
        for (int row = 0; row < image.height; ++row) {
            for (int col = 0; col < image.width; ++col) {
                if (!render.hit_mask.at(row, col)) continue;
                const Vec3 dir = camera.pixel_ray(col + 0.5, row + 0.5);
                const Vec3 hit = camera.position() + dir * render.depth_map.at(row, col);
                Color c = field(hit);
                if (offset != 0.0) {
                    c.r = std::clamp(c.r + static_cast<float>(offset), 0.0f, 1.0f);
                    c.g = std::clamp(c.g + static_cast<float>(offset), 0.0f, 1.0f);
                    c.b = std::clamp(c.b + static_cast<float>(offset), 0.0f, 1.0f);
                }
                image.at(row, col) = c;
            }
        }
        views.images.push_back(std::move(image));
        views.renders.push_back(std::move(render));
    }
    return views;
}

ViewSet views_from_images(const TriangleMesh& mesh, const std::vector<Camera>& cameras,
                          std::vector<RgbImage> images) {
    if (cameras.size() != images.size()) {
        throw Error(ErrorCode::InvalidArgument, "camera and image counts differ");
    }
    ViewSet views;
    views.cameras = cameras;
    views.images = std::move(images);
    views.renders.reserve(cameras.size());
    for (const Camera& camera : cameras) {
        views.renders.push_back(render_view(mesh, camera, camera.width(), camera.height()));
    }
    views.validate();
    return views;
}

BakeResult bake_views(const TriangleMesh& mesh, const ViewSet& views,
                      const PipelineConfig& config, FuseMode mode) {
    BakeResult result;
    result.buffers = rasterize_uv(mesh, config.texture_resolution, config.texture_resolution);
    result.texture = project_and_fuse(views, result.buffers, config.min_cos,
                                      config.occlusion_delta_or_default(), mode,
                                      &result.occlusion, config.use_occlusion);
    return result;
}

UvTexture inpaint_texture(const UvTexture& texture, const GeometryBuffers& buffers,
                          const PipelineConfig& config) {
    TexelCloud cloud = cloud_from_texture(texture, buffers);
    InpaintOptions options;
    options.k = config.k_inpaint;
    options.max_rounds = config.max_rounds;
    options.normal_gating = config.normal_gating;
    inpaint_cloud(cloud, options);
    UvTexture out = texture;
    texture_from_cloud(cloud, out);
    return out;
}

UvTexture upscale_texture(const UvTexture& texture, const PipelineConfig& config) {
    const UvTexture dilated = dilate(texture, config.dilation_radius);
    const LanczosUpscaler upscaler(config.upscale_factor);
    return upscale(dilated, upscaler);
}

SmoothResult smooth_seams(const TriangleMesh& mesh, const UvTexture& texture,
                          const GeometryBuffers& buffers, const PipelineConfig& config) {
    (void)mesh;
    SmoothResult result;
    const int band_radius = config.seam_band_radius_for(texture.width);
    const SeamMask seam = detect_seams(buffers.valid_mask, band_radius);
    result.seam_texels = seam.seam_texels;
    result.chart_count = seam.chart_count;

    Grid<int32_t> chart_labels;
    label_components(buffers.valid_mask, chart_labels);
    const double pair_radius = 3.0 * mean_texel_edge_length(buffers);

    TexelCloud cloud = cloud_from_texture(texture, buffers);
    result.seam_energy_before = seam_energy(cloud, seam, chart_labels, pair_radius);

    SeamSmoothOptions options;
    options.k = scaled_seam_k(config.k_seam, band_radius);
    options.use_robust_map = config.seam_use_robust_map;
    smooth_seam_points(cloud, seam, options);

    result.seam_energy_after = seam_energy(cloud, seam, chart_labels, pair_radius);
    result.texture = texture;
    texture_from_cloud(cloud, result.texture);
    return result;
}

std::string PipelineResult::report_json() const {
    json j = {
        {"coverage", coverage_after_inpaint},
        {"coverage_after_fusion", coverage_after_fusion},
        {"seam_energy_before", seam_energy_before},
        {"seam_energy_after", seam_energy_after},
        {"consistency_mean", consistency_mean},
        {"occlusion_excluded", occlusion_excluded},
        {"chart_count", chart_count},
        {"inpaint_rounds", inpaint_rounds},
    };
    if (!config_echo.empty()) {
        j["config"] = json::parse(config_echo);
    }
    return j.dump(2);
}

namespace {

void dump_texture(const std::string& dir, const std::string& name, const UvTexture& texture) {
    if (dir.empty()) return;
    fs::create_directories(dir);
    write_texture_png((fs::path(dir) / (name + ".png")).string(), texture);
    write_mask_png((fs::path(dir) / (name + "_valid.png")).string(), texture.valid);
    write_mask_png((fs::path(dir) / (name + "_painted.png")).string(), texture.painted);
}

}  // namespace

PipelineResult run_pipeline(const TriangleMesh& mesh, const ViewSet& views,
                            const PipelineConfig& config, const std::string& dump_dir) {
    config.validate();
    if (config.threads > 0) set_max_threads(config.threads);

    PipelineResult result;
    result.config_echo = config.to_json();

    // Stage: occlusion-aware fusion of the views into the UV texture.
    BakeResult bake = bake_views(mesh, views, config);
    for (size_t occluded : bake.occlusion.occluded) result.occlusion_excluded += occluded;
    result.coverage_after_fusion = coverage(bake.texture);
    result.fused = std::move(bake.texture);
    dump_texture(dump_dir, "t_fused", result.fused);

    // Stage: spatial 3D inpainting to full coverage.
    TexelCloud cloud = cloud_from_texture(result.fused, bake.buffers);
    InpaintOptions inpaint_options;
    inpaint_options.k = config.k_inpaint;
    inpaint_options.max_rounds = config.max_rounds;
    inpaint_options.normal_gating = config.normal_gating;
    const InpaintReport inpaint_report = inpaint_cloud(cloud, inpaint_options);
    result.inpaint_rounds = inpaint_report.rounds;
    result.complete = result.fused;
    texture_from_cloud(cloud, result.complete);
    result.coverage_after_inpaint = coverage(result.complete);
    dump_texture(dump_dir, "t_complete", result.complete);
    if (!dump_dir.empty()) {
        dump_cloud_text((fs::path(dump_dir) / "t_complete_cloud.txt").string(), cloud);
    }

    // Stage: gutter dilation + upscaling to the final resolution.
    result.upscaled = upscale_texture(result.complete, config);
    dump_texture(dump_dir, "t_upscaled", result.upscaled);

    // Stage: seam repair at the final resolution. The texture is re-bound to
    // a fresh rasterization so texels map exactly onto mesh geometry; the
    // dilated gutter guarantees color everywhere the atlas lands.
    GeometryBuffers final_buffers =
        rasterize_uv(mesh, config.final_resolution, config.final_resolution);
    UvTexture rebound = result.upscaled;
    rebound.valid = final_buffers.valid_mask;
    for (size_t i = 0; i < rebound.painted.size(); ++i) {
        rebound.painted[i] = rebound.valid[i];
    }
    SmoothResult smooth = smooth_seams(mesh, rebound, final_buffers, config);
    result.seam_energy_before = smooth.seam_energy_before;
    result.seam_energy_after = smooth.seam_energy_after;
    result.chart_count = smooth.chart_count;
    result.final = std::move(smooth.texture);
    dump_texture(dump_dir, "t_final", result.final);
    if (!dump_dir.empty()) {
        const SeamMask seam = detect_seams(final_buffers.valid_mask,
                                           config.seam_band_radius_for(result.final.width));
        write_mask_png((fs::path(dump_dir) / "t_seam_mask.png").string(), seam.mask);
    }

    // Held-out consistency metric: evenly spaced azimuths at one fixed
    // elevation, offset so none coincides with an input view.
    if (config.held_out_views >= 2) {
        std::vector<Camera> held_out;
        held_out.reserve(config.held_out_views);
        for (int i = 0; i < config.held_out_views; ++i) {
            held_out.emplace_back(360.0 * i / config.held_out_views + 22.5,
                                  config.held_out_elevation, config.view_radius,
                                  config.view_fov_y, config.view_resolution,
                                  config.view_resolution);
        }
        const ConsistencyReport consistency = cross_view_consistency(
            mesh, result.final, held_out, final_buffers, config.metrics_stride);
        result.consistency_mean = consistency.overall_mean;
    }

    return result;
}

}  // namespace texweave
