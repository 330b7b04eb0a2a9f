// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave.h"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "texweave/cloud.hpp"
#include "texweave/enhance.hpp"
#include "texweave/error.hpp"
#include "texweave/image_io.hpp"
#include "texweave/inpaint.hpp"
#include "texweave/manifest.hpp"
#include "texweave/mesh.hpp"
#include "texweave/metrics.hpp"
#include "texweave/parallel.hpp"
#include "texweave/pipeline.hpp"
#include "texweave/seam.hpp"

namespace fs = std::filesystem;

// Handle payloads. The structs are opaque on the C side.
struct tw_mesh {
    texweave::TriangleMesh mesh;
};

struct tw_texture {
    texweave::UvTexture texture;
};

struct tw_viewset {
    texweave::ViewSet views;
};

struct tw_config {
    texweave::PipelineConfig config;
};

namespace {

thread_local std::string g_last_error;

tw_status fail(tw_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

tw_status status_for(const texweave::Error& e) {
    using texweave::ErrorCode;
    switch (e.code()) {
        case ErrorCode::Io:
            return TW_STATUS_IO;
        case ErrorCode::Parse:
        case ErrorCode::MissingUv:
        case ErrorCode::UnknownField:
            return TW_STATUS_PARSE;
        case ErrorCode::InvalidArgument:
        case ErrorCode::Domain:
        case ErrorCode::ResolutionTooSmall:
            return TW_STATUS_INVALID_ARGUMENT;
        default:
            return TW_STATUS_PRECONDITION;
    }
}

// Runs fn, translating exceptions into status codes + tw_last_error.
template <typename Fn>
tw_status guarded(Fn&& fn) {
    try {
        fn();
        return TW_STATUS_OK;
    } catch (const texweave::Error& e) {
        return fail(status_for(e),
                    std::string(texweave::error_code_name(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
        return fail(TW_STATUS_INTERNAL, e.what());
    } catch (...) {
        return fail(TW_STATUS_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tw_status require(bool ok, const char* what) {
    if (ok) return TW_STATUS_OK;
    return fail(TW_STATUS_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

// Re-derives the texture's masks from a rasterization at its own resolution.
// Painted texels stay painted only where the atlas actually lands.
texweave::UvTexture rebind_to_mesh(const texweave::UvTexture& texture,
                                   const texweave::GeometryBuffers& buffers) {
    texweave::UvTexture out = texture;
    out.valid = buffers.valid_mask;
    for (size_t i = 0; i < out.painted.size(); ++i) {
        out.painted[i] = out.valid[i] && texture.painted[i] ? 1 : 0;
    }
    return out;
}

}  // namespace

extern "C" {

const char* tw_last_error(void) { return g_last_error.c_str(); }

const char* tw_version(void) { return "0.1.0"; }

void tw_set_threads(int threads) { texweave::set_max_threads(threads); }

void tw_string_free(char* s) { delete[] s; }

tw_config* tw_config_create(void) { return new tw_config(); }

void tw_config_destroy(tw_config* config) { delete config; }

tw_status tw_config_set(tw_config* config, const char* key, const char* value) {
    if (auto s = require(config && key && value, "tw_config_set")) return s;
    return guarded([&] { config->config.set(key, value); });
}

tw_status tw_config_load(tw_config* config, const char* path) {
    if (auto s = require(config && path, "tw_config_load")) return s;
    return guarded([&] { config->config = texweave::PipelineConfig::from_file(path); });
}

tw_status tw_config_to_json(const tw_config* config, char** json_out) {
    if (auto s = require(config && json_out, "tw_config_to_json")) return s;
    return guarded([&] { *json_out = copy_string(config->config.to_json()); });
}

tw_status tw_mesh_load(const char* path, int normalize, tw_mesh** mesh_out) {
    if (auto s = require(path && mesh_out, "tw_mesh_load")) return s;
    return guarded([&] {
        auto handle = std::make_unique<tw_mesh>();
        handle->mesh = texweave::load_mesh(path);
        if (normalize) handle->mesh = texweave::normalize_mesh(handle->mesh);
        *mesh_out = handle.release();
    });
}

void tw_mesh_destroy(tw_mesh* mesh) { delete mesh; }

tw_status tw_mesh_get_stats(const tw_mesh* mesh, tw_mesh_stats* stats_out) {
    if (auto s = require(mesh && stats_out, "tw_mesh_get_stats")) return s;
    return guarded([&] {
        const texweave::MeshStats stats = texweave::mesh_stats(mesh->mesh);
        stats_out->face_count = stats.face_count;
        stats_out->vertex_count = stats.vertex_count;
        stats_out->chart_count = stats.chart_count;
        stats_out->center[0] = stats.bounding_sphere.center.x;
        stats_out->center[1] = stats.bounding_sphere.center.y;
        stats_out->center[2] = stats.bounding_sphere.center.z;
        stats_out->radius = stats.bounding_sphere.radius;
    });
}

tw_status tw_texture_load(const char* color_png, const char* valid_mask_png,
                          const char* painted_mask_png, tw_texture** texture_out) {
    if (auto s = require(color_png && texture_out, "tw_texture_load")) return s;
    return guarded([&] {
        const texweave::RgbImage image = texweave::read_rgb_png(color_png);
        auto handle = std::make_unique<tw_texture>();
        handle->texture = texweave::UvTexture(image.width, image.height);
        handle->texture.pixels = image.pixels;
        if (valid_mask_png) {
            texweave::Mask mask = texweave::read_mask_png(valid_mask_png);
            texweave::require_same_resolution(mask.width(), mask.height(), image.width,
                                              image.height, "tw_texture_load valid mask");
            handle->texture.valid = std::move(mask);
        } else {
            handle->texture.valid = texweave::Mask(image.width, image.height, 1);
        }
        if (painted_mask_png) {
            texweave::Mask mask = texweave::read_mask_png(painted_mask_png);
            texweave::require_same_resolution(mask.width(), mask.height(), image.width,
                                              image.height, "tw_texture_load painted mask");
            handle->texture.painted = std::move(mask);
        } else {
            handle->texture.painted = handle->texture.valid;
        }
        *texture_out = handle.release();
    });
}

tw_status tw_texture_save(const tw_texture* texture, const char* color_png,
                          const char* valid_mask_png, const char* painted_mask_png) {
    if (auto s = require(texture != nullptr, "tw_texture_save")) return s;
    return guarded([&] {
        if (color_png) texweave::write_texture_png(color_png, texture->texture);
        if (valid_mask_png) texweave::write_mask_png(valid_mask_png, texture->texture.valid);
        if (painted_mask_png) {
            texweave::write_mask_png(painted_mask_png, texture->texture.painted);
        }
    });
}

tw_status tw_texture_get_size(const tw_texture* texture, int* width_out, int* height_out) {
    if (auto s = require(texture && width_out && height_out, "tw_texture_get_size")) return s;
    *width_out = texture->texture.width;
    *height_out = texture->texture.height;
    return TW_STATUS_OK;
}

tw_status tw_texture_coverage(const tw_texture* texture, double* coverage_out) {
    if (auto s = require(texture && coverage_out, "tw_texture_coverage")) return s;
    return guarded([&] { *coverage_out = texweave::coverage(texture->texture); });
}

void tw_texture_destroy(tw_texture* texture) { delete texture; }

tw_status tw_views_load(const tw_mesh* mesh, const char* manifest_path,
                        tw_viewset** views_out) {
    if (auto s = require(mesh && manifest_path && views_out, "tw_views_load")) return s;
    return guarded([&] {
        texweave::LoadedViews loaded = texweave::load_views(manifest_path);
        auto handle = std::make_unique<tw_viewset>();
        handle->views = texweave::views_from_images(mesh->mesh, loaded.cameras,
                                                    std::move(loaded.images));
        *views_out = handle.release();
    });
}

tw_status tw_views_synth(const tw_mesh* mesh, const tw_config* config, const char* field,
                         tw_viewset** views_out) {
    if (auto s = require(mesh && config && field && views_out, "tw_views_synth")) return s;
    return guarded([&] {
        const texweave::PipelineConfig& c = config->config;
        const std::vector<texweave::Camera> cameras = texweave::default_view_ring(
            c.n_views, c.view_elevation, c.view_radius, c.view_fov_y, c.view_resolution,
            c.view_resolution);
        auto handle = std::make_unique<tw_viewset>();
        handle->views = texweave::synth_views(mesh->mesh, cameras, field, c.seed, c.jitter);
        *views_out = handle.release();
    });
}

tw_status tw_views_save(const tw_viewset* views, const char* dir, int write_depth) {
    if (auto s = require(views && dir, "tw_views_save")) return s;
    return guarded([&] {
        fs::create_directories(dir);
        texweave::ViewManifest manifest;
        char name[32];
        for (size_t v = 0; v < views->views.size(); ++v) {
            const texweave::Camera& camera = views->views.cameras[v];
            std::snprintf(name, sizeof(name), "v%03zu.png", v);
            texweave::write_rgb_png((fs::path(dir) / name).string(), views->views.images[v]);
            texweave::ViewManifestEntry entry;
            entry.image = name;
            entry.azimuth = camera.azimuth_deg();
            entry.elevation = camera.elevation_deg();
            entry.radius = camera.radius();
            entry.fov_y = camera.fov_y_deg();
            entry.width = camera.width();
            entry.height = camera.height();
            if (write_depth) {
                std::snprintf(name, sizeof(name), "d%03zu.png", v);
                const texweave::ViewRender& render = views->views.renders[v];
                const double depth_max = render.max_finite_depth();
                texweave::write_depth_png((fs::path(dir) / name).string(), render.depth_map,
                                          depth_max > 0.0 ? depth_max : 1.0);
                entry.depth = name;
                entry.depth_max = depth_max;
            }
            manifest.views.push_back(std::move(entry));
        }
        texweave::write_view_manifest((fs::path(dir) / "manifest.json").string(), manifest);
    });
}

tw_status tw_views_count(const tw_viewset* views, int* count_out) {
    if (auto s = require(views && count_out, "tw_views_count")) return s;
    *count_out = static_cast<int>(views->views.size());
    return TW_STATUS_OK;
}

void tw_views_destroy(tw_viewset* views) { delete views; }

tw_status tw_bake(const tw_mesh* mesh, const tw_viewset* views, const tw_config* config,
                  tw_texture** texture_out) {
    if (auto s = require(mesh && views && config && texture_out, "tw_bake")) return s;
    return guarded([&] {
        if (config->config.threads > 0) texweave::set_max_threads(config->config.threads);
        texweave::BakeResult bake =
            texweave::bake_views(mesh->mesh, views->views, config->config);
        auto handle = std::make_unique<tw_texture>();
        handle->texture = std::move(bake.texture);
        *texture_out = handle.release();
    });
}

tw_status tw_inpaint(const tw_mesh* mesh, const tw_texture* texture, const tw_config* config,
                     tw_texture** texture_out) {
    if (auto s = require(mesh && texture && config && texture_out, "tw_inpaint")) return s;
    return guarded([&] {
        if (config->config.threads > 0) texweave::set_max_threads(config->config.threads);
        const texweave::GeometryBuffers buffers = texweave::rasterize_uv(
            mesh->mesh, texture->texture.width, texture->texture.height);
        const texweave::UvTexture bound = rebind_to_mesh(texture->texture, buffers);
        auto handle = std::make_unique<tw_texture>();
        handle->texture = texweave::inpaint_texture(bound, buffers, config->config);
        *texture_out = handle.release();
    });
}

tw_status tw_upscale(const tw_texture* texture, const tw_config* config,
                     tw_texture** texture_out) {
    if (auto s = require(texture && config && texture_out, "tw_upscale")) return s;
    return guarded([&] {
        if (config->config.threads > 0) texweave::set_max_threads(config->config.threads);
        auto handle = std::make_unique<tw_texture>();
        handle->texture = texweave::upscale_texture(texture->texture, config->config);
        *texture_out = handle.release();
    });
}

tw_status tw_smooth(const tw_mesh* mesh, const tw_texture* texture, const tw_config* config,
                    tw_texture** texture_out, double* energy_before, double* energy_after) {
    if (auto s = require(mesh && texture && config && texture_out, "tw_smooth")) return s;
    return guarded([&] {
        if (config->config.threads > 0) texweave::set_max_threads(config->config.threads);
        const texweave::GeometryBuffers buffers = texweave::rasterize_uv(
            mesh->mesh, texture->texture.width, texture->texture.height);
        texweave::UvTexture bound = rebind_to_mesh(texture->texture, buffers);
        // Seam smoothing reads every valid texel; an unpainted but valid
        // texel means the input was not fully baked.
        for (size_t i = 0; i < bound.painted.size(); ++i) {
            bound.painted[i] = bound.valid[i];
        }
        texweave::SmoothResult smooth =
            texweave::smooth_seams(mesh->mesh, bound, buffers, config->config);
        if (energy_before) *energy_before = smooth.seam_energy_before;
        if (energy_after) *energy_after = smooth.seam_energy_after;
        auto handle = std::make_unique<tw_texture>();
        handle->texture = std::move(smooth.texture);
        *texture_out = handle.release();
    });
}

tw_status tw_pipeline(const tw_mesh* mesh, const tw_viewset* views, const tw_config* config,
                      const char* out_dir, const char* dump_dir, char** report_json_out) {
    if (auto s = require(mesh && views && config && out_dir, "tw_pipeline")) return s;
    return guarded([&] {
        const texweave::PipelineResult result = texweave::run_pipeline(
            mesh->mesh, views->views, config->config, dump_dir ? dump_dir : "");
        fs::create_directories(out_dir);
        const fs::path base(out_dir);
        texweave::write_texture_png((base / "texture.png").string(), result.final);
        texweave::write_mask_png((base / "valid_mask.png").string(), result.final.valid);
        texweave::write_texture_png((base / "texture_1k.png").string(), result.complete);
        texweave::write_mask_png((base / "valid_mask_1k.png").string(), result.complete.valid);

        const std::string report = result.report_json();
        std::ofstream report_file(base / "report.json");
        if (!report_file) {
            throw texweave::Error(texweave::ErrorCode::Io, "cannot write report.json");
        }
        report_file << report << "\n";

        std::ofstream config_file(base / "config.json");
        if (config_file) config_file << config->config.to_json() << "\n";

        if (report_json_out) *report_json_out = copy_string(report);
    });
}

tw_status tw_metrics(const tw_mesh* mesh, const tw_texture* texture, const tw_config* config,
                     char** report_json_out) {
    if (auto s = require(mesh && texture && config && report_json_out, "tw_metrics")) return s;
    return guarded([&] {
        const texweave::PipelineConfig& c = config->config;
        if (c.threads > 0) texweave::set_max_threads(c.threads);
        const texweave::GeometryBuffers buffers = texweave::rasterize_uv(
            mesh->mesh, texture->texture.width, texture->texture.height);
        const texweave::UvTexture bound = rebind_to_mesh(texture->texture, buffers);

        // Coverage reflects the texture as given; the seam/consistency parts
        // treat every valid texel as colored so they also work on partial
        // bakes.
        texweave::UvTexture full = bound;
        for (size_t i = 0; i < full.painted.size(); ++i) full.painted[i] = full.valid[i];
        const texweave::SmoothResult smooth =
            texweave::smooth_seams(mesh->mesh, full, buffers, c);

        std::vector<texweave::Camera> held_out;
        for (int i = 0; i < std::max(2, c.held_out_views); ++i) {
            held_out.emplace_back(360.0 * i / std::max(2, c.held_out_views) + 22.5,
                                  c.held_out_elevation, c.view_radius, c.view_fov_y,
                                  c.view_resolution, c.view_resolution);
        }
        const texweave::ConsistencyReport consistency = texweave::cross_view_consistency(
            mesh->mesh, full, held_out, buffers, c.metrics_stride);

        nlohmann::json j = {
            {"coverage", texweave::coverage(bound)},
            {"seam_energy_before", smooth.seam_energy_before},
            {"seam_energy_after", smooth.seam_energy_after},
            {"consistency_mean", consistency.overall_mean},
            {"chart_count", smooth.chart_count},
            {"seam_texels", smooth.seam_texels},
        };
        *report_json_out = copy_string(j.dump(2));
    });
}

tw_status tw_render(const tw_mesh* mesh, const tw_texture* texture, double azimuth,
                    double elevation, double radius, double fov_y, int width, int height,
                    const char* color_png, const char* depth_png, const char* normal_png,
                    double* depth_max_out) {
    if (auto s = require(mesh != nullptr, "tw_render")) return s;
    return guarded([&] {
        const texweave::Camera camera(azimuth, elevation, radius, fov_y, width, height);
        const texweave::ViewRender render = texweave::render_view(
            mesh->mesh, camera, width, height, texture ? &texture->texture : nullptr);
        if (color_png) {
            texweave::RgbImage image(width, height);
            if (render.has_color()) image.pixels = render.color_map;
            texweave::write_rgb_png(color_png, image);
        }
        const double depth_max = render.max_finite_depth();
        if (depth_png) {
            texweave::write_depth_png(depth_png, render.depth_map,
                                      depth_max > 0.0 ? depth_max : 1.0);
        }
        if (normal_png) {
            texweave::RgbImage image(width, height);
            for (size_t i = 0; i < render.normal_map.size(); ++i) {
                const texweave::Vec3& n = render.normal_map[i];
                image.pixels[i] = texweave::Color(static_cast<float>(n.x * 0.5 + 0.5),
                                                  static_cast<float>(n.y * 0.5 + 0.5),
                                                  static_cast<float>(n.z * 0.5 + 0.5));
            }
            texweave::write_rgb_png(normal_png, image);
        }
        if (depth_max_out) *depth_max_out = depth_max;
    });
}

}  // extern "C"
