// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared-library C surface end to end, the way an embedding
// application would: no core headers, just texweave.h.

#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "texweave.h"

namespace fs = std::filesystem;

static int failures = 0;

#define CHECK(cond)                                                                        \
    do {                                                                                   \
        if (!(cond)) {                                                                     \
            std::fprintf(stderr, "CHECK failed at %s:%d: %s (last error: %s)\n", __FILE__, \
                         __LINE__, #cond, tw_last_error());                                \
            ++failures;                                                                    \
        }                                                                                  \
    } while (0)

static std::string write_sphere_obj(const fs::path& dir) {
    // Small UV sphere, equirect chart.
    const int segs = 24, rings = 12;
    const double pi = 3.14159265358979323846;
    std::ofstream out(dir / "sphere.obj");
    for (int r = 0; r <= rings; ++r) {
        const double lat = (-80.0 + 160.0 * r / rings) * pi / 180.0;
        for (int s = 0; s <= segs; ++s) {
            const double lon = 2.0 * pi * s / segs;
            out << "v " << std::cos(lat) * std::sin(lon) << " " << std::sin(lat) << " "
                << std::cos(lat) * std::cos(lon) << "\n";
        }
    }
    for (int r = 0; r <= rings; ++r) {
        for (int s = 0; s <= segs; ++s) {
            out << "vt " << 0.02 + 0.96 * s / segs << " " << 0.02 + 0.96 * r / rings << "\n";
        }
    }
    auto vid = [&](int r, int s) { return r * (segs + 1) + s + 1; };
    for (int r = 0; r < rings; ++r) {
        for (int s = 0; s < segs; ++s) {
            const int a = vid(r, s), b = vid(r, s + 1), c = vid(r + 1, s + 1),
                      d = vid(r + 1, s);
            out << "f " << a << "/" << a << " " << b << "/" << b << " " << c << "/" << c
                << "\n";
            out << "f " << a << "/" << a << " " << c << "/" << c << " " << d << "/" << d
                << "\n";
        }
    }
    return (dir / "sphere.obj").string();
}

int main() {
    const fs::path dir = fs::temp_directory_path() / "texweave_capi";
    fs::create_directories(dir);
    const std::string mesh_path = write_sphere_obj(dir);

    CHECK(std::strlen(tw_version()) > 0);

    // Error paths surface through status codes and tw_last_error.
    tw_mesh* missing = nullptr;
    CHECK(tw_mesh_load("/nonexistent/mesh.obj", 1, &missing) == TW_STATUS_IO);
    CHECK(std::strlen(tw_last_error()) > 0);
    CHECK(tw_mesh_load(nullptr, 1, &missing) == TW_STATUS_INVALID_ARGUMENT);

    // Config handling.
    tw_config* config = tw_config_create();
    CHECK(tw_config_set(config, "texture_resolution", "96") == TW_STATUS_OK);
    CHECK(tw_config_set(config, "final_resolution", "192") == TW_STATUS_OK);
    CHECK(tw_config_set(config, "view_resolution", "128") == TW_STATUS_OK);
    CHECK(tw_config_set(config, "n_views", "6") == TW_STATUS_OK);
    CHECK(tw_config_set(config, "held_out_views", "0") == TW_STATUS_OK);
    CHECK(tw_config_set(config, "bogus_key", "1") == TW_STATUS_PARSE);
    char* config_json = nullptr;
    CHECK(tw_config_to_json(config, &config_json) == TW_STATUS_OK);
    CHECK(config_json && std::strstr(config_json, "\"texture_resolution\": 96"));
    tw_string_free(config_json);

    // Mesh loading and stats.
    tw_mesh* mesh = nullptr;
    CHECK(tw_mesh_load(mesh_path.c_str(), 1, &mesh) == TW_STATUS_OK);
    tw_mesh_stats stats{};
    CHECK(tw_mesh_get_stats(mesh, &stats) == TW_STATUS_OK);
    CHECK(stats.face_count == 24 * 12 * 2);
    CHECK(stats.chart_count == 1);
    CHECK(std::fabs(stats.radius - 0.9) < 1e-6);

    // Procedural views + manifest round trip.
    tw_viewset* views = nullptr;
    CHECK(tw_views_synth(mesh, config, "checker", &views) == TW_STATUS_OK);
    int count = 0;
    CHECK(tw_views_count(views, &count) == TW_STATUS_OK);
    CHECK(count == 6);
    const std::string views_dir = (dir / "views").string();
    CHECK(tw_views_save(views, views_dir.c_str(), 1) == TW_STATUS_OK);
    CHECK(fs::exists(fs::path(views_dir) / "manifest.json"));
    CHECK(fs::exists(fs::path(views_dir) / "v000.png"));
    CHECK(fs::exists(fs::path(views_dir) / "d000.png"));

    tw_viewset* loaded = nullptr;
    const std::string manifest = (fs::path(views_dir) / "manifest.json").string();
    CHECK(tw_views_load(mesh, manifest.c_str(), &loaded) == TW_STATUS_OK);
    CHECK(tw_views_count(loaded, &count) == TW_STATUS_OK);
    CHECK(count == 6);

    // Bake from the reloaded views.
    tw_texture* baked = nullptr;
    CHECK(tw_bake(mesh, loaded, config, &baked) == TW_STATUS_OK);
    int w = 0, h = 0;
    CHECK(tw_texture_get_size(baked, &w, &h) == TW_STATUS_OK);
    CHECK(w == 96);
    CHECK(h == 96);
    double cov = 0.0;
    CHECK(tw_texture_coverage(baked, &cov) == TW_STATUS_OK);
    CHECK(cov > 0.5);
    CHECK(cov < 1.0 + 1e-9);

    // Save, reload with masks, inpaint, upscale, smooth.
    const std::string color_png = (dir / "baked.png").string();
    const std::string valid_png = (dir / "baked_valid.png").string();
    const std::string painted_png = (dir / "baked_painted.png").string();
    CHECK(tw_texture_save(baked, color_png.c_str(), valid_png.c_str(), painted_png.c_str()) ==
          TW_STATUS_OK);
    tw_texture* reloaded = nullptr;
    CHECK(tw_texture_load(color_png.c_str(), valid_png.c_str(), painted_png.c_str(),
                          &reloaded) == TW_STATUS_OK);
    double cov2 = 0.0;
    CHECK(tw_texture_coverage(reloaded, &cov2) == TW_STATUS_OK);
    CHECK(std::fabs(cov - cov2) < 0.02);

    tw_texture* inpainted = nullptr;
    CHECK(tw_inpaint(mesh, reloaded, config, &inpainted) == TW_STATUS_OK);
    CHECK(tw_texture_coverage(inpainted, &cov) == TW_STATUS_OK);
    CHECK(cov == 1.0);

    tw_texture* upscaled = nullptr;
    CHECK(tw_upscale(inpainted, config, &upscaled) == TW_STATUS_OK);
    CHECK(tw_texture_get_size(upscaled, &w, &h) == TW_STATUS_OK);
    CHECK(w == 192);
    CHECK(h == 192);

    tw_texture* smoothed = nullptr;
    double before = -1.0, after = -1.0;
    CHECK(tw_smooth(mesh, upscaled, config, &smoothed, &before, &after) == TW_STATUS_OK);
    CHECK(before >= 0.0);
    CHECK(after >= 0.0);

    // Metrics report.
    char* report = nullptr;
    CHECK(tw_config_set(config, "held_out_views", "3") == TW_STATUS_OK);
    CHECK(tw_metrics(mesh, smoothed, config, &report) == TW_STATUS_OK);
    CHECK(report && std::strstr(report, "\"coverage\""));
    CHECK(std::strstr(report, "\"consistency_mean\""));
    tw_string_free(report);

    // Render subcommand surface.
    const std::string render_png = (dir / "render.png").string();
    const std::string depth_png = (dir / "depth.png").string();
    const std::string normal_png = (dir / "normal.png").string();
    double depth_max = 0.0;
    CHECK(tw_render(mesh, smoothed, 30.0, 15.0, 2.2, 45.0, 96, 96, render_png.c_str(),
                    depth_png.c_str(), normal_png.c_str(), &depth_max) == TW_STATUS_OK);
    CHECK(depth_max > 1.0);
    CHECK(fs::exists(render_png));
    CHECK(fs::exists(depth_png));
    CHECK(fs::exists(normal_png));

    // Full pipeline through the C surface.
    char* pipeline_report = nullptr;
    const std::string out_dir = (dir / "out").string();
    CHECK(tw_config_set(config, "held_out_views", "0") == TW_STATUS_OK);
    CHECK(tw_pipeline(mesh, views, config, out_dir.c_str(), nullptr, &pipeline_report) ==
          TW_STATUS_OK);
    CHECK(pipeline_report && std::strstr(pipeline_report, "\"coverage\": 1.0"));
    tw_string_free(pipeline_report);
    CHECK(fs::exists(fs::path(out_dir) / "texture.png"));
    CHECK(fs::exists(fs::path(out_dir) / "report.json"));

    tw_texture_destroy(baked);
    tw_texture_destroy(reloaded);
    tw_texture_destroy(inpainted);
    tw_texture_destroy(upscaled);
    tw_texture_destroy(smoothed);
    tw_views_destroy(views);
    tw_views_destroy(loaded);
    tw_mesh_destroy(mesh);
    tw_config_destroy(config);

    fs::remove_all(dir);
    if (failures == 0) {
        std::printf("capi: all checks passed\n");
        return 0;
    }
    std::fprintf(stderr, "capi: %d checks failed\n", failures);
    return 1;
}
