// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support/fixtures.hpp"
#include "texweave/error.hpp"
#include "texweave/fields.hpp"
#include "texweave/manifest.hpp"
#include "texweave/metrics.hpp"
#include "texweave/parallel.hpp"
#include "texweave/pipeline.hpp"

using namespace texweave;
using namespace texweave::testing;

namespace {

PipelineConfig small_config() {
    PipelineConfig config;
    config.texture_resolution = 96;
    config.final_resolution = 192;
    config.view_resolution = 128;
    config.n_views = 8;
    config.held_out_views = 0;  // skip the oracle metric in unit tests
    return config;
}

}  // namespace

TEST_CASE("config file parsing, overrides and validation") {
    const auto path = std::filesystem::temp_directory_path() / "texweave_cfg.toml";
    {
        std::ofstream out(path);
        out << "# comment\n"
            << "texture_resolution = 256\n"
            << "final_resolution = 512\n"
            << "min_cos = 0.25\n"
            << "normal_gating = true\n";
    }
    PipelineConfig config = PipelineConfig::from_file(path.string());
    CHECK(config.texture_resolution == 256);
    CHECK(config.final_resolution == 512);
    CHECK(config.min_cos == doctest::Approx(0.25));
    CHECK(config.normal_gating);
    config.validate();
    std::filesystem::remove(path);

    SUBCASE("unknown keys fail") {
        CHECK_THROWS_AS(config.set("no_such_key", "1"), Error);
    }
    SUBCASE("bad values fail") {
        CHECK_THROWS_AS(config.set("texture_resolution", "abc"), Error);
    }
    SUBCASE("resolution contract is enforced") {
        config.final_resolution = 500;
        CHECK_THROWS_AS(config.validate(), Error);
    }
}

TEST_CASE("default config matches the published defaults") {
    const PipelineConfig config;
    CHECK(config.texture_resolution == 1024);
    CHECK(config.final_resolution == 2048);
    CHECK(config.n_views == 8);
    CHECK(config.view_elevation == 30.0);
    CHECK(config.view_radius == 2.2);
    CHECK(config.view_fov_y == 45.0);
    CHECK(config.view_resolution == 512);
    CHECK(config.min_cos == 0.2);
    CHECK(config.k_inpaint == 8);
    CHECK(config.max_rounds == 64);
    CHECK(config.seam_band_radius == 2);
    CHECK(config.upscale_factor == 2);
    config.validate();
}

TEST_CASE("seam band radius scales with resolution") {
    const PipelineConfig config;
    CHECK(config.seam_band_radius_for(2048) == 2);
    CHECK(config.seam_band_radius_for(1024) == 1);
    CHECK(config.seam_band_radius_for(256) == 1);  // never below 1
    CHECK(config.seam_band_radius_for(4096) == 4);
}

TEST_CASE("synth_views with a constant field is constant on every hit pixel") {
    const TriangleMesh sphere = normalize_mesh(make_uv_sphere(16, 8));
    const auto cameras = default_view_ring(3, 30.0, 2.2, 45.0, 96, 96);
    const ViewSet views = synth_views(sphere, cameras, "constant", 0);
    views.validate();
    const Color expected = make_color_field("constant")(Vec3{});
    for (size_t v = 0; v < views.size(); ++v) {
        for (int row = 0; row < 96; ++row) {
            for (int col = 0; col < 96; ++col) {
                if (views.renders[v].hit_mask.at(row, col)) {
                    CHECK(views.images[v].at(row, col) == expected);
                }
            }
        }
    }
}

TEST_CASE("synth_views sees the same color for a surface point in any view") {
    const TriangleMesh sphere = normalize_mesh(make_uv_sphere(48, 24));
    // Two overlapping views 45 degrees apart.
    const std::vector<Camera> cameras = {Camera(0, 10, 2.2, 45, 256, 256),
                                         Camera(45, 10, 2.2, 45, 256, 256)};
    const ViewSet views = synth_views(sphere, cameras, "checker", 0);
    const GeometryBuffers buffers = rasterize_uv(sphere, 64, 64);
    size_t compared = 0;
    double sum = 0.0;
    for (int row = 0; row < 64; ++row) {
        for (int col = 0; col < 64; ++col) {
            if (!buffers.valid_mask.at(row, col)) continue;
            const Vec3& p = buffers.position_at(row, col);
            const Vec3& n = buffers.normal_at(row, col);
            Color colors[2];
            bool visible_in_both = true;
            for (int v = 0; v < 2; ++v) {
                const Camera& camera = cameras[v];
                if (dot(normalized(camera.position() - p), n) < 0.35) {
                    visible_in_both = false;
                    break;
                }
                const auto hit = raycast_oracle(sphere, camera.position(),
                                                normalized(p - camera.position()));
                if (!hit || hit->distance < distance(p, camera.position()) - 1e-6) {
                    visible_in_both = false;
                    break;
                }
                const Camera::Projection proj = camera.project(p);
                if (!proj.in_image) {
                    visible_in_both = false;
                    break;
                }
                colors[v] = views.images[v].sample_bilinear(proj.x, proj.y);
            }
            if (!visible_in_both) continue;
            ++compared;
            sum += mean_abs_diff(colors[0], colors[1]);
        }
    }
    CHECK(compared > 200);
    // The field is a pure function of position; the residual across views is
    // rasterization sampling error (checker edges under bilinear lookups).
    CHECK(sum / compared <= 0.02);
}

TEST_CASE("jitter shifts per-view brightness deterministically") {
    const TriangleMesh sphere = normalize_mesh(make_uv_sphere(16, 8));
    const auto cameras = default_view_ring(4, 30.0, 2.2, 45.0, 64, 64);
    const ViewSet plain = synth_views(sphere, cameras, "constant", 7, 0.0);
    const ViewSet jittered = synth_views(sphere, cameras, "constant", 7, 0.05);
    const ViewSet jittered2 = synth_views(sphere, cameras, "constant", 7, 0.05);
    bool any_offset = false;
    for (size_t v = 0; v < cameras.size(); ++v) {
        // Determinism: same seed, same images.
        CHECK(jittered.images[v].pixels == jittered2.images[v].pixels);
        for (int row = 0; row < 64; ++row) {
            for (int col = 0; col < 64; ++col) {
                if (!plain.renders[v].hit_mask.at(row, col)) continue;
                const float diff = std::fabs(jittered.images[v].at(row, col).r -
                                             plain.images[v].at(row, col).r);
                CHECK(diff <= 0.05f + 1e-6f);
                if (diff > 0.01f) any_offset = true;
            }
        }
    }
    CHECK(any_offset);
}

TEST_CASE("unknown procedural fields are rejected") {
    try {
        make_color_field("plasma");
        FAIL("expected UnknownField");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownField);
    }
}

TEST_CASE("run_pipeline honors the resolution contract and reaches full coverage") {
    const TriangleMesh cup = normalize_mesh(make_cup(0.45, 1.3, 8));
    const PipelineConfig config = small_config();
    const auto cameras =
        default_view_ring(config.n_views, config.view_elevation, config.view_radius,
                          config.view_fov_y, config.view_resolution, config.view_resolution);
    const ViewSet views = synth_views(cup, cameras, "stripes", 0);
    const PipelineResult result = run_pipeline(cup, views, config);

    CHECK(result.fused.width == 96);
    CHECK(result.complete.width == 96);
    CHECK(result.upscaled.width == 192);
    CHECK(result.final.width == 192);

    // The cup floor is hidden from the ring; fusion cannot cover it.
    CHECK(result.coverage_after_fusion < 1.0);
    CHECK(result.coverage_after_inpaint == 1.0);
    CHECK(result.occlusion_excluded > 0);

    // Painted equals valid on the final texture.
    CHECK(result.final.painted == result.final.valid);
}

TEST_CASE("pipeline output is bit-identical across runs and thread counts") {
    const TriangleMesh sphere = normalize_mesh(make_uv_sphere(24, 12));
    const PipelineConfig config = small_config();
    const auto cameras =
        default_view_ring(config.n_views, config.view_elevation, config.view_radius,
                          config.view_fov_y, config.view_resolution, config.view_resolution);
    const ViewSet views = synth_views(sphere, cameras, "checker", 3);

    set_max_threads(1);
    const PipelineResult serial = run_pipeline(sphere, views, config);
    set_max_threads(8);
    const PipelineResult parallel8 = run_pipeline(sphere, views, config);
    set_max_threads(0);
    const PipelineResult again = run_pipeline(sphere, views, config);

    CHECK(serial.final.pixels == parallel8.final.pixels);
    CHECK(serial.final.pixels == again.final.pixels);
    CHECK(serial.final.valid == parallel8.final.valid);
    CHECK(serial.complete.pixels == parallel8.complete.pixels);
}

TEST_CASE("dump-intermediates writes every stage artifact") {
    const TriangleMesh sphere = normalize_mesh(make_uv_sphere(16, 8));
    PipelineConfig config = small_config();
    config.texture_resolution = 64;
    config.final_resolution = 128;
    const auto cameras =
        default_view_ring(4, config.view_elevation, config.view_radius, config.view_fov_y,
                          config.view_resolution, config.view_resolution);
    const ViewSet views = synth_views(sphere, cameras, "checker", 0);
    const auto dir = std::filesystem::temp_directory_path() / "texweave_dump";
    std::filesystem::remove_all(dir);
    const PipelineResult result = run_pipeline(sphere, views, config, dir.string());
    for (const char* name :
         {"t_fused.png", "t_fused_painted.png", "t_complete.png", "t_complete_cloud.txt",
          "t_upscaled.png", "t_final.png", "t_final_valid.png", "t_seam_mask.png"}) {
        CHECK(std::filesystem::exists(dir / name));
    }
    // The report embeds the configuration it ran with.
    CHECK(result.report_json().find("\"texture_resolution\": 64") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("smoothing an already smooth texture changes nothing") {
    const TriangleMesh sphere = normalize_mesh(make_uv_sphere(24, 12));
    PipelineConfig config = small_config();
    const GeometryBuffers buffers =
        rasterize_uv(sphere, config.texture_resolution, config.texture_resolution);
    UvTexture texture(config.texture_resolution, config.texture_resolution);
    texture.valid = buffers.valid_mask;
    texture.painted = buffers.valid_mask;
    const ColorField field = make_color_field("trig");
    for (int row = 0; row < texture.height; ++row) {
        for (int col = 0; col < texture.width; ++col) {
            if (texture.valid.at(row, col)) {
                texture.at(row, col) = field(buffers.position_at(row, col));
            }
        }
    }
    const SmoothResult first = smooth_seams(sphere, texture, buffers, config);
    const SmoothResult second = smooth_seams(sphere, first.texture, buffers, config);
    CHECK(second.texture.pixels == first.texture.pixels);
}

TEST_CASE("missing manifest file fails cleanly with Io") {
    try {
        load_views("/nonexistent/manifest.json");
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
}

TEST_CASE("manifest round-trips through JSON") {
    ViewManifest manifest;
    for (int i = 0; i < 3; ++i) {
        ViewManifestEntry entry;
        entry.image = "v" + std::to_string(i) + ".png";
        entry.azimuth = 45.0 * i;
        entry.elevation = i % 2 ? -30.0 : 30.0;
        entry.radius = 2.2;
        entry.fov_y = 45.0;
        entry.width = 128;
        entry.height = 128;
        if (i == 1) {
            entry.depth = "d1.png";
            entry.depth_max = 3.11;
        }
        manifest.views.push_back(entry);
    }
    const auto path = std::filesystem::temp_directory_path() / "texweave_manifest.json";
    write_view_manifest(path.string(), manifest);
    const ViewManifest back = read_view_manifest(path.string());
    REQUIRE(back.views.size() == 3);
    CHECK(back.views[1].depth.has_value());
    CHECK(*back.views[1].depth_max == doctest::Approx(3.11));
    CHECK(back.views[2].azimuth == doctest::Approx(90.0));
    std::filesystem::remove(path);
}

TEST_CASE("malformed manifest JSON raises Parse") {
    const auto path = std::filesystem::temp_directory_path() / "texweave_bad.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    try {
        read_view_manifest(path.string());
        FAIL("expected Parse");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
    }
    std::filesystem::remove(path);
}
