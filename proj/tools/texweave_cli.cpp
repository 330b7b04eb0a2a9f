// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0
//
// texweave command line. Deliberately a thin shell over the C API in
// texweave.h; everything it can do, an embedding application can do too.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "texweave.h"

namespace {

namespace fs = std::filesystem;

struct ConfigDeleter {
    void operator()(tw_config* c) const { tw_config_destroy(c); }
};
struct MeshDeleter {
    void operator()(tw_mesh* m) const { tw_mesh_destroy(m); }
};
struct TextureDeleter {
    void operator()(tw_texture* t) const { tw_texture_destroy(t); }
};
struct ViewsDeleter {
    void operator()(tw_viewset* v) const { tw_views_destroy(v); }
};

using ConfigPtr = std::unique_ptr<tw_config, ConfigDeleter>;
using MeshPtr = std::unique_ptr<tw_mesh, MeshDeleter>;
using TexturePtr = std::unique_ptr<tw_texture, TextureDeleter>;
using ViewsPtr = std::unique_ptr<tw_viewset, ViewsDeleter>;

[[noreturn]] void die(const std::string& context) {
    std::fprintf(stderr, "texweave: %s: %s\n", context.c_str(), tw_last_error());
    std::exit(1);
}

void check(tw_status status, const std::string& context) {
    if (status != TW_STATUS_OK) die(context);
}

// Shared options: config file, key=value overrides, thread cap.
struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
    int threads = -1;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "flat key=value config file");
        app->add_option("--set", overrides, "config override key=value (repeatable)");
        app->add_option("--threads", threads, "worker thread cap (0 = all cores)");
    }

    ConfigPtr build() const {
        ConfigPtr config(tw_config_create());
        if (!config_path.empty()) check(tw_config_load(config.get(), config_path.c_str()),
                                        "loading config " + config_path);
        for (const std::string& kv : overrides) {
            const size_t eq = kv.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "texweave: --set expects key=value, got '%s'\n",
                             kv.c_str());
                std::exit(1);
            }
            check(tw_config_set(config.get(), kv.substr(0, eq).c_str(),
                                kv.substr(eq + 1).c_str()),
                  "applying override " + kv);
        }
        if (threads >= 0) {
            check(tw_config_set(config.get(), "threads", std::to_string(threads).c_str()),
                  "setting threads");
            tw_set_threads(threads);
        }
        return config;
    }
};

MeshPtr load_mesh_arg(const std::string& path, bool normalize = true) {
    tw_mesh* mesh = nullptr;
    check(tw_mesh_load(path.c_str(), normalize ? 1 : 0, &mesh), "loading mesh " + path);
    return MeshPtr(mesh);
}

TexturePtr load_texture_args(const std::string& color, const std::string& valid,
                             const std::string& painted) {
    tw_texture* texture = nullptr;
    check(tw_texture_load(color.c_str(), valid.empty() ? nullptr : valid.c_str(),
                          painted.empty() ? nullptr : painted.c_str(), &texture),
          "loading texture " + color);
    return TexturePtr(texture);
}

ViewsPtr make_views(const tw_mesh* mesh, const tw_config* config,
                    const std::string& manifest, const std::string& synth_field) {
    tw_viewset* views = nullptr;
    if (!manifest.empty()) {
        check(tw_views_load(mesh, manifest.c_str(), &views), "loading views " + manifest);
    } else {
        check(tw_views_synth(mesh, config, synth_field.c_str(), &views),
              "synthesizing views");
    }
    return ViewsPtr(views);
}

void save_texture(const tw_texture* texture, const std::string& out_dir,
                  const std::string& stem) {
    fs::create_directories(out_dir);
    const std::string color = (fs::path(out_dir) / (stem + ".png")).string();
    const std::string valid = (fs::path(out_dir) / (stem + "_valid.png")).string();
    const std::string painted = (fs::path(out_dir) / (stem + "_painted.png")).string();
    check(tw_texture_save(texture, color.c_str(), valid.c_str(), painted.c_str()),
          "writing " + color);
    std::printf("wrote %s\n", color.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"texweave - multi-view texture baking, 3D inpainting and seam repair"};
    app.require_subcommand(1);

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "run the full texturing flow");
    std::string mesh_path, views_path, out_dir = "out", dump_dir, synth_field = "checker";
    CommonOpts pipeline_opts;
    pipeline->add_option("--mesh", mesh_path, "input mesh (.obj)")->required();
    pipeline->add_option("--views", views_path, "view manifest JSON (omit to synthesize)");
    pipeline->add_option("--field", synth_field, "procedural field when synthesizing views");
    pipeline->add_option("--out", out_dir, "output directory");
    pipeline->add_option("--dump-intermediates", dump_dir, "directory for stage dumps");
    pipeline_opts.attach(pipeline);
    pipeline->callback([&] {
        ConfigPtr config = pipeline_opts.build();
        MeshPtr mesh = load_mesh_arg(mesh_path);
        ViewsPtr views = make_views(mesh.get(), config.get(), views_path, synth_field);
        char* report = nullptr;
        check(tw_pipeline(mesh.get(), views.get(), config.get(), out_dir.c_str(),
                          dump_dir.empty() ? nullptr : dump_dir.c_str(), &report),
              "running pipeline");
        std::printf("%s\n", report);
        tw_string_free(report);
        std::printf("wrote %s\n", (fs::path(out_dir) / "texture.png").string().c_str());
    });

    // bake
    auto* bake = app.add_subcommand("bake", "fuse multi-view images into a UV texture");
    std::string bake_mesh, bake_views, bake_out = "out";
    std::string bake_field = "checker";
    CommonOpts bake_opts;
    bake->add_option("--mesh", bake_mesh, "input mesh (.obj)")->required();
    bake->add_option("--views", bake_views, "view manifest JSON (omit to synthesize)");
    bake->add_option("--field", bake_field, "procedural field when synthesizing views");
    bake->add_option("--out", bake_out, "output directory");
    bake_opts.attach(bake);
    bake->callback([&] {
        ConfigPtr config = bake_opts.build();
        MeshPtr mesh = load_mesh_arg(bake_mesh);
        ViewsPtr views = make_views(mesh.get(), config.get(), bake_views, bake_field);
        tw_texture* texture = nullptr;
        check(tw_bake(mesh.get(), views.get(), config.get(), &texture), "baking");
        TexturePtr guard(texture);
        double cov = 0.0;
        tw_texture_coverage(texture, &cov);
        std::printf("coverage after fusion: %.4f\n", cov);
        save_texture(texture, bake_out, "t_fused");
    });

    // inpaint
    auto* inpaint = app.add_subcommand("inpaint", "3D-inpaint unobserved texels");
    std::string in_mesh, in_tex, in_valid, in_painted, in_out = "out";
    CommonOpts inpaint_opts;
    inpaint->add_option("--mesh", in_mesh, "input mesh (.obj)")->required();
    inpaint->add_option("--texture", in_tex, "incomplete texture PNG")->required();
    inpaint->add_option("--valid-mask", in_valid, "valid mask PNG");
    inpaint->add_option("--painted-mask", in_painted, "painted mask PNG")->required();
    inpaint->add_option("--out", in_out, "output directory");
    inpaint_opts.attach(inpaint);
    inpaint->callback([&] {
        ConfigPtr config = inpaint_opts.build();
        MeshPtr mesh = load_mesh_arg(in_mesh);
        TexturePtr texture = load_texture_args(in_tex, in_valid, in_painted);
        tw_texture* out = nullptr;
        check(tw_inpaint(mesh.get(), texture.get(), config.get(), &out), "inpainting");
        TexturePtr guard(out);
        double cov = 0.0;
        tw_texture_coverage(out, &cov);
        std::printf("coverage after inpainting: %.4f\n", cov);
        save_texture(out, in_out, "t_complete");
    });

    // upscale
    auto* upscale = app.add_subcommand("upscale", "dilate and upscale a texture");
    std::string up_tex, up_valid, up_out = "out";
    CommonOpts upscale_opts;
    upscale->add_option("--texture", up_tex, "texture PNG")->required();
    upscale->add_option("--valid-mask", up_valid, "valid mask PNG");
    upscale->add_option("--out", up_out, "output directory");
    upscale_opts.attach(upscale);
    upscale->callback([&] {
        ConfigPtr config = upscale_opts.build();
        TexturePtr texture = load_texture_args(up_tex, up_valid, "");
        tw_texture* out = nullptr;
        check(tw_upscale(texture.get(), config.get(), &out), "upscaling");
        TexturePtr guard(out);
        save_texture(out, up_out, "t_upscaled");
    });

    // smooth
    auto* smooth = app.add_subcommand("smooth", "detect and smooth UV seams");
    std::string sm_mesh, sm_tex, sm_out = "out", sm_upscaled_input;
    CommonOpts smooth_opts;
    smooth->add_option("--mesh", sm_mesh, "input mesh (.obj)")->required();
    smooth->add_option("--texture", sm_tex, "texture PNG (typically the upscaled one)");
    smooth->add_option("--upscaled-input", sm_upscaled_input,
                       "externally super-resolved texture PNG (alias of --texture)");
    smooth->add_option("--out", sm_out, "output directory");
    smooth_opts.attach(smooth);
    smooth->callback([&] {
        ConfigPtr config = smooth_opts.build();
        const std::string tex_path = sm_tex.empty() ? sm_upscaled_input : sm_tex;
        if (tex_path.empty()) {
            std::fprintf(stderr, "texweave: smooth needs --texture or --upscaled-input\n");
            std::exit(1);
        }
        MeshPtr mesh = load_mesh_arg(sm_mesh);
        TexturePtr texture = load_texture_args(tex_path, "", "");
        tw_texture* out = nullptr;
        double before = 0.0, after = 0.0;
        check(tw_smooth(mesh.get(), texture.get(), config.get(), &out, &before, &after),
              "smoothing seams");
        TexturePtr guard(out);
        std::printf("seam energy: %.6f -> %.6f\n", before, after);
        save_texture(out, sm_out, "t_final");
    });

    // metrics
    auto* metrics = app.add_subcommand("metrics", "coverage/seam/consistency report");
    std::string mt_mesh, mt_tex, mt_out;
    CommonOpts metrics_opts;
    metrics->add_option("--mesh", mt_mesh, "input mesh (.obj)")->required();
    metrics->add_option("--texture", mt_tex, "texture PNG")->required();
    metrics->add_option("--out", mt_out, "report JSON path (default: stdout)");
    metrics_opts.attach(metrics);
    metrics->callback([&] {
        ConfigPtr config = metrics_opts.build();
        MeshPtr mesh = load_mesh_arg(mt_mesh);
        TexturePtr texture = load_texture_args(mt_tex, "", "");
        char* report = nullptr;
        check(tw_metrics(mesh.get(), texture.get(), config.get(), &report), "metrics");
        if (mt_out.empty()) {
            std::printf("%s\n", report);
        } else {
            FILE* f = std::fopen(mt_out.c_str(), "w");
            if (!f) {
                std::fprintf(stderr, "texweave: cannot write %s\n", mt_out.c_str());
                std::exit(1);
            }
            std::fprintf(f, "%s\n", report);
            std::fclose(f);
            std::printf("wrote %s\n", mt_out.c_str());
        }
        tw_string_free(report);
    });

    // synth-views
    auto* synth = app.add_subcommand("synth-views", "render procedural multi-view images");
    std::string sv_mesh, sv_out = "views", sv_field = "checker";
    int sv_n = -1;
    bool sv_depth = false;
    CommonOpts synth_opts;
    synth->add_option("--mesh", sv_mesh, "input mesh (.obj)")->required();
    synth->add_option("--field", sv_field, "constant|checker|stripes|trig");
    synth->add_option("--n", sv_n, "number of views (overrides config)");
    synth->add_flag("--depth", sv_depth, "also export 16-bit depth maps");
    synth->add_option("--out", sv_out, "output directory");
    synth_opts.attach(synth);
    synth->callback([&] {
        ConfigPtr config = synth_opts.build();
        if (sv_n > 0) {
            check(tw_config_set(config.get(), "n_views", std::to_string(sv_n).c_str()),
                  "setting n_views");
        }
        MeshPtr mesh = load_mesh_arg(sv_mesh);
        tw_viewset* views = nullptr;
        check(tw_views_synth(mesh.get(), config.get(), sv_field.c_str(), &views),
              "synthesizing views");
        ViewsPtr guard(views);
        check(tw_views_save(views, sv_out.c_str(), sv_depth ? 1 : 0), "writing views");
        std::printf("wrote %s\n", (fs::path(sv_out) / "manifest.json").string().c_str());
    });

    // render
    auto* render = app.add_subcommand("render", "render the mesh from an orbit camera");
    std::string rd_mesh, rd_tex, rd_color = "render.png", rd_depth, rd_normal;
    double rd_az = 0.0, rd_el = 30.0, rd_radius = 2.2, rd_fov = 45.0;
    int rd_size = 512;
    CommonOpts render_opts;
    render->add_option("--mesh", rd_mesh, "input mesh (.obj)")->required();
    render->add_option("--texture", rd_tex, "texture PNG to sample");
    render->add_option("--azimuth", rd_az, "camera azimuth (degrees)");
    render->add_option("--elevation", rd_el, "camera elevation (degrees)");
    render->add_option("--radius", rd_radius, "camera distance");
    render->add_option("--fov", rd_fov, "vertical field of view (degrees)");
    render->add_option("--size", rd_size, "image width and height");
    render->add_option("--out", rd_color, "color PNG path");
    render->add_option("--depth-out", rd_depth, "16-bit depth PNG path");
    render->add_option("--normal-out", rd_normal, "normal-map PNG path");
    render_opts.attach(render);
    render->callback([&] {
        ConfigPtr config = render_opts.build();
        (void)config;
        MeshPtr mesh = load_mesh_arg(rd_mesh);
        TexturePtr texture;
        if (!rd_tex.empty()) texture = load_texture_args(rd_tex, "", "");
        double depth_max = 0.0;
        check(tw_render(mesh.get(), texture.get(), rd_az, rd_el, rd_radius, rd_fov, rd_size,
                        rd_size, rd_color.c_str(),
                        rd_depth.empty() ? nullptr : rd_depth.c_str(),
                        rd_normal.empty() ? nullptr : rd_normal.c_str(), &depth_max),
              "rendering");
        std::printf("wrote %s (depth_max %.6f)\n", rd_color.c_str(), depth_max);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
