/* Copyright contributors to the texweave project
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the texweave texture-baking toolkit. The core is a C++
 * library; this boundary exposes it through opaque handles and status codes
 * so it can be linked from C, used via FFI, or loaded as a shared library.
 */

#ifndef TEXWEAVE_H
#define TEXWEAVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TW_API __declspec(dllexport)
#else
#define TW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tw_status {
    TW_STATUS_OK = 0,
    TW_STATUS_IO = 1,
    TW_STATUS_PARSE = 2,
    TW_STATUS_INVALID_ARGUMENT = 3,
    TW_STATUS_PRECONDITION = 4,
    TW_STATUS_INTERNAL = 5,
} tw_status;

typedef struct tw_mesh tw_mesh;
typedef struct tw_texture tw_texture;
typedef struct tw_viewset tw_viewset;
typedef struct tw_config tw_config;

/* Last error message of the calling thread; valid until the next failing
 * call on the same thread. Never NULL. */
TW_API const char* tw_last_error(void);

TW_API const char* tw_version(void);

/* Caps worker threads (0 = hardware concurrency). Outputs are identical for
 * any setting. */
TW_API void tw_set_threads(int threads);

/* Frees strings returned through char** out-parameters. */
TW_API void tw_string_free(char* s);

/* ---- configuration ------------------------------------------------- */

TW_API tw_config* tw_config_create(void);
TW_API void tw_config_destroy(tw_config* config);
/* Flat key=value pairs; unknown keys fail with TW_STATUS_PARSE. */
TW_API tw_status tw_config_set(tw_config* config, const char* key, const char* value);
/* Loads a flat key=value file ('#' comments). */
TW_API tw_status tw_config_load(tw_config* config, const char* path);
TW_API tw_status tw_config_to_json(const tw_config* config, char** json_out);

/* ---- meshes --------------------------------------------------------- */

typedef struct tw_mesh_stats {
    uint64_t face_count;
    uint64_t vertex_count;
    uint64_t chart_count;
    double center[3];
    double radius;
} tw_mesh_stats;

/* Loads a Wavefront-style mesh (v/vt/vn/f). normalize != 0 recenters the
 * bounding sphere at the origin with radius 0.9 (the pipeline's working
 * scale). */
TW_API tw_status tw_mesh_load(const char* path, int normalize, tw_mesh** mesh_out);
TW_API void tw_mesh_destroy(tw_mesh* mesh);
TW_API tw_status tw_mesh_get_stats(const tw_mesh* mesh, tw_mesh_stats* stats_out);

/* ---- textures -------------------------------------------------------- */

/* Loads a texture from an 8-bit RGB PNG. Mask paths may be NULL: a missing
 * valid mask means fully valid, a missing painted mask means painted equals
 * valid. */
TW_API tw_status tw_texture_load(const char* color_png, const char* valid_mask_png,
                                 const char* painted_mask_png, tw_texture** texture_out);
/* Mask paths may be NULL to skip writing them. */
TW_API tw_status tw_texture_save(const tw_texture* texture, const char* color_png,
                                 const char* valid_mask_png, const char* painted_mask_png);
TW_API tw_status tw_texture_get_size(const tw_texture* texture, int* width_out,
                                     int* height_out);
/* Painted fraction of the valid region in [0,1]. */
TW_API tw_status tw_texture_coverage(const tw_texture* texture, double* coverage_out);
TW_API void tw_texture_destroy(tw_texture* texture);

/* ---- view sets ------------------------------------------------------- */

/* Loads a JSON view manifest plus its images and renders per-view geometry
 * (depth/normal) from the mesh. */
TW_API tw_status tw_views_load(const tw_mesh* mesh, const char* manifest_path,
                               tw_viewset** views_out);
/* Renders procedural views of the mesh: field is one of "constant",
 * "checker", "stripes", "trig". Uses the config's view ring, seed and
 * jitter. */
TW_API tw_status tw_views_synth(const tw_mesh* mesh, const tw_config* config,
                                const char* field, tw_viewset** views_out);
/* Writes v000.png.. plus manifest.json into dir; with write_depth != 0 also
 * 16-bit depth maps with their depth_max recorded in the manifest. */
TW_API tw_status tw_views_save(const tw_viewset* views, const char* dir, int write_depth);
TW_API tw_status tw_views_count(const tw_viewset* views, int* count_out);
TW_API void tw_views_destroy(tw_viewset* views);

/* ---- pipeline stages -------------------------------------------------- */

/* Occlusion-aware fusion of the views into an (incomplete) UV texture. */
TW_API tw_status tw_bake(const tw_mesh* mesh, const tw_viewset* views,
                         const tw_config* config, tw_texture** texture_out);

/* Spatial 3D inpainting of unpainted valid texels to full coverage. */
TW_API tw_status tw_inpaint(const tw_mesh* mesh, const tw_texture* texture,
                            const tw_config* config, tw_texture** texture_out);

/* Chart-aware dilation followed by Lanczos upscaling per config. */
TW_API tw_status tw_upscale(const tw_texture* texture, const tw_config* config,
                            tw_texture** texture_out);

/* Seam detection + 3D-aware seam smoothing. energy_before/after may be NULL. */
TW_API tw_status tw_smooth(const tw_mesh* mesh, const tw_texture* texture,
                           const tw_config* config, tw_texture** texture_out,
                           double* energy_before, double* energy_after);

/* Full bake -> inpaint -> upscale -> smooth flow. Writes texture.png, the
 * stage masks and report.json into out_dir; dump_dir (may be NULL) receives
 * every intermediate. report_json_out (may be NULL) receives the metrics
 * report. */
TW_API tw_status tw_pipeline(const tw_mesh* mesh, const tw_viewset* views,
                             const tw_config* config, const char* out_dir,
                             const char* dump_dir, char** report_json_out);

/* Coverage / seam-energy / held-out cross-view consistency report as JSON. */
TW_API tw_status tw_metrics(const tw_mesh* mesh, const tw_texture* texture,
                            const tw_config* config, char** report_json_out);

/* Renders the mesh (textured when texture is non-NULL) from an orbit camera.
 * Any of the output paths may be NULL; depth goes to a 16-bit PNG, normals to
 * an 8-bit RGB PNG with the n*0.5+0.5 encoding. depth_max_out (may be NULL)
 * receives the depth scale used. */
TW_API tw_status tw_render(const tw_mesh* mesh, const tw_texture* texture, double azimuth,
                           double elevation, double radius, double fov_y, int width,
                           int height, const char* color_png, const char* depth_png,
                           const char* normal_png, double* depth_max_out);

#ifdef __cplusplus
}
#endif

#endif /* TEXWEAVE_H */
