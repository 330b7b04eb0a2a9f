// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/project.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "texweave/error.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

void ViewSet::validate() const {
    if (cameras.empty()) throw Error(ErrorCode::InvalidArgument, "view set is empty");
    if (images.size() != cameras.size() || renders.size() != cameras.size()) {
        throw Error(ErrorCode::InvalidArgument, "view set lists differ in length");
    }
    for (size_t i = 0; i < cameras.size(); ++i) {
        if (images[i].width != cameras[i].width() || images[i].height != cameras[i].height()) {
            throw Error(ErrorCode::MismatchedResolutions,
                        "view image resolution does not match its camera");
        }
    }
}

double default_occlusion_delta(double scene_diameter, int depth_resolution) {
    return 2.0 * scene_diameter / std::max(depth_resolution, 1);
}

OcclusionMask detect_occlusion(const GeometryBuffers& buffers, const Camera& camera,
                               const ViewRender& depth_render, double delta) {
    OcclusionMask mask;
    mask.state = Grid<uint8_t>(buffers.width, buffers.height,
                               static_cast<uint8_t>(TexelVisibility::Unobserved));

    std::vector<size_t> row_occluded(buffers.height, 0);
    std::vector<size_t> row_unobserved(buffers.height, 0);
    std::vector<size_t> row_candidates(buffers.height, 0);
    parallel_for(0, buffers.height, [&](int64_t row_i) {
        const int row = static_cast<int>(row_i);
        for (int col = 0; col < buffers.width; ++col) {
            if (!buffers.valid_mask.at(row, col)) continue;
            ++row_candidates[row];
            const Vec3& p = buffers.position_at(row, col);
            const Camera::Projection proj = camera.project(p);
            TexelVisibility state = TexelVisibility::Unobserved;
            if (proj.in_image) {
                // The projection rarely lands on a pixel center; compare
                // against the farthest finite depth among the four bracketing
                // pixels so the sub-pixel depth slope of the surface itself
                // cannot flip the verdict.
                const int x0 = static_cast<int>(std::floor(proj.x - 0.5));
                const int y0 = static_cast<int>(std::floor(proj.y - 0.5));
                double rendered = -1.0;
                for (int dy = 0; dy <= 1; ++dy) {
                    for (int dx = 0; dx <= 1; ++dx) {
                        const int px = std::clamp(x0 + dx, 0, depth_render.width - 1);
                        const int py = std::clamp(y0 + dy, 0, depth_render.height - 1);
                        if (depth_render.hit_mask.at(py, px)) {
                            rendered = std::max(rendered, depth_render.depth_map.at(py, px));
                        }
                    }
                }
                if (rendered >= 0.0) {
                    // Slope-scaled tolerance: the rendered depth under the
                    // projection is uncertain by one pixel of surface slope,
                    // which grows with the tangent of the incidence angle.
                    const Vec3& n = buffers.normal_at(row, col);
                    const double cos_view =
                        std::fabs(dot(normalized(camera.position() - p), n));
                    const double tan_view =
                        std::sqrt(std::max(0.0, 1.0 - cos_view * cos_view)) /
                        std::max(cos_view, 0.125);
                    const double tolerance = delta * (1.0 + tan_view);
                    state = proj.depth > rendered + tolerance ? TexelVisibility::Occluded
                                                              : TexelVisibility::Visible;
                }
            }
            mask.state.at(row, col) = static_cast<uint8_t>(state);
            if (state == TexelVisibility::Occluded) ++row_occluded[row];
            if (state == TexelVisibility::Unobserved) ++row_unobserved[row];
        }
    });
    for (int row = 0; row < buffers.height; ++row) {
        mask.occluded += row_occluded[row];
        mask.unobserved += row_unobserved[row];
        mask.candidates += row_candidates[row];
    }
    return mask;
}

PerViewUvLayer inverse_project(const RgbImage& image, const Camera& camera,
                               const GeometryBuffers& buffers,
                               const OcclusionMask& occlusion, double min_cos) {
    PerViewUvLayer layer;
    layer.width = buffers.width;
    layer.height = buffers.height;
    layer.color.assign(static_cast<size_t>(buffers.width) * buffers.height, Color{});
    layer.weight.assign(static_cast<size_t>(buffers.width) * buffers.height, 0.0f);

    std::vector<size_t> row_backfacing(buffers.height, 0);
    parallel_for(0, buffers.height, [&](int64_t row_i) {
        const int row = static_cast<int>(row_i);
        for (int col = 0; col < buffers.width; ++col) {
            if (!buffers.valid_mask.at(row, col)) continue;
            if (occlusion.at(row, col) != TexelVisibility::Visible) continue;
            const Vec3& p = buffers.position_at(row, col);
            const Vec3& n = buffers.normal_at(row, col);
            const double cos_view = dot(normalized(camera.position() - p), n);
            const double w = std::max(0.0, cos_view);
            if (w < min_cos) {
                ++row_backfacing[row];
                continue;
            }
            const Camera::Projection proj = camera.project(p);
            const size_t idx = static_cast<size_t>(row) * buffers.width + col;
            layer.weight[idx] = static_cast<float>(w);
            layer.color[idx] = image.sample_bilinear(proj.x, proj.y);
        }
    });
    for (size_t n : row_backfacing) layer.backfacing += n;
    return layer;
}

UvTexture fuse_layers(const std::vector<PerViewUvLayer>& layers, const Mask& valid_mask,
                      FuseMode mode, Grid<float>* weight_sum) {
    if (layers.empty()) {
        throw Error(ErrorCode::InvalidArgument, "fuse_layers needs at least one layer");
    }
    const int w = layers[0].width;
    const int h = layers[0].height;
    for (const PerViewUvLayer& layer : layers) {
        require_same_resolution(w, h, layer.width, layer.height, "fuse_layers");
    }
    require_same_resolution(w, h, valid_mask.width(), valid_mask.height(), "fuse_layers");

    UvTexture out(w, h);
    out.valid = valid_mask;
    Grid<float> sums(w, h, 0.0f);

    parallel_for(0, h, [&](int64_t row_i) {
        const int row = static_cast<int>(row_i);
        std::vector<std::pair<float, Color>> contributions;
        for (int col = 0; col < w; ++col) {
            const size_t idx = static_cast<size_t>(row) * w + col;
            contributions.clear();
            for (const PerViewUvLayer& layer : layers) {
                const float lw = layer.weight[idx];
                if (lw > 0.0f) contributions.emplace_back(lw, layer.color[idx]);
            }
            if (contributions.empty()) continue;

            if (mode == FuseMode::BestView) {
                float best = -1.0f;
                Color best_color;
                for (const auto& [lw, c] : contributions) {
                    if (lw > best) {
                        best = lw;
                        best_color = c;
                    }
                }
                out.pixels[idx] = best_color;
                sums.at(row, col) = best;
            } else {
                // Sum smallest weights first; keeps the order stable across
                // layer-list permutations whenever weights are distinct.
                std::stable_sort(contributions.begin(), contributions.end(),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
                double wsum = 0.0, r = 0.0, g = 0.0, b = 0.0;
                for (const auto& [lw, c] : contributions) {
                    wsum += lw;
                    r += static_cast<double>(lw) * c.r;
                    g += static_cast<double>(lw) * c.g;
                    b += static_cast<double>(lw) * c.b;
                }
                out.pixels[idx] = Color(static_cast<float>(r / wsum),
                                        static_cast<float>(g / wsum),
                                        static_cast<float>(b / wsum));
                sums.at(row, col) = static_cast<float>(wsum);
            }
            out.painted[idx] = 1;
        }
    });

    if (weight_sum) *weight_sum = std::move(sums);
    return out;
}

UvTexture project_and_fuse(const ViewSet& views, const GeometryBuffers& buffers,
                           double min_cos, double delta, FuseMode mode,
                           OcclusionReport* report, bool use_occlusion) {
    views.validate();
    std::vector<PerViewUvLayer> layers(views.size());
    std::vector<OcclusionMask> occlusions(views.size());
    // Views are independent; the per-view work is already row-parallel, so a
    // plain loop keeps memory bounded and the output identical either way.
    for (size_t v = 0; v < views.size(); ++v) {
        occlusions[v] = detect_occlusion(buffers, views.cameras[v], views.renders[v], delta);
        if (!use_occlusion) {
            // Treat occluded texels as visible (occlusion-exclusion ablation).
            for (size_t i = 0; i < occlusions[v].state.size(); ++i) {
                if (occlusions[v].state[i] == static_cast<uint8_t>(TexelVisibility::Occluded)) {
                    occlusions[v].state[i] = static_cast<uint8_t>(TexelVisibility::Visible);
                }
            }
            occlusions[v].occluded = 0;
        }
        layers[v] = inverse_project(views.images[v], views.cameras[v], buffers, occlusions[v],
                                    min_cos);
    }
    if (report) {
        report->candidates = occlusions.empty() ? 0 : occlusions[0].candidates;
        report->occluded.clear();
        report->unobserved.clear();
        report->backfacing.clear();
        for (size_t v = 0; v < views.size(); ++v) {
            report->occluded.push_back(occlusions[v].occluded);
            report->unobserved.push_back(occlusions[v].unobserved);
            report->backfacing.push_back(layers[v].backfacing);
        }
    }
    return fuse_layers(layers, buffers.valid_mask, mode);
}

std::pair<UvTexture, RoundtripReport> sync_roundtrip(const TriangleMesh& mesh,
                                                     const ViewSet& views,
                                                     const GeometryBuffers& buffers,
                                                     double min_cos, double delta) {
    UvTexture fused = project_and_fuse(views, buffers, min_cos, delta,
                                       FuseMode::WeightedAverage);
    RoundtripReport report;
    report.per_view_mean_error.resize(views.size(), 0.0);
    double total = 0.0;
    size_t total_count = 0;
    for (size_t v = 0; v < views.size(); ++v) {
        const Camera& camera = views.cameras[v];
        const ViewRender rendered = render_view(mesh, camera, camera.width(),
                                                camera.height(), &fused);
        double sum = 0.0;
        size_t count = 0;
        for (int row = 0; row < rendered.height; ++row) {
            for (int col = 0; col < rendered.width; ++col) {
                if (!rendered.hit_mask.at(row, col)) continue;
                const size_t idx = static_cast<size_t>(row) * rendered.width + col;
                const Vec3& n = rendered.normal_map[idx];
                // Reliability gate mirrors the projection weight: direction
                // from the surface point back to the camera.
                const Vec3 to_camera = camera.pixel_ray(col + 0.5, row + 0.5) * -1.0;
                const double cos_view = dot(to_camera, n);
                if (cos_view < min_cos) continue;
                sum += mean_abs_diff(rendered.color_map[idx], views.images[v].at(row, col));
                ++count;
            }
        }
        report.per_view_mean_error[v] = count > 0 ? sum / count : 0.0;
        total += sum;
        total_count += count;
    }
    report.overall_mean_error = total_count > 0 ? total / total_count : 0.0;
    return {std::move(fused), std::move(report)};
}

}  // namespace texweave
