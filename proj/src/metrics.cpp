// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "texweave/parallel.hpp"

namespace texweave {

double coverage(const UvTexture& texture) {
    size_t valid = 0;
    size_t painted = 0;
    for (size_t i = 0; i < texture.valid.size(); ++i) {
        if (!texture.valid[i]) continue;
        ++valid;
        if (texture.painted[i]) ++painted;
    }
    if (valid == 0) return 1.0;
    return static_cast<double>(painted) / static_cast<double>(valid);
}

namespace {

// Moller-Trumbore with inclusive edges so shared-edge rays register on both
// faces; the ascending scan then keeps the smaller index on exact ties.
bool ray_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a, const Vec3& b,
                  const Vec3& c, double* t_out) {
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 pvec = cross(dir, e2);
    const double det = dot(e1, pvec);
    if (std::fabs(det) < 1e-16) return false;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = origin - a;
    const double u = dot(tvec, pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 qvec = cross(tvec, e1);
    const double v = dot(dir, qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return false;
    const double t = dot(e2, qvec) * inv_det;
    if (t <= 0.0) return false;
    *t_out = t;
    return true;
}

}  // namespace

std::optional<RayHit> raycast_oracle(const TriangleMesh& mesh, const Vec3& origin,
                                     const Vec3& direction) {
    RayHit best;
    bool found = false;
    for (size_t f = 0; f < mesh.face_count(); ++f) {
        const auto& face = mesh.faces[f];
        double t = 0.0;
        if (!ray_triangle(origin, direction, mesh.vertices[face[0]], mesh.vertices[face[1]],
                          mesh.vertices[face[2]], &t)) {
            continue;
        }
        if (!found || t < best.distance) {
            best.distance = t;
            best.face = static_cast<int>(f);
            found = true;
        }
    }
    if (!found) return std::nullopt;
    return best;
}

namespace {

// A surface point counts as visible when the oracle's first hit toward it is
// the point itself (within a small slack for being exactly on the surface)
// AND its pixel in the render actually shows this surface region; silhouette
// pixels showing background or a different depth would measure the sampling,
// not the texture.
bool oracle_visible(const TriangleMesh& mesh, const Camera& camera, const ViewRender& render,
                    const Vec3& point, double depth_tolerance, Camera::Projection* proj_out) {
    const Camera::Projection proj = camera.project(point);
    if (!proj.in_image) return false;
    const Vec3 dir = normalized(point - camera.position());
    const auto hit = raycast_oracle(mesh, camera.position(), dir);
    if (!hit) return false;
    if (hit->distance < proj.depth - 1e-6) return false;
    const int px = std::min(static_cast<int>(proj.x), render.width - 1);
    const int py = std::min(static_cast<int>(proj.y), render.height - 1);
    if (!render.hit_mask.at(py, px)) return false;
    if (std::fabs(render.depth_map.at(py, px) - proj.depth) > depth_tolerance) return false;
    *proj_out = proj;
    return true;
}

}  // namespace

ConsistencyReport cross_view_consistency(const TriangleMesh& mesh, const UvTexture& texture,
                                         const std::vector<Camera>& cameras,
                                         const GeometryBuffers& buffers, int stride) {
    std::vector<const UvTexture*> textures(cameras.size(), &texture);
    return cross_view_consistency(mesh, textures, cameras, buffers, stride);
}

ConsistencyReport cross_view_consistency(const TriangleMesh& mesh,
                                         const std::vector<const UvTexture*>& textures,
                                         const std::vector<Camera>& cameras,
                                         const GeometryBuffers& buffers, int stride) {
    ConsistencyReport report;
    if (cameras.size() < 2 || textures.size() != cameras.size()) return report;

    std::vector<ViewRender> renders;
    renders.reserve(cameras.size());
    for (size_t ci = 0; ci < cameras.size(); ++ci) {
        const Camera& camera = cameras[ci];
        renders.push_back(
            render_view(mesh, camera, camera.width(), camera.height(), textures[ci]));
    }

    // Collect sample points from valid texel centers.
    std::vector<Vec3> samples;
    if (stride <= 0) {
        const size_t target = 4096;
        const size_t valid = buffers.valid_count();
        stride = std::max<int>(1, static_cast<int>(std::ceil(
                                      std::sqrt(static_cast<double>(valid) / target))));
    }
    for (int row = 0; row < buffers.height; row += stride) {
        for (int col = 0; col < buffers.width; col += stride) {
            if (buffers.valid_mask.at(row, col)) {
                samples.push_back(buffers.position_at(row, col));
            }
        }
    }

    // Mutual visibility per camera via the oracle, cached per sample.
    std::vector<std::vector<uint8_t>> visible(cameras.size());
    std::vector<std::vector<Color>> sampled(cameras.size());
    for (size_t ci = 0; ci < cameras.size(); ++ci) {
        visible[ci].assign(samples.size(), 0);
        sampled[ci].assign(samples.size(), Color{});
        auto& vis = visible[ci];
        auto& col = sampled[ci];
        const ViewRender& render = renders[ci];
        const double depth_tolerance = 4.0 * 1.8 / cameras[ci].height();
        parallel_for(0, static_cast<int64_t>(samples.size()), [&](int64_t si) {
            Camera::Projection proj;
            if (oracle_visible(mesh, cameras[ci], render, samples[si], depth_tolerance,
                               &proj)) {
                vis[si] = 1;
                const int px = std::min(static_cast<int>(proj.x), render.width - 1);
                const int py = std::min(static_cast<int>(proj.y), render.height - 1);
                col[si] = render.color_map[static_cast<size_t>(py) * render.width + px];
            }
        });
    }

    double total = 0.0;
    size_t total_count = 0;
    for (size_t a = 0; a < cameras.size(); ++a) {
        for (size_t b = a + 1; b < cameras.size(); ++b) {
            double sum = 0.0;
            size_t count = 0;
            for (size_t si = 0; si < samples.size(); ++si) {
                if (!visible[a][si] || !visible[b][si]) continue;
                sum += mean_abs_diff(sampled[a][si], sampled[b][si]);
                ++count;
            }
            report.pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
            report.pair_mean.push_back(count > 0 ? sum / count : 0.0);
            total += sum;
            total_count += count;
        }
    }
    report.overall_mean = total_count > 0 ? total / total_count : 0.0;
    report.samples = total_count;
    return report;
}

}  // namespace texweave
