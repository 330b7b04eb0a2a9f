// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/raster.hpp"

#include <algorithm>
#include <cmath>

#include "texweave/error.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Edge function in y-down raster space; positive on the interior side for a
// triangle with positive signed area.
inline double edge(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

// Top-left fill rule so texels on shared edges get exactly one owner.
inline bool edge_is_top_left(double ax, double ay, double bx, double by) {
    const double dx = bx - ax;
    const double dy = by - ay;
    return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

struct RasterVertex {
    double x = 0.0;
    double y = 0.0;
};

// Shared scanline loop: calls emit(row, col, w0, w1, w2) for every covered
// pixel center, with barycentric weights in vertex order.
template <typename Emit>
void scan_triangle_rows(const RasterVertex v[3], int width, int row_begin, int row_end,
                        Emit&& emit) {
    double area2 = edge(v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y);
    int i1 = 1, i2 = 2;
    if (area2 == 0.0) return;
    if (area2 < 0.0) {
        std::swap(i1, i2);
        area2 = -area2;
    }
    const RasterVertex& a = v[0];
    const RasterVertex& b = v[i1];
    const RasterVertex& c = v[i2];

    const bool tl_ab = edge_is_top_left(a.x, a.y, b.x, b.y);
    const bool tl_bc = edge_is_top_left(b.x, b.y, c.x, c.y);
    const bool tl_ca = edge_is_top_left(c.x, c.y, a.x, a.y);

    const double min_x = std::min({a.x, b.x, c.x});
    const double max_x = std::max({a.x, b.x, c.x});
    const double min_y = std::min({a.y, b.y, c.y});
    const double max_y = std::max({a.y, b.y, c.y});

    const int col_lo = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
    const int col_hi = std::min(width - 1, static_cast<int>(std::ceil(max_x - 0.5)));
    const int row_lo = std::max(row_begin, static_cast<int>(std::floor(min_y - 0.5)));
    const int row_hi = std::min(row_end - 1, static_cast<int>(std::ceil(max_y - 0.5)));

    for (int row = row_lo; row <= row_hi; ++row) {
        const double py = row + 0.5;
        for (int col = col_lo; col <= col_hi; ++col) {
            const double px = col + 0.5;
            const double e_bc = edge(b.x, b.y, c.x, c.y, px, py);
            const double e_ca = edge(c.x, c.y, a.x, a.y, px, py);
            const double e_ab = edge(a.x, a.y, b.x, b.y, px, py);
            const bool inside = (e_bc > 0.0 || (e_bc == 0.0 && tl_bc)) &&
                                (e_ca > 0.0 || (e_ca == 0.0 && tl_ca)) &&
                                (e_ab > 0.0 || (e_ab == 0.0 && tl_ab));
            if (!inside) continue;
            double w0 = e_bc / area2;
            double wi1 = e_ca / area2;
            double wi2 = e_ab / area2;
            if (i1 == 2) std::swap(wi1, wi2);  // undo the orientation swap
            emit(row, col, w0, wi1, wi2);
        }
    }
}

// Rows covered by a triangle, clamped to the grid.
std::pair<int, int> row_span(const RasterVertex v[3], int height) {
    const double min_y = std::min({v[0].y, v[1].y, v[2].y});
    const double max_y = std::max({v[0].y, v[1].y, v[2].y});
    int lo = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
    int hi = std::min(height - 1, static_cast<int>(std::ceil(max_y - 0.5)));
    return {lo, hi};
}

}  // namespace

size_t GeometryBuffers::valid_count() const {
    size_t n = 0;
    for (size_t i = 0; i < valid_mask.size(); ++i) n += valid_mask[i] ? 1 : 0;
    return n;
}

double ViewRender::max_finite_depth() const {
    double m = 0.0;
    for (size_t i = 0; i < depth_map.size(); ++i) {
        if (std::isfinite(depth_map[i])) m = std::max(m, depth_map[i]);
    }
    return m;
}

GeometryBuffers rasterize_uv(const TriangleMesh& mesh, int width, int height,
                             bool flat_normals) {
    if (width < 16 || height < 16) {
        throw Error(ErrorCode::ResolutionTooSmall,
                    "UV rasterization requires at least 16x16 texels");
    }

    GeometryBuffers buffers;
    buffers.width = width;
    buffers.height = height;
    buffers.position_map.assign(static_cast<size_t>(width) * height, Vec3{});
    buffers.normal_map.assign(static_cast<size_t>(width) * height, Vec3{});
    buffers.valid_mask = Mask(width, height, 0);
    buffers.face_id_map = Grid<int32_t>(width, height, kInvalidFace);

    // Texel space: x = u * W, y = (1 - v) * H, texel centers at half-integers.
    std::vector<std::array<RasterVertex, 3>> tex_verts(mesh.face_count());
    std::vector<std::vector<int32_t>> row_faces(height);
    for (size_t f = 0; f < mesh.face_count(); ++f) {
        for (int k = 0; k < 3; ++k) {
            const Vec2& uv = mesh.uv_corners[f][k];
            tex_verts[f][k] = {uv.x * width, (1.0 - uv.y) * height};
        }
        auto [lo, hi] = row_span(tex_verts[f].data(), height);
        for (int row = lo; row <= hi; ++row) {
            row_faces[row].push_back(static_cast<int32_t>(f));
        }
    }

    std::vector<size_t> row_overlaps(height, 0);
    parallel_for(0, height, [&](int64_t row_i) {
        const int row = static_cast<int>(row_i);
        for (int32_t f : row_faces[row]) {
            const auto& fv = mesh.faces[f];
            scan_triangle_rows(
                tex_verts[f].data(), width, row, row + 1,
                [&](int r, int c, double w0, double w1, double w2) {
                    const Vec3 pos = mesh.vertices[fv[0]] * w0 + mesh.vertices[fv[1]] * w1 +
                                     mesh.vertices[fv[2]] * w2;
                    Vec3 nrm;
                    if (flat_normals) {
                        nrm = normalized(mesh.face_normal(f));
                    } else {
                        nrm = normalized(mesh.vertex_normals[fv[0]] * w0 +
                                         mesh.vertex_normals[fv[1]] * w1 +
                                         mesh.vertex_normals[fv[2]] * w2);
                    }
                    const size_t idx = static_cast<size_t>(r) * width + c;
                    if (buffers.face_id_map[idx] != kInvalidFace) ++row_overlaps[r];
                    buffers.position_map[idx] = pos;
                    buffers.normal_map[idx] = nrm;
                    buffers.valid_mask[idx] = 1;
                    buffers.face_id_map[idx] = f;
                });
        }
    });
    for (size_t n : row_overlaps) buffers.overlap_count += n;
    return buffers;
}

namespace {

// Camera-space vertex with the attributes carried through clipping.
struct ClipVertex {
    Vec3 cam;
    Vec3 world;
    Vec3 normal;
    Vec2 uv;
};

ClipVertex lerp(const ClipVertex& a, const ClipVertex& b, double t) {
    ClipVertex out;
    out.cam = a.cam + (b.cam - a.cam) * t;
    out.world = a.world + (b.world - a.world) * t;
    out.normal = a.normal + (b.normal - a.normal) * t;
    out.uv = a.uv + (b.uv - a.uv) * t;
    return out;
}

// Sutherland-Hodgman against the z = near plane in camera space.
int clip_near(const ClipVertex in[3], double near_z, ClipVertex out[4]) {
    int count = 0;
    for (int i = 0; i < 3; ++i) {
        const ClipVertex& cur = in[i];
        const ClipVertex& nxt = in[(i + 1) % 3];
        const bool cur_in = cur.cam.z >= near_z;
        const bool nxt_in = nxt.cam.z >= near_z;
        if (cur_in) out[count++] = cur;
        if (cur_in != nxt_in) {
            const double t = (near_z - cur.cam.z) / (nxt.cam.z - cur.cam.z);
            out[count++] = lerp(cur, nxt, t);
        }
    }
    return count;
}

struct ScreenVertex {
    double x = 0.0;
    double y = 0.0;
    double inv_z = 0.0;
    Vec3 world_over_z;
    Vec3 normal_over_z;
    Vec2 uv_over_z;
};

struct ScreenTriangle {
    ScreenVertex v[3];
};

}  // namespace

ViewRender render_view(const TriangleMesh& mesh, const Camera& camera, int width,
                       int height, const UvTexture* texture) {
    ViewRender render;
    render.width = width;
    render.height = height;
    render.depth_map = Grid<double>(width, height, kInf);
    render.normal_map.assign(static_cast<size_t>(width) * height, Vec3{});
    render.hit_mask = Mask(width, height, 0);
    if (texture) {
        render.color_map.assign(static_cast<size_t>(width) * height, Color{});
    }

    const double near_z = 1e-4;
    const double tan_y = std::tan(0.5 * camera.fov_y_deg() * 3.14159265358979323846 / 180.0);
    const double aspect = static_cast<double>(width) / height;

    auto to_screen = [&](const ClipVertex& cv) {
        ScreenVertex sv;
        const double z = cv.cam.z;
        sv.inv_z = 1.0 / z;
        sv.x = (cv.cam.x / (z * tan_y * aspect) * 0.5 + 0.5) * width;
        sv.y = (0.5 - cv.cam.y / (z * tan_y) * 0.5) * height;
        sv.world_over_z = cv.world * sv.inv_z;
        sv.normal_over_z = cv.normal * sv.inv_z;
        sv.uv_over_z = cv.uv * sv.inv_z;
        return sv;
    };

    // Clip sequentially so the emission order (and therefore z-tie handling)
    // is independent of threading.
    std::vector<ScreenTriangle> triangles;
    triangles.reserve(mesh.face_count());
    std::vector<std::vector<int32_t>> row_triangles(height);
    for (size_t f = 0; f < mesh.face_count(); ++f) {
        ClipVertex cv[3];
        for (int k = 0; k < 3; ++k) {
            const int vi = mesh.faces[f][k];
            cv[k].world = mesh.vertices[vi];
            cv[k].cam = camera.to_camera(cv[k].world);
            cv[k].normal = mesh.vertex_normals[vi];
            cv[k].uv = mesh.uv_corners[f][k];
        }
        ClipVertex clipped[4];
        const int n = clip_near(cv, near_z, clipped);
        for (int t = 0; t < n - 2; ++t) {
            ScreenTriangle st;
            st.v[0] = to_screen(clipped[0]);
            st.v[1] = to_screen(clipped[t + 1]);
            st.v[2] = to_screen(clipped[t + 2]);
            RasterVertex rv[3] = {{st.v[0].x, st.v[0].y},
                                  {st.v[1].x, st.v[1].y},
                                  {st.v[2].x, st.v[2].y}};
            auto [lo, hi] = row_span(rv, height);
            if (lo > hi) continue;
            const int32_t id = static_cast<int32_t>(triangles.size());
            triangles.push_back(st);
            for (int row = lo; row <= hi; ++row) {
                row_triangles[row].push_back(id);
            }
        }
    }

    parallel_for(0, height, [&](int64_t row_i) {
        const int row = static_cast<int>(row_i);
        for (int32_t id : row_triangles[row]) {
            const ScreenTriangle& st = triangles[id];
            RasterVertex rv[3] = {{st.v[0].x, st.v[0].y},
                                  {st.v[1].x, st.v[1].y},
                                  {st.v[2].x, st.v[2].y}};
            scan_triangle_rows(rv, width, row, row + 1,
                               [&](int r, int c, double w0, double w1, double w2) {
                                   const double inv_z = st.v[0].inv_z * w0 +
                                                        st.v[1].inv_z * w1 +
                                                        st.v[2].inv_z * w2;
                                   const Vec3 world = (st.v[0].world_over_z * w0 +
                                                       st.v[1].world_over_z * w1 +
                                                       st.v[2].world_over_z * w2) /
                                                      inv_z;
                                   const double dist = norm(world - camera.position());
                                   const size_t idx = static_cast<size_t>(r) * width + c;
                                   if (dist >= render.depth_map[idx]) return;
                                   render.depth_map[idx] = dist;
                                   render.hit_mask[idx] = 1;
                                   const Vec3 nrm = normalized((st.v[0].normal_over_z * w0 +
                                                                st.v[1].normal_over_z * w1 +
                                                                st.v[2].normal_over_z * w2) /
                                                               inv_z);
                                   render.normal_map[idx] = nrm;
                                   if (texture) {
                                       const Vec2 uv = (st.v[0].uv_over_z * w0 +
                                                        st.v[1].uv_over_z * w1 +
                                                        st.v[2].uv_over_z * w2) /
                                                       inv_z;
                                       render.color_map[idx] =
                                           texture->sample_uv(uv.x, uv.y);
                                   }
                               });
        }
    });

    return render;
}

}  // namespace texweave
