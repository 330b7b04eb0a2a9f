// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/camera.hpp"

#include <cmath>

#include "texweave/error.hpp"

namespace texweave {

namespace {
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}

Camera::Camera(double azimuth_deg, double elevation_deg, double radius, double fov_y_deg,
               int width, int height)
    : azimuth_deg_(azimuth_deg), elevation_deg_(elevation_deg), radius_(radius),
      fov_y_deg_(fov_y_deg), width_(width), height_(height) {
    if (radius <= 0.0) throw Error(ErrorCode::InvalidArgument, "camera radius must be > 0");
    if (fov_y_deg <= 0.0 || fov_y_deg >= 180.0) {
        throw Error(ErrorCode::InvalidArgument, "fov_y must lie in (0, 180)");
    }
    if (width < 1 || height < 1) {
        throw Error(ErrorCode::InvalidArgument, "camera resolution must be positive");
    }

    const double az = azimuth_deg * kDegToRad;
    const double el = elevation_deg * kDegToRad;
    position_ = Vec3{radius * std::cos(el) * std::sin(az), radius * std::sin(el),
                     radius * std::cos(el) * std::cos(az)};
    forward_ = normalized(Vec3{0, 0, 0} - position_);
    Vec3 world_up{0.0, 1.0, 0.0};
    Vec3 r = cross(forward_, world_up);
    if (norm(r) < 1e-9) {
        // Looking straight up or down; fall back to an azimuth-aligned right.
        world_up = Vec3{std::cos(az), 0.0, -std::sin(az)};
        r = cross(forward_, world_up);
    }
    right_ = normalized(r);
    up_ = cross(right_, forward_);
    tan_half_fov_y_ = std::tan(0.5 * fov_y_deg * kDegToRad);
    aspect_ = static_cast<double>(width) / height;
}

Vec3 Camera::to_camera(const Vec3& world_point) const {
    const Vec3 d = world_point - position_;
    return {dot(d, right_), dot(d, up_), dot(d, forward_)};
}

Camera::Projection Camera::project(const Vec3& world_point) const {
    Projection p;
    const Vec3 c = to_camera(world_point);
    p.cam_z = c.z;
    p.depth = norm(world_point - position_);
    if (c.z <= 0.0) return p;
    const double ndc_x = c.x / (c.z * tan_half_fov_y_ * aspect_);
    const double ndc_y = c.y / (c.z * tan_half_fov_y_);
    p.x = (ndc_x * 0.5 + 0.5) * width_;
    p.y = (0.5 - ndc_y * 0.5) * height_;
    p.in_image = p.x >= 0.0 && p.x < width_ && p.y >= 0.0 && p.y < height_;
    return p;
}

Vec3 Camera::pixel_ray(double x, double y) const {
    const double ndc_x = x / width_ * 2.0 - 1.0;
    const double ndc_y = 1.0 - y / height_ * 2.0;
    const Vec3 dir = forward_ + right_ * (ndc_x * tan_half_fov_y_ * aspect_) +
                     up_ * (ndc_y * tan_half_fov_y_);
    return normalized(dir);
}

std::vector<Camera> default_view_ring(int n, double elevation_deg, double radius,
                                      double fov_y_deg, int width, int height) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "view count must be >= 1");
    std::vector<Camera> cameras;
    cameras.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double azimuth = 360.0 * i / n;
        const double elevation = (i % 2 == 0) ? elevation_deg : -elevation_deg;
        cameras.emplace_back(azimuth, elevation, radius, fov_y_deg, width, height);
    }
    return cameras;
}

}  // namespace texweave
