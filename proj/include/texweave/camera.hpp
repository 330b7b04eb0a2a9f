// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "texweave/vec.hpp"

namespace texweave {

// Orbit camera looking at the origin. Convention: y is up, azimuth 0 puts the
// camera on the +z axis and rotates toward +x, elevation tilts toward +y.
// Projection is a standard pinhole with a vertical field of view; pixel
// (row, col) has its center at continuous image coordinates (col+0.5, row+0.5)
// with row 0 at the top.
class Camera {
public:
    Camera(double azimuth_deg, double elevation_deg, double radius, double fov_y_deg,
           int width, int height);

    double azimuth_deg() const { return azimuth_deg_; }
    double elevation_deg() const { return elevation_deg_; }
    double radius() const { return radius_; }
    double fov_y_deg() const { return fov_y_deg_; }
    int width() const { return width_; }
    int height() const { return height_; }

    const Vec3& position() const { return position_; }
    const Vec3& forward() const { return forward_; }
    const Vec3& right() const { return right_; }
    const Vec3& up() const { return up_; }
    // View direction: from the camera toward the look-at target.
    Vec3 view_direction() const { return forward_; }

    struct Projection {
        double x = 0.0;         // continuous image coordinates
        double y = 0.0;
        double depth = 0.0;     // Euclidean distance camera -> point
        double cam_z = 0.0;     // distance along the forward axis
        bool in_image = false;  // inside [0,W]x[0,H] and in front of the camera
    };

    Projection project(const Vec3& world_point) const;

    // Camera-space coordinates (right, up, forward) of a world point.
    Vec3 to_camera(const Vec3& world_point) const;

    // Unit world-space direction of the ray through continuous image
    // coordinates (x, y).
    Vec3 pixel_ray(double x, double y) const;

private:
    double azimuth_deg_;
    double elevation_deg_;
    double radius_;
    double fov_y_deg_;
    int width_;
    int height_;

    Vec3 position_;
    Vec3 forward_;
    Vec3 right_;
    Vec3 up_;
    double tan_half_fov_y_;
    double aspect_;
};

// N cameras with evenly distributed azimuths 360*i/n and elevations
// alternating +e, -e starting with +e.
std::vector<Camera> default_view_ring(int n, double elevation_deg, double radius,
                                      double fov_y_deg, int width, int height);

}  // namespace texweave
