// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "texweave/mesh.hpp"

namespace texweave::testing {

// OBJ text snippets for loader tests.
std::string single_triangle_obj();
std::string quad_obj();
std::string bad_index_obj();
std::string missing_uv_obj();
std::string cube_obj();

// A flat square in the z=0 plane (normal +z), two triangles, one chart
// covering most of the UV square.
TriangleMesh make_quad(double half_size = 1.0);

// Unit cube with 8 shared vertices and 6 separate UV charts. Face diagonals
// follow the inscribed-tetrahedron pattern, so the area-weighted vertex
// normals come out exactly radial: normalize(+-1, +-1, +-1).
TriangleMesh make_unit_cube();

// Regular octahedron, 8 triangle charts.
TriangleMesh make_octahedron();

// UV sphere (equirectangular single chart, no polar caps). radius applies
// before any normalization.
TriangleMesh make_uv_sphere(int segments, int rings, double radius = 1.0);

// Two planes meeting at a right angle along the x axis: A spans x-z with
// normal +y, B hangs down with normal +z. Separate charts.
TriangleMesh make_two_perpendicular_planes(int divisions);

// Two coplanar squares sharing the 3D edge x=0 in the z=0 plane but living in
// separate UV charts; the classic seam fixture.
TriangleMesh make_abutting_charts(int divisions);

// Small front quad at z=front_z occluding part of a larger back quad at
// z=back_z, both facing +z. Separate charts.
TriangleMesh make_stacked_quads(double front_half, double back_half, double front_z,
                                double back_z);

// Open-top box ("cup"): four outward walls plus an interior floor that is
// only visible through the opening; deep cavities leave the floor unobserved
// from ring cameras.
TriangleMesh make_cup(double half_width, double height, int divisions);

// rows x cols separate tiles of the z=0 plane, each its own UV chart.
TriangleMesh make_chart_grid(int rows, int cols);

}  // namespace texweave::testing
