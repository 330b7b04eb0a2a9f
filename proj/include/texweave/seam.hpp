// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "texweave/cloud.hpp"
#include "texweave/image.hpp"

namespace texweave {

struct SeamMask {
    Mask mask;             // seam texels, subset of valid texels
    int band_radius = 0;   // band width in texels used to generate it
    size_t chart_count = 0;
    size_t seam_texels = 0;
};

// 4-connected component labeling of a mask. Labels start at 0; invalid texels
// get -1. Returns the component count.
size_t label_components(const Mask& mask, Grid<int32_t>& labels);

// Chart boundary texels are valid texels 4-adjacent to an invalid texel
// inside the image. The seam band is every valid texel within Chebyshev
// distance band_radius-1 of a boundary texel, so band_radius is the band
// width in texels.
SeamMask detect_seams(const Mask& valid_mask, int band_radius);

struct SeamSmoothOptions {
    int k = 8;
    bool use_robust_map = true;  // gate normal similarity through robust_map
};

// Neighbor count that lets the query ball bridge a seam band: non-seam points
// start band_radius texels from the boundary on either side, so the ball must
// grow quadratically with the band to reach both charts.
inline int scaled_seam_k(int k, int band_radius) {
    return k * (band_radius + 1) * (band_radius + 1);
}

struct SeamSmoothReport {
    size_t seam_points = 0;
    size_t non_seam_points = 0;
};

// Recolors seam points from their k nearest non-seam neighbors in 3D with the
// same inverse-distance x normal-gate weighting used by inpainting. Non-seam
// points are untouched; a single pass.
SeamSmoothReport smooth_seam_points(TexelCloud& cloud, const SeamMask& seam, const SeamSmoothOptions& options = {});

// Mean per-channel color difference between nearest cross-chart seam point
// pairs within pair_radius; 0 when no such pairs exist. chart_labels must
// label the valid mask the cloud was built from.
double seam_energy(const TexelCloud& cloud, const SeamMask& seam,
                   const Grid<int32_t>& chart_labels, double pair_radius);

}  // namespace texweave
