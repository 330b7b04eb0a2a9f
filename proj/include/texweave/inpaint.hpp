// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "texweave/cloud.hpp"

namespace texweave {

// Piecewise gate on normal-cosine similarity: near-suppression below 0.5,
// pass-through in [0.5, 0.9), strong boost at [0.9, 1].
double robust_map(double x);

struct InpaintOptions {
    int k = 8;            // neighbors per query
    int max_rounds = 64;  // propagation round limit
    bool normal_gating = true;  // apply robust_map to the normal similarity
};

// Combines inverse-distance weights with the normal-similarity gate and
// renormalizes to sum 1. distances and normal_dots are per painted neighbor;
// distances get a 1e-12 floor. With normal_gating false the gate is the
// constant 1.
std::vector<double> aggregation_weights(std::span<const double> distances,
                                        std::span<const double> normal_dots,
                                        bool normal_gating = true);

struct InpaintReport {
    int rounds = 0;
    size_t initially_painted = 0;
    size_t filled = 0;
    size_t straggler_filled = 0;  // nearest-neighbor fallback after max_rounds
};

// Propagates color from painted to unpainted points in Jacobi rounds: each
// round snapshots the painted set, builds a spatial index over it, and colors
// every unpainted point from its k nearest painted neighbors. Every point is
// painted on return.
InpaintReport inpaint_cloud(TexelCloud& cloud, const InpaintOptions& options = {});

}  // namespace texweave
