// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/inpaint.hpp"

#include <algorithm>
#include <cmath>

#include "texweave/error.hpp"
#include "texweave/kdtree.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

double robust_map(double x) {
    if (std::fabs(x) > 1.0 + 1e-9) {
        throw Error(ErrorCode::Domain, "robust_map input outside [-1, 1]");
    }
    if (x < 0.5) return 1e-8;
    if (x < 0.9) return x;
    return 10.0;
}

std::vector<double> aggregation_weights(std::span<const double> distances,
                                        std::span<const double> normal_dots,
                                        bool normal_gating) {
    if (distances.empty()) {
        throw Error(ErrorCode::NoNeighbors, "aggregation_weights needs at least one neighbor");
    }
    if (distances.size() != normal_dots.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "aggregation_weights: distances and normal_dots differ in length");
    }

    const size_t n = distances.size();
    std::vector<double> inv_d(n);
    double inv_sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
        inv_d[j] = 1.0 / std::max(distances[j], 1e-12);
        inv_sum += inv_d[j];
    }

    std::vector<double> weights(n);
    double raw_sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
        const double gate = normal_gating ? robust_map(normal_dots[j]) : 1.0;
        weights[j] = inv_d[j] / inv_sum * gate;
        raw_sum += weights[j];
    }
    for (double& w : weights) w /= raw_sum;
    return weights;
}

InpaintReport inpaint_cloud(TexelCloud& cloud, const InpaintOptions& options) {
    if (options.k < 1) throw Error(ErrorCode::InvalidArgument, "inpaint_cloud requires k >= 1");
    InpaintReport report;
    report.initially_painted = cloud.painted_count();
    if (cloud.size() == 0) return report;
    if (report.initially_painted == 0) {
        throw Error(ErrorCode::NoPaintedSeed, "inpaint_cloud needs at least one painted point");
    }

    std::vector<int> unpainted;
    for (size_t i = 0; i < cloud.size(); ++i) {
        if (!cloud.painted[i]) unpainted.push_back(static_cast<int>(i));
    }

    std::vector<int> painted_ids;
    while (!unpainted.empty() && report.rounds < options.max_rounds) {
        painted_ids.clear();
        for (size_t i = 0; i < cloud.size(); ++i) {
            if (cloud.painted[i]) painted_ids.push_back(static_cast<int>(i));
        }
        const SpatialIndex index(cloud.positions, painted_ids);

        // Jacobi: all queries see this round's snapshot; colors land in a
        // scratch array and points flip to painted only at the round barrier.
        std::vector<Color> new_colors(unpainted.size());
        parallel_for(0, static_cast<int64_t>(unpainted.size()), [&](int64_t qi) {
            const int point = unpainted[qi];
            thread_local std::vector<SpatialIndex::Neighbor> neighbors;
            index.knn(cloud.positions[point], options.k, neighbors);
            thread_local std::vector<double> dists, dots;
            dists.resize(neighbors.size());
            dots.resize(neighbors.size());
            for (size_t j = 0; j < neighbors.size(); ++j) {
                dists[j] = neighbors[j].distance;
                dots[j] = std::clamp(
                    dot(cloud.normals[neighbors[j].index], cloud.normals[point]), -1.0, 1.0);
            }
            const std::vector<double> weights =
                aggregation_weights(dists, dots, options.normal_gating);
            double r = 0.0, g = 0.0, b = 0.0;
            for (size_t j = 0; j < neighbors.size(); ++j) {
                const Color& c = cloud.colors[neighbors[j].index];
                r += weights[j] * c.r;
                g += weights[j] * c.g;
                b += weights[j] * c.b;
            }
            new_colors[qi] = Color(static_cast<float>(r), static_cast<float>(g),
                                   static_cast<float>(b));
        });

        for (size_t qi = 0; qi < unpainted.size(); ++qi) {
            cloud.colors[unpainted[qi]] = new_colors[qi];
            cloud.painted[unpainted[qi]] = 1;
        }
        report.filled += unpainted.size();
        unpainted.clear();
        ++report.rounds;
    }

    if (!unpainted.empty()) {
        // Round budget exhausted: stragglers copy their nearest painted point.
        painted_ids.clear();
        for (size_t i = 0; i < cloud.size(); ++i) {
            if (cloud.painted[i]) painted_ids.push_back(static_cast<int>(i));
        }
        const SpatialIndex index(cloud.positions, painted_ids);
        std::vector<Color> new_colors(unpainted.size());
        parallel_for(0, static_cast<int64_t>(unpainted.size()), [&](int64_t qi) {
            thread_local std::vector<SpatialIndex::Neighbor> neighbors;
            index.knn(cloud.positions[unpainted[qi]], 1, neighbors);
            new_colors[qi] = cloud.colors[neighbors[0].index];
        });
        for (size_t qi = 0; qi < unpainted.size(); ++qi) {
            cloud.colors[unpainted[qi]] = new_colors[qi];
            cloud.painted[unpainted[qi]] = 1;
        }
        report.straggler_filled = unpainted.size();
        report.filled += unpainted.size();
    }
    return report;
}

}  // namespace texweave
