// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/seam.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "texweave/error.hpp"
#include "texweave/inpaint.hpp"
#include "texweave/kdtree.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

size_t label_components(const Mask& mask, Grid<int32_t>& labels) {
    const int w = mask.width();
    const int h = mask.height();
    labels = Grid<int32_t>(w, h, -1);
    int32_t next = 0;
    std::vector<std::pair<int, int>> stack;
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            if (!mask.at(row, col) || labels.at(row, col) >= 0) continue;
            stack.push_back({row, col});
            labels.at(row, col) = next;
            while (!stack.empty()) {
                auto [r, c] = stack.back();
                stack.pop_back();
                const int nr[4] = {r - 1, r + 1, r, r};
                const int nc[4] = {c, c, c - 1, c + 1};
                for (int i = 0; i < 4; ++i) {
                    if (!mask.in_bounds(nr[i], nc[i])) continue;
                    if (!mask.at(nr[i], nc[i]) || labels.at(nr[i], nc[i]) >= 0) continue;
                    labels.at(nr[i], nc[i]) = next;
                    stack.push_back({nr[i], nc[i]});
                }
            }
            ++next;
        }
    }
    return static_cast<size_t>(next);
}

SeamMask detect_seams(const Mask& valid_mask, int band_radius) {
    if (band_radius < 1) {
        throw Error(ErrorCode::InvalidArgument, "seam band radius must be >= 1");
    }
    const int w = valid_mask.width();
    const int h = valid_mask.height();

    SeamMask seam;
    seam.band_radius = band_radius;
    Grid<int32_t> labels;
    seam.chart_count = label_components(valid_mask, labels);

    Mask band(w, h, 0);
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            if (!valid_mask.at(row, col)) continue;
            const int nr[4] = {row - 1, row + 1, row, row};
            const int nc[4] = {col, col, col - 1, col + 1};
            for (int i = 0; i < 4; ++i) {
                if (!valid_mask.in_bounds(nr[i], nc[i])) continue;  // image border is no seam
                if (!valid_mask.at(nr[i], nc[i])) {
                    band.at(row, col) = 1;
                    break;
                }
            }
        }
    }

    // Chebyshev dilation: band_radius - 1 rounds of 8-neighborhood growth.
    for (int round = 1; round < band_radius; ++round) {
        Mask grown = band;
        for (int row = 0; row < h; ++row) {
            for (int col = 0; col < w; ++col) {
                if (band.at(row, col)) continue;
                bool near = false;
                for (int dr = -1; dr <= 1 && !near; ++dr) {
                    for (int dc = -1; dc <= 1 && !near; ++dc) {
                        if (band.in_bounds(row + dr, col + dc) && band.at(row + dr, col + dc)) {
                            near = true;
                        }
                    }
                }
                if (near) grown.at(row, col) = 1;
            }
        }
        band = std::move(grown);
    }

    seam.mask = Mask(w, h, 0);
    for (int row = 0; row < h; ++row) {
        for (int col = 0; col < w; ++col) {
            if (band.at(row, col) && valid_mask.at(row, col)) {
                seam.mask.at(row, col) = 1;
                ++seam.seam_texels;
            }
        }
    }
    return seam;
}

SeamSmoothReport smooth_seam_points(TexelCloud& cloud, const SeamMask& seam, const SeamSmoothOptions& options) {
    if (!cloud.fully_painted()) {
        throw Error(ErrorCode::UnpaintedPoints, "smooth_seam_points requires a fully painted cloud");
    }
    std::vector<int> seam_points;
    std::vector<int> non_seam_points;
    for (size_t i = 0; i < cloud.size(); ++i) {
        const auto [row, col] = cloud.texel_index[i];
        if (seam.mask.in_bounds(row, col) && seam.mask.at(row, col)) {
            seam_points.push_back(static_cast<int>(i));
        } else {
            non_seam_points.push_back(static_cast<int>(i));
        }
    }

    SeamSmoothReport report;
    report.seam_points = seam_points.size();
    report.non_seam_points = non_seam_points.size();
    if (seam_points.empty()) return report;
    if (non_seam_points.empty()) {
        throw Error(ErrorCode::NoNonSeamPoints, "smooth_seam_points has no non-seam points to sample");
    }

    const SpatialIndex index(cloud.positions, non_seam_points);
    std::vector<Color> new_colors(seam_points.size());
    parallel_for(0, static_cast<int64_t>(seam_points.size()), [&](int64_t qi) {
        const int point = seam_points[qi];
        thread_local std::vector<SpatialIndex::Neighbor> neighbors;
        index.knn(cloud.positions[point], options.k, neighbors);
        thread_local std::vector<double> dists, dots;
        dists.resize(neighbors.size());
        dots.resize(neighbors.size());
        for (size_t j = 0; j < neighbors.size(); ++j) {
            dists[j] = neighbors[j].distance;
            dots[j] = std::clamp(dot(cloud.normals[neighbors[j].index], cloud.normals[point]),
                                 -1.0, 1.0);
        }
        std::vector<double> weights;
        if (options.use_robust_map) {
            weights = aggregation_weights(dists, dots, true);
        } else {
            // Raw-cosine variant of the weighting; negatives clamp to zero and
            // pure back-facing neighborhoods fall back to inverse distance.
            weights.resize(dists.size());
            double inv_sum = 0.0;
            for (double d : dists) inv_sum += 1.0 / std::max(d, 1e-12);
            double raw_sum = 0.0;
            for (size_t j = 0; j < dists.size(); ++j) {
                weights[j] = (1.0 / std::max(dists[j], 1e-12)) / inv_sum * std::max(dots[j], 0.0);
                raw_sum += weights[j];
            }
            if (raw_sum <= 0.0) {
                for (size_t j = 0; j < dists.size(); ++j) {
                    weights[j] = (1.0 / std::max(dists[j], 1e-12)) / inv_sum;
                    raw_sum += weights[j];
                }
            }
            for (double& w : weights) w /= raw_sum;
        }
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
    for (size_t qi = 0; qi < seam_points.size(); ++qi) {
        cloud.colors[seam_points[qi]] = new_colors[qi];
    }
    return report;
}

double seam_energy(const TexelCloud& cloud, const SeamMask& seam,
                   const Grid<int32_t>& chart_labels, double pair_radius) {
    std::vector<int> seam_points;
    for (size_t i = 0; i < cloud.size(); ++i) {
        const auto [row, col] = cloud.texel_index[i];
        if (seam.mask.in_bounds(row, col) && seam.mask.at(row, col)) {
            seam_points.push_back(static_cast<int>(i));
        }
    }
    if (seam_points.empty()) return 0.0;

    const SpatialIndex index(cloud.positions, seam_points);
    std::vector<double> partial(seam_points.size(), 0.0);
    std::vector<uint8_t> paired(seam_points.size(), 0);
    parallel_for(0, static_cast<int64_t>(seam_points.size()), [&](int64_t qi) {
        const int point = seam_points[qi];
        const auto [row, col] = cloud.texel_index[point];
        const int32_t own_chart = chart_labels.at(row, col);
        thread_local std::vector<SpatialIndex::Neighbor> neighbors;
        // Grow k until a cross-chart partner appears inside the radius or the
        // ball is exhausted.
        for (int k = 8;; k *= 2) {
            index.knn(cloud.positions[point], k, neighbors);
            for (const auto& nb : neighbors) {
                if (nb.distance > pair_radius) break;
                const auto [nr, nc] = cloud.texel_index[nb.index];
                if (chart_labels.at(nr, nc) != own_chart) {
                    partial[qi] = mean_abs_diff(cloud.colors[point], cloud.colors[nb.index]);
                    paired[qi] = 1;
                    return;
                }
            }
            const bool exhausted = static_cast<int>(neighbors.size()) < k ||
                                   neighbors.back().distance > pair_radius;
            if (exhausted) return;
        }
    });

    double sum = 0.0;
    size_t pairs = 0;
    for (size_t qi = 0; qi < seam_points.size(); ++qi) {
        if (paired[qi]) {
            sum += partial[qi];
            ++pairs;
        }
    }
    return pairs > 0 ? sum / pairs : 0.0;
}

}  // namespace texweave
