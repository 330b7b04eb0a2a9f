// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "texweave/vec.hpp"

namespace texweave {

// Balanced kd-tree over a subset of a point array. Queries return exactly
// min(k, subset size) results sorted ascending by distance; equal distances
// break ties toward the smaller original point index, so results are fully
// deterministic.
class SpatialIndex {
public:
    struct Neighbor {
        double distance = 0.0;
        int index = -1;  // index into the original point array
    };

    SpatialIndex() = default;

    // Indexes points[subset[i]] for all i. The point array must outlive
    // queries only through the copies taken here.
    SpatialIndex(const std::vector<Vec3>& points, const std::vector<int>& subset);

    // Indexes every point.
    explicit SpatialIndex(const std::vector<Vec3>& points);

    size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    void knn(const Vec3& query, int k, std::vector<Neighbor>& out) const;
    std::vector<Neighbor> knn(const Vec3& query, int k) const;

private:
    struct Node {
        double split = 0.0;
        int axis = -1;  // -1 marks a leaf
        int left = -1;
        int right = -1;
        int begin = 0;
        int end = 0;
    };

    void build(int node, int begin, int end);

    std::vector<Vec3> points_;    // reordered copies
    std::vector<int> ids_;        // original indices, parallel to points_
    std::vector<int> order_;      // build-time permutation workspace
    std::vector<Node> nodes_;

    static constexpr int kLeafSize = 16;
};

}  // namespace texweave
