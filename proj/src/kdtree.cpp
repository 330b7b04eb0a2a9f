// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace texweave {

namespace {

inline double axis_value(const Vec3& p, int axis) {
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

}  // namespace

SpatialIndex::SpatialIndex(const std::vector<Vec3>& points) {
    std::vector<int> all(points.size());
    std::iota(all.begin(), all.end(), 0);
    *this = SpatialIndex(points, all);
}

SpatialIndex::SpatialIndex(const std::vector<Vec3>& points, const std::vector<int>& subset) {
    points_.reserve(subset.size());
    ids_.reserve(subset.size());
    for (int id : subset) {
        points_.push_back(points[id]);
        ids_.push_back(id);
    }
    if (points_.empty()) return;
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    nodes_.push_back({});
    build(0, 0, static_cast<int>(points_.size()));

    // Freeze the permutation into the point storage itself.
    std::vector<Vec3> pts(points_.size());
    std::vector<int> ids(points_.size());
    for (size_t i = 0; i < order_.size(); ++i) {
        pts[i] = points_[order_[i]];
        ids[i] = ids_[order_[i]];
    }
    points_ = std::move(pts);
    ids_ = std::move(ids);
    order_.clear();
    order_.shrink_to_fit();
}

void SpatialIndex::build(int node, int begin, int end) {
    if (end - begin <= kLeafSize) {
        nodes_[node].axis = -1;
        nodes_[node].begin = begin;
        nodes_[node].end = end;
        return;
    }

    Vec3 lo = points_[order_[begin]];
    Vec3 hi = lo;
    for (int i = begin + 1; i < end; ++i) {
        const Vec3& p = points_[order_[i]];
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    const Vec3 extent = hi - lo;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > axis_value(extent, axis)) axis = 2;

    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) {
                         const double va = axis_value(points_[a], axis);
                         const double vb = axis_value(points_[b], axis);
                         if (va != vb) return va < vb;
                         return ids_[a] < ids_[b];
                     });

    nodes_[node].axis = axis;
    nodes_[node].split = axis_value(points_[order_[mid]], axis);

    const int left = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[node].left = left;
    build(left, begin, mid);

    const int right = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[node].right = right;
    build(right, mid, end);
}

void SpatialIndex::knn(const Vec3& query, int k, std::vector<Neighbor>& out) const {
    out.clear();
    if (points_.empty() || k <= 0) return;
    k = std::min<int>(k, static_cast<int>(points_.size()));

    // Max-heap keyed by (distance^2, original index); top is the current
    // worst candidate, so equal distances keep the smaller index.
    struct Cand {
        double d2;
        int id;
        bool operator<(const Cand& o) const {
            if (d2 != o.d2) return d2 < o.d2;
            return id < o.id;
        }
    };
    std::priority_queue<Cand> heap;

    auto visit_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const Vec3 d = points_[i] - query;
            const double d2 = dot(d, d);
            Cand cand{d2, ids_[i]};
            if (static_cast<int>(heap.size()) < k) {
                heap.push(cand);
            } else if (cand < heap.top()) {
                heap.pop();
                heap.push(cand);
            }
        }
    };

    // Iterative traversal, nearer child first.
    struct Frame {
        int node;
        double plane_d2;  // squared distance to the splitting plane on entry
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0.0});
    while (!stack.empty()) {
        Frame frame = stack.back();
        stack.pop_back();
        if (static_cast<int>(heap.size()) == k && frame.plane_d2 > heap.top().d2) continue;
        const Node& node = nodes_[frame.node];
        if (node.axis < 0) {
            visit_range(node.begin, node.end);
            continue;
        }
        const double delta = axis_value(query, node.axis) - node.split;
        const int near_child = delta <= 0.0 ? node.left : node.right;
        const int far_child = delta <= 0.0 ? node.right : node.left;
        stack.push_back({far_child, delta * delta});
        stack.push_back({near_child, 0.0});
    }

    out.resize(heap.size());
    for (int i = static_cast<int>(heap.size()) - 1; i >= 0; --i) {
        out[i] = {std::sqrt(heap.top().d2), heap.top().id};
        heap.pop();
    }
}

std::vector<SpatialIndex::Neighbor> SpatialIndex::knn(const Vec3& query, int k) const {
    std::vector<Neighbor> out;
    knn(query, k, out);
    return out;
}

}  // namespace texweave
