// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "texweave/kdtree.hpp"

using namespace texweave;
using namespace texweave::testing;

namespace {

std::vector<Vec3> random_points(size_t n, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Vec3> points(n);
    for (Vec3& p : points) p = {dist(rng), dist(rng), dist(rng)};
    return points;
}

}  // namespace

TEST_CASE("knn matches the brute-force oracle on random point sets") {
    const std::vector<Vec3> points = random_points(500, 42);
    std::vector<int> subset;
    for (int i = 0; i < 500; i += 2) subset.push_back(i);  // index every other point
    const SpatialIndex index(points, subset);
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> dist(-1.2, 1.2);
    for (int q = 0; q < 200; ++q) {
        const Vec3 query{dist(rng), dist(rng), dist(rng)};
        const int k = 1 + q % 12;
        const auto got = index.knn(query, k);
        const auto expected = brute_knn(points, subset, query, k);
        REQUIRE(got.size() == expected.size());
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].index == expected[i].index);
            CHECK(got[i].distance == doctest::Approx(expected[i].distance).epsilon(1e-12));
        }
    }
}

TEST_CASE("duplicate points tie-break to the smaller original index") {
    std::vector<Vec3> points = {{0, 0, 0}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {2, 2, 2}};
    const SpatialIndex index(points);
    const auto got = index.knn({1, 1, 1}, 2);
    REQUIRE(got.size() == 2);
    CHECK(got[0].index == 1);
    CHECK(got[1].index == 2);
    CHECK(got[0].distance == 0.0);
}

TEST_CASE("k greater than the subset returns everything sorted") {
    const std::vector<Vec3> points = {{0, 0, 0}, {0, 0, 3}, {0, 0, 1}};
    const SpatialIndex index(points);
    const auto got = index.knn({0, 0, 0}, 10);
    REQUIRE(got.size() == 3);
    CHECK(got[0].index == 0);
    CHECK(got[1].index == 2);
    CHECK(got[2].index == 1);
    CHECK(got[0].distance <= got[1].distance);
    CHECK(got[1].distance <= got[2].distance);
}

TEST_CASE("empty index returns nothing") {
    const SpatialIndex index(std::vector<Vec3>{}, std::vector<int>{});
    CHECK(index.knn({0, 0, 0}, 3).empty());
    CHECK(index.empty());
}

TEST_CASE("results are sorted ascending by distance on clustered data") {
    // Clustered data stresses the splitting heuristic.
    std::vector<Vec3> points;
    std::mt19937 rng(9);
    std::normal_distribution<double> tight(0.0, 0.01);
    for (int c = 0; c < 5; ++c) {
        const Vec3 center{c * 1.0, 0.0, 0.0};
        for (int i = 0; i < 100; ++i) {
            points.push_back(center + Vec3{tight(rng), tight(rng), tight(rng)});
        }
    }
    const SpatialIndex index(points);
    std::vector<int> all(points.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    for (int q = 0; q < 50; ++q) {
        const Vec3 query{q * 0.1, 0.05, -0.02};
        const auto got = index.knn(query, 20);
        const auto expected = brute_knn(points, all, query, 20);
        REQUIRE(got.size() == 20);
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].index == expected[i].index);
        }
        for (size_t i = 1; i < got.size(); ++i) {
            CHECK(got[i - 1].distance <= got[i].distance);
        }
    }
}
