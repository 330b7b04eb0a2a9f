// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "texweave/error.hpp"
#include "texweave/image.hpp"
#include "texweave/image_io.hpp"

using namespace texweave;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rgb png round-trips at 8-bit precision") {
    RgbImage image(7, 5);
    for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 7; ++col) {
            image.at(row, col) = Color(row / 4.0f, col / 6.0f, (row + col) / 10.0f);
        }
    }
    const std::string path = temp_path("texweave_rt.png");
    write_rgb_png(path, image);
    const RgbImage back = read_rgb_png(path);
    REQUIRE(back.width == 7);
    REQUIRE(back.height == 5);
    for (int row = 0; row < 5; ++row) {
        for (int col = 0; col < 7; ++col) {
            CHECK(max_abs_diff(back.at(row, col), image.at(row, col)) <= 0.5f / 255.0f + 1e-6f);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("mask png round-trips bit-exactly") {
    Mask mask(9, 4, 0);
    mask.at(1, 2) = 1;
    mask.at(3, 8) = 1;
    const std::string path = temp_path("texweave_mask.png");
    write_mask_png(path, mask);
    CHECK(read_mask_png(path) == mask);
    std::remove(path.c_str());
}

TEST_CASE("depth png round-trips within quantization, infinities preserved") {
    Grid<double> depth(6, 3, std::numeric_limits<double>::infinity());
    depth.at(0, 0) = 0.0;
    depth.at(1, 2) = 1.3;
    depth.at(2, 5) = 2.6;
    const double depth_max = 2.6;
    const std::string path = temp_path("texweave_depth.png");
    write_depth_png(path, depth, depth_max);
    const Grid<double> back = read_depth_png(path, depth_max);
    CHECK(back.at(0, 0) == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(back.at(1, 2) == doctest::Approx(1.3).epsilon(1e-4));
    CHECK(std::isinf(back.at(0, 3)));
    // The top code is reserved for misses, so a finite depth_max pixel stays
    // finite (one quantization step below).
    CHECK(std::isfinite(back.at(2, 5)));
    CHECK(back.at(2, 5) == doctest::Approx(2.6).epsilon(1e-3));
    std::remove(path.c_str());
}

TEST_CASE("reading a missing PNG raises Io") {
    try {
        read_rgb_png("/nonexistent/definitely_missing.png");
        FAIL("expected Io error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
}

TEST_CASE("bilinear sampling interpolates between texel centers") {
    RgbImage image(2, 1);
    image.at(0, 0) = Color(0.0f, 0.0f, 0.0f);
    image.at(0, 1) = Color(1.0f, 1.0f, 1.0f);
    CHECK(image.sample_bilinear(0.5, 0.5).r == doctest::Approx(0.0));
    CHECK(image.sample_bilinear(1.5, 0.5).r == doctest::Approx(1.0));
    CHECK(image.sample_bilinear(1.0, 0.5).r == doctest::Approx(0.5));
}

TEST_CASE("uv sampling respects the v-up origin") {
    UvTexture texture(2, 2);
    texture.at(0, 0) = Color(1, 0, 0);  // top-left
    texture.at(1, 0) = Color(0, 1, 0);  // bottom-left
    // v=0 must land on the bottom row.
    const Color bottom = texture.sample_uv(0.25, 0.25);
    CHECK(bottom.g > bottom.r);
    const Color top = texture.sample_uv(0.25, 0.75);
    CHECK(top.r > top.g);
}

TEST_CASE("texel_center_uv and sample_uv agree") {
    UvTexture texture(8, 8);
    texture.at(3, 5) = Color(0.7f, 0.2f, 0.4f);
    const Vec2 uv = texel_center_uv(3, 5, 8, 8);
    CHECK(max_abs_diff(texture.sample_uv(uv.x, uv.y), texture.at(3, 5)) < 1e-6f);
}

TEST_CASE("mismatched resolutions raise the dedicated error") {
    try {
        require_same_resolution(4, 4, 8, 8, "test");
        FAIL("expected MismatchedResolutions");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MismatchedResolutions);
    }
}
