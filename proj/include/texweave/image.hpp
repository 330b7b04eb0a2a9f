// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "texweave/error.hpp"
#include "texweave/vec.hpp"

namespace texweave {

// Row-major single-channel raster. Row 0 is the top of the image.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(static_cast<size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }
    size_t size() const { return data_.size(); }

    T& at(int row, int col) { return data_[static_cast<size_t>(row) * width_ + col]; }
    const T& at(int row, int col) const {
        return data_[static_cast<size_t>(row) * width_ + col];
    }
    T& operator[](size_t i) { return data_[i]; }
    const T& operator[](size_t i) const { return data_[i]; }

    bool in_bounds(int row, int col) const {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Grid& o) const {
        return width_ == o.width_ && height_ == o.height_ && data_ == o.data_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using Mask = Grid<uint8_t>;

// 8-bit RGB raster used for view images.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<Color> pixels;  // row-major, row 0 top

    RgbImage() = default;
    RgbImage(int w, int h, Color fill = Color{}) : width(w), height(h) {
        pixels.assign(static_cast<size_t>(w) * h, fill);
    }

    Color& at(int row, int col) { return pixels[static_cast<size_t>(row) * width + col]; }
    const Color& at(int row, int col) const {
        return pixels[static_cast<size_t>(row) * width + col];
    }

    // Bilinear sample at continuous pixel coordinates where (col+0.5, row+0.5)
    // is the center of pixel (row, col). Clamps to the image border.
    Color sample_bilinear(double x, double y) const;
};

// Multi-channel UV texture with chart-coverage and painted masks.
// UV convention: u spans columns left to right, v=0 maps to the bottom
// image row (row height-1).
struct UvTexture {
    int width = 0;
    int height = 0;
    std::vector<Color> pixels;
    Mask valid;
    Mask painted;

    UvTexture() = default;
    UvTexture(int w, int h)
        : width(w), height(h), pixels(static_cast<size_t>(w) * h), valid(w, h, 0),
          painted(w, h, 0) {}

    Color& at(int row, int col) { return pixels[static_cast<size_t>(row) * width + col]; }
    const Color& at(int row, int col) const {
        return pixels[static_cast<size_t>(row) * width + col];
    }

    // Bilinear sample at UV coordinates in [0,1]^2, honoring the v-up origin.
    Color sample_uv(double u, double v) const;

    size_t valid_count() const;
    size_t painted_count() const;
};

// UV coordinates of the center of texel (row, col) on a w x h grid.
inline Vec2 texel_center_uv(int row, int col, int w, int h) {
    return {(col + 0.5) / w, 1.0 - (row + 0.5) / h};
}

// Bilinear lookup into a row-major color buffer at continuous pixel
// coordinates; clamps at the border.
Color sample_color_bilinear(const std::vector<Color>& pixels, int width, int height,
                            double x, double y);

void require_same_resolution(int w1, int h1, int w2, int h2, const char* context);

}  // namespace texweave
