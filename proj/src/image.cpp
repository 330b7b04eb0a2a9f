// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace texweave {

namespace {

Color bilinear(const std::vector<Color>& pixels, int width, int height, double x, double y) {
    // x,y are continuous pixel coordinates; pixel centers at (col+0.5, row+0.5).
    double fx = x - 0.5;
    double fy = y - 0.5;
    int x0 = static_cast<int>(std::floor(fx));
    int y0 = static_cast<int>(std::floor(fy));
    double tx = fx - x0;
    double ty = fy - y0;
    auto clampi = [](int v, int lo, int hi) { return std::min(std::max(v, lo), hi); };
    int x1 = clampi(x0 + 1, 0, width - 1);
    int y1 = clampi(y0 + 1, 0, height - 1);
    x0 = clampi(x0, 0, width - 1);
    y0 = clampi(y0, 0, height - 1);
    const Color& c00 = pixels[static_cast<size_t>(y0) * width + x0];
    const Color& c10 = pixels[static_cast<size_t>(y0) * width + x1];
    const Color& c01 = pixels[static_cast<size_t>(y1) * width + x0];
    const Color& c11 = pixels[static_cast<size_t>(y1) * width + x1];
    auto lerp = [](float a, float b, double t) {
        return static_cast<float>(a + (b - a) * t);
    };
    Color top{lerp(c00.r, c10.r, tx), lerp(c00.g, c10.g, tx), lerp(c00.b, c10.b, tx)};
    Color bot{lerp(c01.r, c11.r, tx), lerp(c01.g, c11.g, tx), lerp(c01.b, c11.b, tx)};
    return {lerp(top.r, bot.r, ty), lerp(top.g, bot.g, ty), lerp(top.b, bot.b, ty)};
}

}  // namespace

Color sample_color_bilinear(const std::vector<Color>& pixels, int width, int height,
                            double x, double y) {
    return bilinear(pixels, width, height, x, y);
}

Color RgbImage::sample_bilinear(double x, double y) const {
    return bilinear(pixels, width, height, x, y);
}

Color UvTexture::sample_uv(double u, double v) const {
    // v=0 is the bottom row; flip to image row space.
    double x = u * width;
    double y = (1.0 - v) * height;
    return bilinear(pixels, width, height, x, y);
}

size_t UvTexture::valid_count() const {
    size_t n = 0;
    for (size_t i = 0; i < valid.size(); ++i) n += valid[i] ? 1 : 0;
    return n;
}

size_t UvTexture::painted_count() const {
    size_t n = 0;
    for (size_t i = 0; i < painted.size(); ++i) n += painted[i] ? 1 : 0;
    return n;
}

void require_same_resolution(int w1, int h1, int w2, int h2, const char* context) {
    if (w1 != w2 || h1 != h2) {
        throw Error(ErrorCode::MismatchedResolutions,
                    std::string(context) + ": resolutions differ (" + std::to_string(w1) +
                        "x" + std::to_string(h1) + " vs " + std::to_string(w2) + "x" +
                        std::to_string(h2) + ")");
    }
}

}  // namespace texweave
