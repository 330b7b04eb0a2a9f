// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/enhance.hpp"

#include <algorithm>
#include <cmath>

#include "texweave/error.hpp"
#include "texweave/parallel.hpp"

namespace texweave {

UvTexture dilate(const UvTexture& texture, int radius, Mask* dilated_mask) {
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "dilate radius must be >= 0");
    UvTexture out = texture;
    Mask filled(texture.width, texture.height, 0);
    if (radius > 0) {
        const int w = texture.width;
        const int h = texture.height;
        parallel_for(0, h, [&](int64_t row_i) {
            const int row = static_cast<int>(row_i);
            for (int col = 0; col < w; ++col) {
                if (texture.valid.at(row, col)) continue;
                // Expand Chebyshev rings; within a ring the scan runs in
                // scanline order, which is the tie-break.
                for (int r = 1; r <= radius; ++r) {
                    int src_row = -1, src_col = -1;
                    for (int dr = -r; dr <= r && src_row < 0; ++dr) {
                        const int rr = row + dr;
                        if (rr < 0 || rr >= h) continue;
                        const bool edge_row = dr == -r || dr == r;
                        const int step = edge_row ? 1 : 2 * r;
                        for (int dc = -r; dc <= r; dc += step) {
                            const int cc = col + dc;
                            if (cc < 0 || cc >= w) continue;
                            if (texture.valid.at(rr, cc)) {
                                src_row = rr;
                                src_col = cc;
                                break;
                            }
                        }
                    }
                    if (src_row >= 0) {
                        out.at(row, col) = texture.at(src_row, src_col);
                        filled.at(row, col) = 1;
                        break;
                    }
                }
            }
        });
    }
    if (dilated_mask) *dilated_mask = std::move(filled);
    return out;
}

namespace {

double lanczos3(double x) {
    x = std::fabs(x);
    if (x >= 3.0) return 0.0;
    if (x < 1e-12) return 1.0;
    const double pi = 3.14159265358979323846;
    const double px = pi * x;
    return 3.0 * std::sin(px) * std::sin(px / 3.0) / (px * px);
}

// One separable pass along x; transposing twice gives the full 2D resample.
RgbImage resample_rows(const RgbImage& in, int factor) {
    RgbImage out(in.width * factor, in.height);
    const int support = 3;
    parallel_for(0, in.height, [&](int64_t row_i) {
        const int row = static_cast<int>(row_i);
        for (int ox = 0; ox < out.width; ++ox) {
            const double sx = (ox + 0.5) / factor - 0.5;
            const int lo = static_cast<int>(std::ceil(sx - support));
            const int hi = static_cast<int>(std::floor(sx + support));
            double wsum = 0.0;
            double r = 0.0, g = 0.0, b = 0.0;
            for (int i = lo; i <= hi; ++i) {
                const double w = lanczos3(sx - i);
                if (w == 0.0) continue;
                const int ci = std::clamp(i, 0, in.width - 1);
                const Color& c = in.at(row, ci);
                r += w * c.r;
                g += w * c.g;
                b += w * c.b;
                wsum += w;
            }
            out.at(row, ox) = Color(static_cast<float>(std::clamp(r / wsum, 0.0, 1.0)),
                                    static_cast<float>(std::clamp(g / wsum, 0.0, 1.0)),
                                    static_cast<float>(std::clamp(b / wsum, 0.0, 1.0)));
        }
    });
    return out;
}

RgbImage transpose(const RgbImage& in) {
    RgbImage out(in.height, in.width);
    for (int row = 0; row < in.height; ++row) {
        for (int col = 0; col < in.width; ++col) {
            out.at(col, row) = in.at(row, col);
        }
    }
    return out;
}

}  // namespace

LanczosUpscaler::LanczosUpscaler(int factor) : factor_(factor) {
    if (factor < 1) throw Error(ErrorCode::InvalidArgument, "upscale factor must be >= 1");
}

RgbImage LanczosUpscaler::run(const RgbImage& colors) const {
    if (factor_ == 1) return colors;
    RgbImage horizontal = resample_rows(colors, factor_);
    RgbImage vertical = resample_rows(transpose(horizontal), factor_);
    return transpose(vertical);
}

UvTexture upscale(const UvTexture& texture, const Upscaler& upscaler) {
    const int factor = upscaler.factor();
    if (factor < 1) throw Error(ErrorCode::UpscalerMismatch, "upscale factor must be >= 1");

    RgbImage colors(texture.width, texture.height);
    colors.pixels = texture.pixels;
    RgbImage resampled = upscaler.run(colors);
    if (resampled.width != texture.width * factor ||
        resampled.height != texture.height * factor) {
        throw Error(ErrorCode::UpscalerMismatch,
                    "upscaler '" + upscaler.name() + "' violated its factor contract");
    }

    UvTexture out(resampled.width, resampled.height);
    out.pixels = std::move(resampled.pixels);
    for (int row = 0; row < out.height; ++row) {
        for (int col = 0; col < out.width; ++col) {
            const uint8_t v = texture.valid.at(row / factor, col / factor);
            out.valid.at(row, col) = v;
            out.painted.at(row, col) = v;
        }
    }
    return out;
}

}  // namespace texweave
