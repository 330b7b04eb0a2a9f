// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "texweave/error.hpp"

namespace texweave {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

uint8_t to_byte(float v) {
    float c = std::min(std::max(v, 0.0f), 1.0f);
    return static_cast<uint8_t>(std::lround(c * 255.0f));
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    }
};

// Decodes any PNG into 8- or 16-bit rows of the requested color type.
std::vector<std::vector<png_byte>> read_png_rows(const std::string& path, int target_color,
                                                 int target_depth, int* out_w, int* out_h) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) throw Error(ErrorCode::Io, "cannot open PNG for reading: " + path);

    png_byte header[8];
    if (std::fread(header, 1, 8, file.get()) != 8 || png_sig_cmp(header, 0, 8) != 0) {
        throw Error(ErrorCode::Parse, "not a PNG file: " + path);
    }

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) throw Error(ErrorCode::Io, "png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) throw Error(ErrorCode::Io, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(r.png))) {
        throw Error(ErrorCode::Parse, "PNG decode error: " + path);
    }

    png_init_io(r.png, file.get());
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    png_uint_32 width = png_get_image_width(r.png, r.info);
    png_uint_32 height = png_get_image_height(r.png, r.info);
    int color_type = png_get_color_type(r.png, r.info);
    int bit_depth = png_get_bit_depth(r.png, r.info);

    if (bit_depth == 16 && target_depth == 8) png_set_strip_16(r.png);
    if (bit_depth < 8) png_set_packing(r.png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);

    if (target_color == PNG_COLOR_TYPE_RGB) {
        if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(r.png);
        png_set_strip_alpha(r.png);
    } else if (target_color == PNG_COLOR_TYPE_GRAY) {
        if (color_type == PNG_COLOR_TYPE_RGB || color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
            color_type == PNG_COLOR_TYPE_PALETTE)
            png_set_rgb_to_gray_fixed(r.png, 1, -1, -1);
        png_set_strip_alpha(r.png);
    }
    if (target_depth == 16 && bit_depth == 8) png_set_expand_16(r.png);
    if (target_depth == 16) png_set_swap(r.png);  // libpng reads big-endian words

    png_read_update_info(r.png, r.info);

    std::vector<std::vector<png_byte>> rows(height);
    size_t rowbytes = png_get_rowbytes(r.png, r.info);
    std::vector<png_bytep> row_ptrs(height);
    for (png_uint_32 y = 0; y < height; ++y) {
        rows[y].resize(rowbytes);
        row_ptrs[y] = rows[y].data();
    }
    png_read_image(r.png, row_ptrs.data());
    png_read_end(r.png, nullptr);

    *out_w = static_cast<int>(width);
    *out_h = static_cast<int>(height);
    return rows;
}

void write_png_rows(const std::string& path, int width, int height, int color_type,
                    int bit_depth, const std::vector<std::vector<png_byte>>& rows) {
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) throw Error(ErrorCode::Io, "cannot open PNG for writing: " + path);

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) throw Error(ErrorCode::Io, "png_create_write_struct failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) throw Error(ErrorCode::Io, "png_create_info_struct failed");
    if (setjmp(png_jmpbuf(w.png))) {
        throw Error(ErrorCode::Io, "PNG encode error: " + path);
    }

    png_init_io(w.png, file.get());
    png_set_IHDR(w.png, w.info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    if (bit_depth == 16) png_set_swap(w.png);

    for (const auto& row : rows) {
        png_write_row(w.png, const_cast<png_bytep>(row.data()));
    }
    png_write_end(w.png, nullptr);
}

}  // namespace

RgbImage read_rgb_png(const std::string& path) {
    int w = 0, h = 0;
    auto rows = read_png_rows(path, PNG_COLOR_TYPE_RGB, 8, &w, &h);
    RgbImage image(w, h);
    for (int y = 0; y < h; ++y) {
        const png_byte* row = rows[y].data();
        for (int x = 0; x < w; ++x) {
            image.at(y, x) = Color(row[x * 3] / 255.0f, row[x * 3 + 1] / 255.0f,
                                   row[x * 3 + 2] / 255.0f);
        }
    }
    return image;
}

void write_rgb_png(const std::string& path, const RgbImage& image) {
    std::vector<std::vector<png_byte>> rows(image.height);
    for (int y = 0; y < image.height; ++y) {
        rows[y].resize(static_cast<size_t>(image.width) * 3);
        for (int x = 0; x < image.width; ++x) {
            const Color& c = image.at(y, x);
            rows[y][x * 3] = to_byte(c.r);
            rows[y][x * 3 + 1] = to_byte(c.g);
            rows[y][x * 3 + 2] = to_byte(c.b);
        }
    }
    write_png_rows(path, image.width, image.height, PNG_COLOR_TYPE_RGB, 8, rows);
}

Mask read_mask_png(const std::string& path) {
    int w = 0, h = 0;
    auto rows = read_png_rows(path, PNG_COLOR_TYPE_GRAY, 8, &w, &h);
    Mask mask(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            mask.at(y, x) = rows[y][x] >= 128 ? 1 : 0;
        }
    }
    return mask;
}

void write_mask_png(const std::string& path, const Mask& mask) {
    std::vector<std::vector<png_byte>> rows(mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        rows[y].resize(mask.width());
        for (int x = 0; x < mask.width(); ++x) {
            rows[y][x] = mask.at(y, x) ? 255 : 0;
        }
    }
    write_png_rows(path, mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, 8, rows);
}

void write_depth_png(const std::string& path, const Grid<double>& depth, double depth_max) {
    if (depth_max <= 0.0) throw Error(ErrorCode::InvalidArgument, "depth_max must be > 0");
    std::vector<std::vector<png_byte>> rows(depth.height());
    for (int y = 0; y < depth.height(); ++y) {
        rows[y].resize(static_cast<size_t>(depth.width()) * 2);
        auto* row16 = reinterpret_cast<uint16_t*>(rows[y].data());
        for (int x = 0; x < depth.width(); ++x) {
            double d = depth.at(y, x);
            uint16_t q = 65535;  // reserved for misses
            if (std::isfinite(d)) {
                double t = std::min(std::max(d / depth_max, 0.0), 1.0);
                q = static_cast<uint16_t>(std::min(std::lround(t * 65535.0), 65534L));
            }
            row16[x] = q;
        }
    }
    write_png_rows(path, depth.width(), depth.height(), PNG_COLOR_TYPE_GRAY, 16, rows);
}

Grid<double> read_depth_png(const std::string& path, double depth_max) {
    int w = 0, h = 0;
    auto rows = read_png_rows(path, PNG_COLOR_TYPE_GRAY, 16, &w, &h);
    Grid<double> depth(w, h, std::numeric_limits<double>::infinity());
    for (int y = 0; y < h; ++y) {
        const auto* row16 = reinterpret_cast<const uint16_t*>(rows[y].data());
        for (int x = 0; x < w; ++x) {
            uint16_t q = row16[x];
            depth.at(y, x) = q == 65535 ? std::numeric_limits<double>::infinity()
                                        : q / 65535.0 * depth_max;
        }
    }
    return depth;
}

void write_texture_png(const std::string& path, const UvTexture& texture) {
    RgbImage image(texture.width, texture.height);
    image.pixels = texture.pixels;
    write_rgb_png(path, image);
}

}  // namespace texweave
