// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "texweave/image.hpp"

namespace texweave {

// 8-bit RGB PNG. Color channels are mapped linearly between [0,1] and
// [0,255] with round-to-nearest on write.
RgbImage read_rgb_png(const std::string& path);
void write_rgb_png(const std::string& path, const RgbImage& image);

// 8-bit grayscale PNG for masks (255 = set).
Mask read_mask_png(const std::string& path);
void write_mask_png(const std::string& path, const Mask& mask);

// 16-bit grayscale PNG for depth maps with linear [0, depth_max] -> [0, 65535]
// mapping. Non-finite depths are stored as 65535.
void write_depth_png(const std::string& path, const Grid<double>& depth, double depth_max);
Grid<double> read_depth_png(const std::string& path, double depth_max);

// Texture color plane as 8-bit RGB PNG.
void write_texture_png(const std::string& path, const UvTexture& texture);

}  // namespace texweave
