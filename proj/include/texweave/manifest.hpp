// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "texweave/camera.hpp"
#include "texweave/image.hpp"

namespace texweave {

// One entry of the view manifest. Image paths are relative to the manifest
// file unless absolute. depth/depth_max are present when depth maps were
// exported alongside the images.
struct ViewManifestEntry {
    std::string image;
    double azimuth = 0.0;
    double elevation = 0.0;
    double radius = 2.2;
    double fov_y = 45.0;
    int width = 512;
    int height = 512;
    std::optional<std::string> depth;
    std::optional<double> depth_max;
};

struct ViewManifest {
    std::vector<ViewManifestEntry> views;
};

ViewManifest read_view_manifest(const std::string& path);
void write_view_manifest(const std::string& path, const ViewManifest& manifest);

// Loads the manifest plus all referenced view images.
struct LoadedViews {
    std::vector<Camera> cameras;
    std::vector<RgbImage> images;
};
LoadedViews load_views(const std::string& manifest_path);

}  // namespace texweave
