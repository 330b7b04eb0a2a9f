// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/manifest.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "texweave/error.hpp"
#include "texweave/image_io.hpp"

namespace texweave {

namespace fs = std::filesystem;
using nlohmann::json;

ViewManifest read_view_manifest(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::Io, "cannot open view manifest: " + path);
    json doc;
    try {
        file >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, "bad view manifest JSON: " + std::string(e.what()));
    }
    if (!doc.contains("views") || !doc["views"].is_array()) {
        throw Error(ErrorCode::Parse, "view manifest missing 'views' array");
    }
    ViewManifest manifest;
    for (const json& v : doc["views"]) {
        ViewManifestEntry entry;
        try {
            entry.image = v.at("image").get<std::string>();
            entry.azimuth = v.at("azimuth").get<double>();
            entry.elevation = v.at("elevation").get<double>();
            entry.radius = v.at("radius").get<double>();
            entry.fov_y = v.at("fov_y").get<double>();
            entry.width = v.at("width").get<int>();
            entry.height = v.at("height").get<int>();
            if (v.contains("depth")) entry.depth = v["depth"].get<std::string>();
            if (v.contains("depth_max")) entry.depth_max = v["depth_max"].get<double>();
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Parse, "bad view entry: " + std::string(e.what()));
        }
        manifest.views.push_back(std::move(entry));
    }
    if (manifest.views.empty()) {
        throw Error(ErrorCode::Parse, "view manifest lists no views");
    }
    return manifest;
}

void write_view_manifest(const std::string& path, const ViewManifest& manifest) {
    json views = json::array();
    for (const ViewManifestEntry& entry : manifest.views) {
        json v = {
            {"image", entry.image},   {"azimuth", entry.azimuth},
            {"elevation", entry.elevation}, {"radius", entry.radius},
            {"fov_y", entry.fov_y},   {"width", entry.width},
            {"height", entry.height},
        };
        if (entry.depth) v["depth"] = *entry.depth;
        if (entry.depth_max) v["depth_max"] = *entry.depth_max;
        views.push_back(std::move(v));
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::Io, "cannot write view manifest: " + path);
    file << json{{"views", views}}.dump(2) << "\n";
}

LoadedViews load_views(const std::string& manifest_path) {
    const ViewManifest manifest = read_view_manifest(manifest_path);
    const fs::path base = fs::path(manifest_path).parent_path();
    LoadedViews loaded;
    for (const ViewManifestEntry& entry : manifest.views) {
        loaded.cameras.emplace_back(entry.azimuth, entry.elevation, entry.radius, entry.fov_y,
                                    entry.width, entry.height);
        fs::path image_path = entry.image;
        if (image_path.is_relative()) image_path = base / image_path;
        RgbImage image = read_rgb_png(image_path.string());
        if (image.width != entry.width || image.height != entry.height) {
            throw Error(ErrorCode::MismatchedResolutions,
                        "view image size differs from manifest entry: " + entry.image);
        }
        loaded.images.push_back(std::move(image));
    }
    return loaded;
}

}  // namespace texweave
