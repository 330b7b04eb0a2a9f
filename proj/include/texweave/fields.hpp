// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "texweave/vec.hpp"

namespace texweave {

// Procedural color fields: pure functions of 3D position, so the same surface
// point yields the same color from every viewpoint by construction.
using ColorField = std::function<Color(const Vec3&)>;

// Known ids: "constant", "checker", "stripes", "trig".
ColorField make_color_field(const std::string& id);

std::vector<std::string> color_field_names();

}  // namespace texweave
