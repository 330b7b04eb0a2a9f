// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#include "texweave/fields.hpp"

#include <cmath>

#include "texweave/error.hpp"

namespace texweave {

namespace {

Color checker_field(const Vec3& p) {
    const double f = 4.0;
    const int parity = (static_cast<int>(std::floor(p.x * f)) +
                        static_cast<int>(std::floor(p.y * f)) +
                        static_cast<int>(std::floor(p.z * f))) &
                       1;
    return parity ? Color(0.9f, 0.85f, 0.1f) : Color(0.1f, 0.2f, 0.75f);
}

Color stripes_field(const Vec3& p) {
    const int band = static_cast<int>(std::floor((p.y + 3.0) * 5.0)) % 3;
    switch (band) {
        case 0: return Color(0.85f, 0.15f, 0.15f);
        case 1: return Color(0.15f, 0.8f, 0.25f);
        default: return Color(0.95f, 0.95f, 0.9f);
    }
}

Color trig_field(const Vec3& p) {
    // Smooth and bandlimited; the round-trip error of a bake is then pure
    // resampling error.
    auto unit = [](double v) { return static_cast<float>(0.5 + 0.5 * v); };
    return Color(unit(std::sin(3.0 * p.x) * std::cos(2.0 * p.y)),
                 unit(std::sin(2.5 * p.y + 1.0)),
                 unit(std::cos(3.5 * p.z + 0.5)));
}

}  // namespace

ColorField make_color_field(const std::string& id) {
    if (id == "constant") return [](const Vec3&) { return Color(0.5f, 0.5f, 0.5f); };
    if (id == "checker") return checker_field;
    if (id == "stripes") return stripes_field;
    if (id == "trig") return trig_field;
    throw Error(ErrorCode::UnknownField, "unknown color field: " + id);
}

std::vector<std::string> color_field_names() {
    return {"constant", "checker", "stripes", "trig"};
}

}  // namespace texweave
