// Copyright contributors to the texweave project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "texweave/image.hpp"

namespace texweave {

// Gutter fill: invalid texels within Chebyshev distance radius of a valid
// texel take the color of the nearest valid texel (ties resolve in scanline
// order). valid_mask stays unchanged; dilated_mask (optional) records the
// filled texels.
UvTexture dilate(const UvTexture& texture, int radius, Mask* dilated_mask = nullptr);

// Super-resolution seat. The diffusion upscaler this stands in for is an
// external stage; anything honoring the factor contract can be slotted in.
class Upscaler {
public:
    virtual ~Upscaler() = default;
    virtual int factor() const = 0;
    virtual std::string name() const = 0;
    // Resamples the color plane; output must be exactly factor() times the
    // input resolution, values clamped to [0,1].
    virtual RgbImage run(const RgbImage& colors) const = 0;
};

// Separable Lanczos-3 resampling. Tap weights are normalized per output
// pixel, so constants reproduce exactly.
class LanczosUpscaler : public Upscaler {
public:
    explicit LanczosUpscaler(int factor = 2);
    int factor() const override { return factor_; }
    std::string name() const override { return "lanczos3"; }
    RgbImage run(const RgbImage& colors) const override;

private:
    int factor_;
};

class IdentityUpscaler : public Upscaler {
public:
    int factor() const override { return 1; }
    std::string name() const override { return "identity"; }
    RgbImage run(const RgbImage& colors) const override { return colors; }
};

// Applies the upscaler to the color plane, upscales valid_mask by nearest
// neighbor and sets painted_mask to the upscaled valid_mask.
UvTexture upscale(const UvTexture& texture, const Upscaler& upscaler);

}  // namespace texweave
