#pragma once

#include <cstdint>

#include "cineloop/field.hpp"
#include "cineloop/mask.hpp"
#include "cineloop/raster.hpp"

namespace cineloop {

struct SyntheticScene {
  ImageRGB image;
  Mask mask;
  FlowField flow;
};

/// A horizontal dynamic band whose texture is periodic in x with period
/// frames * speed, so a loop of `frames` frames translating at `speed`
/// px/frame has an exact ground truth. The static surroundings are
/// deliberately non-periodic.
struct TranslationScene {
  Size size{128, 128};
  int frames = 8;
  double speed = 1.0;

  int band_top() const { return size.height * 3 / 8; }
  int band_bottom() const { return size.height * 5 / 8; }
  double period() const { return frames * speed; }
};

SyntheticScene make_scene(const TranslationScene& config);

/// Expected frame t: band content shifted right by t * speed, statics unchanged.
ImageRGB ground_truth_frame(const TranslationScene& config, int t);

/// Landscape-like test image: sky gradient, textured water, dark shore.
ImageRGB make_demo_image(Size size, std::uint32_t seed);

/// Dynamic region of the demo scene (the water band, with a wavy edge).
Mask make_demo_mask(Size size, std::uint32_t seed);

}  // namespace cineloop
