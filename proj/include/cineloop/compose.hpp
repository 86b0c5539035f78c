#pragma once

#include <optional>
#include <vector>

#include "cineloop/field.hpp"
#include "cineloop/mask.hpp"
#include "cineloop/pyramid.hpp"
#include "cineloop/raster.hpp"
#include "cineloop/style.hpp"
#include "cineloop/warp.hpp"

namespace cineloop {

/// Everything needed to render one looping video.
struct CinemagraphJob {
  ImageRGB image;
  Mask mask;        ///< resampled (nearest) to the image and to the flow as needed
  FlowField flow;   ///< at its own base resolution
  LoopSpec loop;
  int levels = kDefaultPyramidLevels;
  std::optional<StyleParams> style;
  /// When set, the input image is bilinearly resized to this size first.
  std::optional<Size> output_size;
};

struct RenderOptions {
  int threads = 1;
  WarpOptions warp;
  /// Multiply the motion field by the mask before integration.
  bool mask_motion = true;
};

/// mask * dynamic + (1 - mask) * (image + delta), clamped to [0, 1].
ImageRGB composite_frame(const ImageRGB& dynamic, const ImageRGB& image, const Mask& mask,
                         const ImageRGB& delta);
/// Same with a zero delta.
ImageRGB composite_frame(const ImageRGB& dynamic, const ImageRGB& image, const Mask& mask);

/// Renders frames 0..N. Frames are rendered independently (optionally in
/// parallel) and the result is identical to sequential rendering.
std::vector<ImageRGB> render_loop(const CinemagraphJob& job, const RenderOptions& options = {});

}  // namespace cineloop
