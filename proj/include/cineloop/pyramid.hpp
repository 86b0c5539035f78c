#pragma once

#include <vector>

#include "cineloop/raster.hpp"

namespace cineloop {

inline constexpr int kDefaultPyramidLevels = 5;

/// Laplacian feature pyramid. levels[0] is the coarsest (the Gaussian base);
/// every later level is a band-pass residual at twice the previous size.
struct FeaturePyramid {
  std::vector<FeatureMap> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
  const FeatureMap& finest() const { return levels.back(); }
};

/// Throws unless the levels form a dyadic size chain with a common channel count.
void check_dyadic_chain(const FeaturePyramid& pyramid);

/// Binomial [1 4 6 4 1]/16 blur followed by 2x decimation.
FeatureMap downsample(const FeatureMap& map);

/// Zero insertion to `target` (twice the size) followed by the binomial blur
/// with gain 2 per axis.
FeatureMap upsample(const FeatureMap& map, Size target);

FeaturePyramid analyze(const ImageRGB& image, int levels = kDefaultPyramidLevels);

/// Coarse-to-fine reconstruction without the final clamp.
FeatureMap synthesize_unclamped(const FeaturePyramid& pyramid);

/// Reconstruction clamped to [0, 1].
ImageRGB synthesize(const FeaturePyramid& pyramid);

}  // namespace cineloop
