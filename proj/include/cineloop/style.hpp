#pragma once

#include <array>

#include "cineloop/raster.hpp"

namespace cineloop {

inline constexpr double kMinStyleStd = 1e-4;

/// Target per-channel color statistics plus the interpolation weight beta.
struct StyleParams {
  std::array<double, 3> mean{};
  std::array<double, 3> stddev{1.0, 1.0, 1.0};
  double beta = 0.0;
};

/// Throws unless beta is in [0, 1] and every stddev is positive.
void validate(const StyleParams& params);

/// Per-channel population mean and standard deviation (floored at 1e-4).
/// beta is left at 0.
StyleParams fit_style(const ImageRGB& target);

/// Per-channel affine color transform fitted to a source image:
///   T(x) = (x - mu_src) * sd_target / sd_src + mu_target
/// and applied as x + beta * (T(x) - x).
class StyleTransform {
 public:
  StyleTransform(const ImageRGB& source, const StyleParams& params);

  /// Unclamped result; equals image + delta(image) exactly.
  ImageRGB apply(const ImageRGB& image) const;
  /// beta * (T(x) - x).
  ImageRGB delta(const ImageRGB& image) const;

 private:
  std::array<double, 3> gain_{};
  std::array<double, 3> offset_{};
  double beta_;
};

/// Moment-matching color transfer interpolated by beta, before clamping.
ImageRGB apply_style_unclamped(const ImageRGB& image, const StyleParams& params);

/// apply_style_unclamped clamped to [0, 1].
ImageRGB apply_style(const ImageRGB& image, const StyleParams& params);

/// Signed difference apply_style_unclamped(image) - image.
ImageRGB style_delta(const ImageRGB& image, const StyleParams& params);

}  // namespace cineloop
