#pragma once

#include <array>
#include <span>

#include "cineloop/mask.hpp"
#include "cineloop/raster.hpp"

namespace cineloop {

/// Root-mean-square difference on the 0..255 scale over all pixels and channels.
double rmse(const ImageRGB& a, const ImageRGB& b);
/// As above, restricted to cells where `mask` is set.
double rmse(const ImageRGB& a, const ImageRGB& b, const Mask& mask);

namespace msssim {
inline constexpr std::array<double, 5> kScaleWeights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
inline constexpr int kWindow = 11;
inline constexpr double kSigma = 1.5;
inline constexpr double kK1 = 0.01;
inline constexpr double kK2 = 0.03;
inline constexpr double kDynamicRange = 1.0;
}  // namespace msssim

/// Number of MS-SSIM scales usable for an image of this size (0 if too small).
int ms_ssim_scale_count(Size size);

/// Multi-scale SSIM on luminance (0.299 R + 0.587 G + 0.114 B), valid-mode
/// 11x11 Gaussian window, 2x2 average downsampling between scales. Fewer
/// scales are used (weights renormalized) when the image is small. Result is
/// clamped to [0, 1].
double ms_ssim(const ImageRGB& a, const ImageRGB& b);

/// Max absolute per-value difference between the first and last frame.
double loop_gap(std::span<const ImageRGB> frames);

}  // namespace cineloop
