#include "cineloop/style.hpp"

#include <algorithm>
#include <cmath>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

struct ChannelStats {
  std::array<double, 3> mean{};
  std::array<double, 3> stddev{};
};

ChannelStats channel_stats(const ImageRGB& image) {
  ChannelStats stats;
  const double n = static_cast<double>(image.pixel_count());
  const auto data = image.data();
  for (int c = 0; c < 3; ++c) {
    double sum = 0.0;
    for (std::size_t i = c; i < data.size(); i += 3) sum += data[i];
    const double mean = sum / n;
    double sq = 0.0;
    for (std::size_t i = c; i < data.size(); i += 3) sq += (data[i] - mean) * (data[i] - mean);
    stats.mean[c] = mean;
    stats.stddev[c] = std::max(std::sqrt(sq / n), kMinStyleStd);
  }
  return stats;
}

}  // namespace

void validate(const StyleParams& params) {
  if (!(params.beta >= 0.0 && params.beta <= 1.0)) throw Error("style beta must lie in [0, 1]");
  for (int c = 0; c < 3; ++c) {
    if (!(params.stddev[c] > 0.0) || !std::isfinite(params.stddev[c]) || !std::isfinite(params.mean[c])) {
      throw Error("style target statistics must be finite with positive stddev");
    }
  }
}

StyleParams fit_style(const ImageRGB& target) {
  const ChannelStats stats = channel_stats(target);
  StyleParams params;
  params.mean = stats.mean;
  params.stddev = stats.stddev;
  return params;
}

StyleTransform::StyleTransform(const ImageRGB& source, const StyleParams& params) : beta_(params.beta) {
  validate(params);
  const ChannelStats src = channel_stats(source);
  for (int c = 0; c < 3; ++c) {
    gain_[c] = params.stddev[c] / src.stddev[c];
    offset_[c] = params.mean[c] - src.mean[c] * gain_[c];
  }
}

ImageRGB StyleTransform::delta(const ImageRGB& image) const {
  ImageRGB out(image.width(), image.height());
  const auto src = image.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const int c = static_cast<int>(i % 3);
    const double x = src[i];
    dst[i] = static_cast<float>(beta_ * (x * gain_[c] + offset_[c] - x));
  }
  return out;
}

ImageRGB StyleTransform::apply(const ImageRGB& image) const {
  ImageRGB out = delta(image);
  const auto src = image.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] + dst[i];
  return out;
}

ImageRGB apply_style_unclamped(const ImageRGB& image, const StyleParams& params) {
  return StyleTransform(image, params).apply(image);
}

ImageRGB apply_style(const ImageRGB& image, const StyleParams& params) {
  ImageRGB out = apply_style_unclamped(image, params);
  clamp_unit(out);
  return out;
}

ImageRGB style_delta(const ImageRGB& image, const StyleParams& params) {
  return StyleTransform(image, params).delta(image);
}

}  // namespace cineloop
