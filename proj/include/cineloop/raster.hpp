#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cineloop {

struct Size {
  int width = 0;
  int height = 0;
  friend bool operator==(const Size&, const Size&) = default;
};

/// Multi-channel float grid, row-major with interleaved channels.
///
/// Used both for images and for the feature levels of a pyramid; a value is
/// addressed as (x, y, channel).
class FeatureMap {
 public:
  FeatureMap(int width, int height, int channels, float fill = 0.0f);
  FeatureMap(int width, int height, int channels, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  Size size() const { return {width_, height_}; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  float& at(int x, int y, int c) { return data_[index(x, y) + c]; }
  float at(int x, int y, int c) const { return data_[index(x, y) + c]; }

  std::span<float> pixel(int x, int y) { return {data_.data() + index(x, y), static_cast<std::size_t>(channels_)}; }
  std::span<const float> pixel(int x, int y) const {
    return {data_.data() + index(x, y), static_cast<std::size_t>(channels_)};
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }

  bool same_shape(const FeatureMap& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }
  bool all_finite() const;

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_;
  }

  int width_;
  int height_;
  int channels_;
  std::vector<float> data_;
};

/// Three-channel RGB image; nominal range [0, 1]. Signed color deltas use the
/// same type.
class ImageRGB : public FeatureMap {
 public:
  ImageRGB(int width, int height, float fill = 0.0f) : FeatureMap(width, height, 3, fill) {}
  explicit ImageRGB(FeatureMap map);
};

/// Clamp every value into [0, 1].
void clamp_unit(FeatureMap& map);

/// Bilinear resize with half-pixel centers and clamped borders.
ImageRGB resize_bilinear(const ImageRGB& image, Size target);

}  // namespace cineloop
