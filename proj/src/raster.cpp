#include "cineloop/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

void check_dims(int width, int height, int channels) {
  if (width <= 0 || height <= 0 || channels <= 0) {
    throw Error("invalid raster shape " + std::to_string(width) + "x" + std::to_string(height) + "x" +
                std::to_string(channels));
  }
}

}  // namespace

FeatureMap::FeatureMap(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

FeatureMap::FeatureMap(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error("raster data length does not match its shape");
  }
}

bool FeatureMap::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

ImageRGB::ImageRGB(FeatureMap map) : FeatureMap(std::move(map)) {
  if (channels() != 3) throw Error("ImageRGB requires 3 channels, got " + std::to_string(channels()));
}

void clamp_unit(FeatureMap& map) {
  for (float& v : map.data()) v = std::clamp(v, 0.0f, 1.0f);
}

ImageRGB resize_bilinear(const ImageRGB& image, Size target) {
  if (target == image.size()) return image;
  ImageRGB out(target.width, target.height);
  const double sx = static_cast<double>(image.width()) / target.width;
  const double sy = static_cast<double>(image.height()) / target.height;
  for (int y = 0; y < target.height; ++y) {
    const double py = std::clamp((y + 0.5) * sy - 0.5, 0.0, image.height() - 1.0);
    const int y0 = static_cast<int>(std::floor(py));
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double fy = py - y0;
    for (int x = 0; x < target.width; ++x) {
      const double px = std::clamp((x + 0.5) * sx - 0.5, 0.0, image.width() - 1.0);
      const int x0 = static_cast<int>(std::floor(px));
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double fx = px - x0;
      for (int c = 0; c < 3; ++c) {
        const double top = (1 - fx) * image.at(x0, y0, c) + fx * image.at(x1, y0, c);
        const double bottom = (1 - fx) * image.at(x0, y1, c) + fx * image.at(x1, y1, c);
        out.at(x, y, c) = static_cast<float>((1 - fy) * top + fy * bottom);
      }
    }
  }
  return out;
}

}  // namespace cineloop
