#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cineloop/raster.hpp"

namespace cineloop {

/// Binary grid, one byte per cell holding 0 or 1.
class BinaryGrid {
 public:
  BinaryGrid(int width, int height, bool fill = false);
  BinaryGrid(int width, int height, std::vector<std::uint8_t> cells);

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  std::size_t cell_count() const { return cells_.size(); }

  bool at(int x, int y) const { return cells_[static_cast<std::size_t>(y) * width_ + x] != 0; }
  void set(int x, int y, bool value) { cells_[static_cast<std::size_t>(y) * width_ + x] = value ? 1 : 0; }

  std::span<const std::uint8_t> cells() const { return cells_; }
  std::size_t count() const;

  friend bool operator==(const BinaryGrid&, const BinaryGrid&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

/// Static/dynamic segmentation: 1 = dynamic, 0 = static.
class Mask : public BinaryGrid {
 public:
  using BinaryGrid::BinaryGrid;
};

/// Default minimum component area, as a fraction of the image, kept by refine_mask.
inline constexpr double kDefaultAreaRatio = 0.03;

/// Flips every 4-connected component (of either label) whose area ratio is
/// below `area_ratio_threshold` to the label surrounding it.
///
/// Components are resolved smallest first: a flipped component merges into
/// its neighbours, so a small static speck inside a small dynamic blob
/// disappears together with the blob.
Mask refine_mask(const Mask& mask, double area_ratio_threshold = kDefaultAreaRatio);

/// Mask cell = 1 where `channel` of the image exceeds `cutoff`.
Mask threshold_mask(const ImageRGB& image, int channel, double cutoff);

/// Nearest-neighbour resample (cell centers).
Mask resample_nearest(const Mask& mask, Size target);

}  // namespace cineloop
