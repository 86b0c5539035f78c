#pragma once

#include <span>
#include <vector>

#include "cineloop/mask.hpp"
#include "cineloop/raster.hpp"

namespace cineloop {

/// Rightward (u) and downward (v) components, in pixels.
struct Vec2 {
  float u = 0.0f;
  float v = 0.0f;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Two-channel grid of (u, v) vectors, row-major and interleaved.
class VectorGrid {
 public:
  VectorGrid(int width, int height, Vec2 fill = {});
  VectorGrid(int width, int height, std::vector<float> data);

  int width() const { return width_; }
  int height() const { return height_; }
  Size size() const { return {width_, height_}; }
  std::size_t cell_count() const { return static_cast<std::size_t>(width_) * height_; }

  Vec2 at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {data_[i], data_[i + 1]};
  }
  void set(int x, int y, Vec2 value) {
    const std::size_t i = index(x, y);
    data_[i] = value.u;
    data_[i + 1] = value.v;
  }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }
  bool all_finite() const;

  friend bool operator==(const VectorGrid&, const VectorGrid&) = default;

 private:
  std::size_t index(int x, int y) const { return (static_cast<std::size_t>(y) * width_ + x) * 2; }

  int width_;
  int height_;
  std::vector<float> data_;
};

/// Eulerian motion field: instantaneous velocity in pixels/frame.
class FlowField : public VectorGrid {
 public:
  using VectorGrid::VectorGrid;
};

/// Cumulative displacement of each source pixel, in pixels at this field's
/// own resolution. `base_size` records the resolution it was integrated at.
class DisplacementField : public VectorGrid {
 public:
  DisplacementField(int width, int height, Vec2 fill = {})
      : VectorGrid(width, height, fill), base_size_{width, height} {}
  DisplacementField(int width, int height, Size base_size, Vec2 fill = {})
      : VectorGrid(width, height, fill), base_size_(base_size) {}

  Size base_size() const { return base_size_; }

  friend bool operator==(const DisplacementField&, const DisplacementField&) = default;

 private:
  Size base_size_;
};

/// Loop of N+1 frames, indices 0..N.
class LoopSpec {
 public:
  explicit LoopSpec(int frame_count);

  int frame_count() const { return frame_count_; }
  /// 1 - t/N.
  double looping_weight(int t) const;

 private:
  int frame_count_;
};

/// Bilinear lookup with the position clamped to [0, W-1] x [0, H-1].
Vec2 sample_bilinear(const VectorGrid& field, double x, double y);

/// Euler integration F_{0->steps}: each step samples the motion at the
/// currently displaced position and accumulates it.
DisplacementField integrate(const FlowField& motion, int steps);

FlowField negate(const FlowField& motion);

struct LoopDisplacements {
  DisplacementField forward;   ///< F_{0->t}
  DisplacementField backward;  ///< F_{N->t}, integrated on -M
};

LoopDisplacements loop_displacements(const FlowField& motion, const LoopSpec& loop, int t);

/// Zeroes motion at static pixels.
FlowField apply_mask(const FlowField& motion, const Mask& mask);

/// Rescales the field by one scalar so that its mean magnitude over dynamic
/// pixels equals `target_mean_magnitude`.
FlowField normalize_speed(const FlowField& motion, const Mask& mask, double target_mean_magnitude);

/// Mean Euclidean magnitude over dynamic pixels (0 when there are none).
double mean_dynamic_speed(const FlowField& motion, const Mask& mask);

}  // namespace cineloop
