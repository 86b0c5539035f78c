#include "cineloop/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

struct Sample {
  double u;
  double v;
};

Sample sample_clamped(const VectorGrid& field, double x, double y) {
  const int w = field.width();
  const int h = field.height();
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;

  const Vec2 a = field.at(x0, y0);
  const Vec2 b = field.at(x1, y0);
  const Vec2 c = field.at(x0, y1);
  const Vec2 d = field.at(x1, y1);
  const double u = (1 - fy) * ((1 - fx) * a.u + fx * b.u) + fy * ((1 - fx) * c.u + fx * d.u);
  const double v = (1 - fy) * ((1 - fx) * a.v + fx * b.v) + fy * ((1 - fx) * c.v + fx * d.v);
  return {u, v};
}

}  // namespace

VectorGrid::VectorGrid(int width, int height, Vec2 fill) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw Error("vector field dimensions must be positive");
  data_.resize(cell_count() * 2);
  for (std::size_t i = 0; i < data_.size(); i += 2) {
    data_[i] = fill.u;
    data_[i + 1] = fill.v;
  }
}

VectorGrid::VectorGrid(int width, int height, std::vector<float> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width <= 0 || height <= 0) throw Error("vector field dimensions must be positive");
  if (data_.size() != cell_count() * 2) throw Error("vector field data length does not match its shape");
}

bool VectorGrid::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

LoopSpec::LoopSpec(int frame_count) : frame_count_(frame_count) {
  if (frame_count < 1) throw Error("loop frame count N must be >= 1");
}

double LoopSpec::looping_weight(int t) const {
  return 1.0 - static_cast<double>(t) / static_cast<double>(frame_count_);
}

Vec2 sample_bilinear(const VectorGrid& field, double x, double y) {
  const Sample s = sample_clamped(field, x, y);
  return {static_cast<float>(s.u), static_cast<float>(s.v)};
}

DisplacementField integrate(const FlowField& motion, int steps) {
  if (steps < 0) throw Error("integration steps must be >= 0");
  DisplacementField out(motion.width(), motion.height());
  if (steps == 0) return out;
  for (int y = 0; y < motion.height(); ++y) {
    for (int x = 0; x < motion.width(); ++x) {
      double du = 0.0;
      double dv = 0.0;
      for (int s = 0; s < steps; ++s) {
        const Sample m = sample_clamped(motion, x + du, y + dv);
        du += m.u;
        dv += m.v;
      }
      out.set(x, y, {static_cast<float>(du), static_cast<float>(dv)});
    }
  }
  return out;
}

FlowField negate(const FlowField& motion) {
  FlowField out = motion;
  for (float& v : out.data()) v = -v;
  return out;
}

LoopDisplacements loop_displacements(const FlowField& motion, const LoopSpec& loop, int t) {
  if (t < 0 || t > loop.frame_count()) {
    throw Error("frame index " + std::to_string(t) + " outside [0, " + std::to_string(loop.frame_count()) + "]");
  }
  return {integrate(motion, t), integrate(negate(motion), loop.frame_count() - t)};
}

FlowField apply_mask(const FlowField& motion, const Mask& mask) {
  if (motion.size() != mask.size()) throw Error("motion field and mask differ in shape");
  FlowField out = motion;
  for (int y = 0; y < motion.height(); ++y) {
    for (int x = 0; x < motion.width(); ++x) {
      const float s = mask.at(x, y) ? 1.0f : 0.0f;
      const Vec2 m = motion.at(x, y);
      out.set(x, y, {m.u * s, m.v * s});
    }
  }
  return out;
}

double mean_dynamic_speed(const FlowField& motion, const Mask& mask) {
  if (motion.size() != mask.size()) throw Error("motion field and mask differ in shape");
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < motion.height(); ++y) {
    for (int x = 0; x < motion.width(); ++x) {
      if (!mask.at(x, y)) continue;
      const Vec2 m = motion.at(x, y);
      sum += std::hypot(static_cast<double>(m.u), static_cast<double>(m.v));
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

FlowField normalize_speed(const FlowField& motion, const Mask& mask, double target_mean_magnitude) {
  if (!(target_mean_magnitude > 0.0) || !std::isfinite(target_mean_magnitude)) {
    throw Error("target mean magnitude must be positive");
  }
  const double mean = mean_dynamic_speed(motion, mask);
  if (!(mean > 0.0)) throw Error("degenerate motion field");
  const double scale = target_mean_magnitude / mean;
  FlowField out = motion;
  for (float& v : out.data()) v = static_cast<float>(v * scale);
  return out;
}

}  // namespace cineloop
