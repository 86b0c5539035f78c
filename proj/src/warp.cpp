#include "cineloop/warp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

void require_same_size(Size a, Size b, const char* what) {
  if (a != b) throw Error(std::string(what) + ": shape mismatch");
}

double lerp_clamped(const VectorGrid& field, int channel, double x, double y) {
  const auto data = field.data();
  const int w = field.width();
  const int h = field.height();
  x = std::clamp(x, 0.0, w - 1.0);
  y = std::clamp(y, 0.0, h - 1.0);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  auto at = [&](int xi, int yi) { return static_cast<double>(data[(static_cast<std::size_t>(yi) * w + xi) * 2 + channel]); };
  return (1 - fy) * ((1 - fx) * at(x0, y0) + fx * at(x1, y0)) + fy * ((1 - fx) * at(x0, y1) + fx * at(x1, y1));
}

// Known-neighbour mean fill followed by smoothing sweeps, both restricted to
// `unknown` cells; Jacobi updates keep the result independent of scan order.
void diffusion_fill(FeatureMap& map, std::vector<std::uint8_t> unknown) {
  const int w = map.width();
  const int h = map.height();
  const int ch = map.channels();
  const std::vector<std::uint8_t> region = unknown;

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    if (unknown[i]) pending.push_back(i);
  }
  std::vector<double> sums(static_cast<std::size_t>(ch));
  while (!pending.empty()) {
    std::vector<std::pair<std::size_t, std::vector<float>>> updates;
    std::vector<std::size_t> still;
    for (std::size_t i : pending) {
      const int x = static_cast<int>(i % w);
      const int y = static_cast<int>(i / w);
      std::fill(sums.begin(), sums.end(), 0.0);
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          if (unknown[static_cast<std::size_t>(ny) * w + nx]) continue;
          for (int c = 0; c < ch; ++c) sums[c] += map.at(nx, ny, c);
          ++n;
        }
      }
      if (n == 0) {
        still.push_back(i);
        continue;
      }
      std::vector<float> value(static_cast<std::size_t>(ch));
      for (int c = 0; c < ch; ++c) value[c] = static_cast<float>(sums[c] / n);
      updates.emplace_back(i, std::move(value));
    }
    if (updates.empty()) throw Error("nothing to fill from");
    for (auto& [i, value] : updates) {
      const int x = static_cast<int>(i % w);
      const int y = static_cast<int>(i / w);
      std::copy(value.begin(), value.end(), map.pixel(x, y).begin());
      unknown[i] = 0;
    }
    pending = std::move(still);
  }

  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (region[i]) cells.push_back(i);
  }
  std::vector<float> next(cells.size() * ch);
  for (int sweep = 0; sweep < kDiffusionSmoothingSweeps; ++sweep) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const int x = static_cast<int>(cells[k] % w);
      const int y = static_cast<int>(cells[k] / w);
      std::fill(sums.begin(), sums.end(), 0.0);
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if ((dx == 0 && dy == 0) || nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          for (int c = 0; c < ch; ++c) sums[c] += map.at(nx, ny, c);
          ++n;
        }
      }
      for (int c = 0; c < ch; ++c) next[k * ch + c] = n > 0 ? static_cast<float>(sums[c] / n) : map.at(x, y, c);
    }
    for (std::size_t k = 0; k < cells.size(); ++k) {
      auto px = map.pixel(static_cast<int>(cells[k] % w), static_cast<int>(cells[k] / w));
      for (int c = 0; c < ch; ++c) px[c] = next[k * ch + c];
    }
  }
}

float median_of(std::vector<float>& values) {
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  if (n % 2 == 1) return values[n / 2];
  return static_cast<float>((static_cast<double>(values[n / 2 - 1]) + values[n / 2]) / 2.0);
}

}  // namespace

DisplacementField rescale_displacement(const DisplacementField& field, Size target) {
  if (target.width <= 0 || target.height <= 0) throw Error("rescale target must be positive");
  if (target == field.size()) return field;
  const double cu = static_cast<double>(target.width) / field.width();
  const double cv = static_cast<double>(target.height) / field.height();
  const double sx = static_cast<double>(field.width()) / target.width;
  const double sy = static_cast<double>(field.height()) / target.height;
  DisplacementField out(target.width, target.height, field.base_size());
  for (int y = 0; y < target.height; ++y) {
    const double py = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < target.width; ++x) {
      const double px = (x + 0.5) * sx - 0.5;
      out.set(x, y, {static_cast<float>(lerp_clamped(field, 0, px, py) * cu),
                     static_cast<float>(lerp_clamped(field, 1, px, py) * cv)});
    }
  }
  return out;
}

SplatAccumulator splat(const FeatureMap& features, const DisplacementField& displacement, double weight_scale) {
  require_same_size(features.size(), displacement.size(), "splat");
  if (!(weight_scale >= 0.0)) throw Error("splat weight scale must be >= 0");
  const int w = features.width();
  const int h = features.height();
  const int ch = features.channels();
  SplatAccumulator acc(w, h, ch);

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 d = displacement.at(x, y);
      const double px = x + static_cast<double>(d.u);
      const double py = y + static_cast<double>(d.v);
      const double fx0 = std::floor(px);
      const double fy0 = std::floor(py);
      // Far off-grid destinations contribute nothing; also keeps int casts safe.
      if (!(fx0 >= -1.0 && fy0 >= -1.0 && fx0 < w && fy0 < h)) continue;
      const int x0 = static_cast<int>(fx0);
      const int y0 = static_cast<int>(fy0);
      const double fx = px - fx0;
      const double fy = py - fy0;
      const double taps[4] = {(1 - fx) * (1 - fy) * weight_scale, fx * (1 - fy) * weight_scale,
                              (1 - fx) * fy * weight_scale, fx * fy * weight_scale};
      const int tx[4] = {x0, x0 + 1, x0, x0 + 1};
      const int ty[4] = {y0, y0, y0 + 1, y0 + 1};
      const auto src = features.pixel(x, y);
      for (int k = 0; k < 4; ++k) {
        if (tx[k] < 0 || ty[k] < 0 || tx[k] >= w || ty[k] >= h) continue;
        const std::size_t cell = static_cast<std::size_t>(ty[k]) * w + tx[k];
        acc.weights[cell] += taps[k];
        double* sums = acc.feature_sums.data() + cell * ch;
        for (int c = 0; c < ch; ++c) sums[c] += taps[k] * src[c];
      }
    }
  }
  return acc;
}

JointSplat joint_splat(const FeatureMap& features, const DisplacementField& forward,
                       const DisplacementField& backward, double alpha) {
  require_same_size(forward.size(), backward.size(), "joint_splat");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("looping weight must lie in [0, 1]");
  const SplatAccumulator fwd = splat(features, forward, alpha);
  const SplatAccumulator bwd = splat(features, backward, 1.0 - alpha);

  const int w = features.width();
  const int h = features.height();
  const int ch = features.channels();
  JointSplat out{FeatureMap(w, h, ch), HoleMask(w, h)};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t cell = static_cast<std::size_t>(y) * w + x;
      const double total = fwd.weights[cell] + bwd.weights[cell];
      if (total < kHoleEpsilon) {
        out.holes.set(x, y, true);
        continue;
      }
      auto dst = out.features.pixel(x, y);
      for (int c = 0; c < ch; ++c) {
        const std::size_t i = cell * ch + c;
        dst[c] = static_cast<float>((fwd.feature_sums[i] + bwd.feature_sums[i]) / total);
      }
    }
  }
  return out;
}

FeatureMap fill_holes(const FeatureMap& features, const HoleMask& holes, double large_hole_ratio) {
  require_same_size(features.size(), holes.size(), "fill_holes");
  const std::size_t hole_count = holes.count();
  if (hole_count == 0) return features;
  if (hole_count == holes.cell_count()) throw Error("nothing to fill from");

  FeatureMap out = features;
  const int w = features.width();
  const int h = features.height();
  const int ch = features.channels();
  std::vector<std::uint8_t> unknown(holes.cells().begin(), holes.cells().end());

  if (static_cast<double>(hole_count) >= large_hole_ratio * static_cast<double>(holes.cell_count())) {
    diffusion_fill(out, std::move(unknown));
    return out;
  }

  constexpr int r = kMedianWindow / 2;
  std::vector<float> values;
  values.reserve(kMedianWindow * kMedianWindow);
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    if (unknown[i]) pending.push_back(i);
  }
  while (!pending.empty()) {
    std::vector<std::pair<std::size_t, std::vector<float>>> updates;
    std::vector<std::size_t> deferred;
    for (std::size_t i : pending) {
      const int x = static_cast<int>(i % w);
      const int y = static_cast<int>(i / w);
      std::vector<float> filled(static_cast<std::size_t>(ch));
      bool any = false;
      for (int c = 0; c < ch; ++c) {
        values.clear();
        for (int ny = std::max(0, y - r); ny <= std::min(h - 1, y + r); ++ny) {
          for (int nx = std::max(0, x - r); nx <= std::min(w - 1, x + r); ++nx) {
            if (!unknown[static_cast<std::size_t>(ny) * w + nx]) values.push_back(out.at(nx, ny, c));
          }
        }
        if (values.empty()) break;
        any = true;
        filled[c] = median_of(values);
      }
      if (any) {
        updates.emplace_back(i, std::move(filled));
      } else {
        deferred.push_back(i);
      }
    }
    if (updates.empty()) {
      std::vector<std::uint8_t> rest(unknown.size(), 0);
      for (std::size_t i : deferred) rest[i] = 1;
      diffusion_fill(out, std::move(rest));
      return out;
    }
    for (auto& [i, value] : updates) {
      std::copy(value.begin(), value.end(), out.pixel(static_cast<int>(i % w), static_cast<int>(i / w)).begin());
      unknown[i] = 0;
    }
    pending = std::move(deferred);
  }
  return out;
}

FeatureMap gather_blend(const FeatureMap& features, const DisplacementField& forward,
                        const DisplacementField& backward, double alpha) {
  require_same_size(features.size(), forward.size(), "gather_blend");
  require_same_size(forward.size(), backward.size(), "gather_blend");
  const int w = features.width();
  const int h = features.height();
  const int ch = features.channels();
  FeatureMap out(w, h, ch);

  auto sample = [&](double x, double y, int c) {
    x = std::clamp(x, 0.0, w - 1.0);
    y = std::clamp(y, 0.0, h - 1.0);
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    return (1 - fy) * ((1 - fx) * features.at(x0, y0, c) + fx * features.at(x1, y0, c)) +
           fy * ((1 - fx) * features.at(x0, y1, c) + fx * features.at(x1, y1, c));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 f = forward.at(x, y);
      const Vec2 b = backward.at(x, y);
      for (int c = 0; c < ch; ++c) {
        const double fwd = sample(x - f.u, y - f.v, c);
        const double bwd = sample(x - b.u, y - b.v, c);
        out.at(x, y, c) = static_cast<float>(alpha * fwd + (1.0 - alpha) * bwd);
      }
    }
  }
  return out;
}

FeaturePyramid warp_pyramid(const FeaturePyramid& pyramid, const DisplacementField& forward,
                            const DisplacementField& backward, double alpha, const WarpOptions& options) {
  check_dyadic_chain(pyramid);
  require_same_size(forward.size(), backward.size(), "warp_pyramid");
  FeaturePyramid out;
  out.levels.reserve(pyramid.levels.size());
  const std::size_t finest = pyramid.levels.size() - 1;
  for (std::size_t k = 0; k < pyramid.levels.size(); ++k) {
    const FeatureMap& level = pyramid.levels[k];
    if (!options.warp_all_levels && k != finest) {
      out.levels.push_back(level);
      continue;
    }
    const DisplacementField fwd = rescale_displacement(forward, level.size());
    const DisplacementField bwd = rescale_displacement(backward, level.size());
    if (options.method == WarpMethod::kGather) {
      out.levels.push_back(gather_blend(level, fwd, bwd, alpha));
      continue;
    }
    JointSplat js = joint_splat(level, fwd, bwd, alpha);
    out.levels.push_back(fill_holes(js.features, js.holes, options.large_hole_ratio));
  }
  return out;
}

}  // namespace cineloop
