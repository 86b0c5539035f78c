#include "cineloop/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cineloop/flowsynth.hpp"

namespace cineloop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

float band_texture(const TranslationScene& config, double x, int y, int c) {
  const double phase = x / config.period() + c / 3.0;
  const double ripple = 0.08 * std::cos(kTwoPi * (y - config.band_top()) / 12.0);
  return static_cast<float>(0.5 + 0.3 * std::sin(kTwoPi * phase) + ripple);
}

float static_texture(const TranslationScene& config, int x, int y, int c) {
  // Chirp in x: no horizontal period.
  const double chirp = std::sin(0.0025 * x * x + 0.7 * c);
  const double gradient = static_cast<double>(y) / config.size.height;
  return static_cast<float>(0.35 + 0.25 * chirp + 0.2 * gradient);
}

// Smooth value noise from a coarse random lattice.
class ValueNoise {
 public:
  ValueNoise(int cells, std::uint32_t seed) : cells_(cells), lattice_((cells + 1) * (cells + 1)) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (double& v : lattice_) v = dist(rng);
  }
  // u, v in [0, 1].
  double operator()(double u, double v) const {
    const double x = u * cells_;
    const double y = v * cells_;
    const int x0 = std::min(static_cast<int>(x), cells_ - 1);
    const int y0 = std::min(static_cast<int>(y), cells_ - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    auto at = [&](int i, int j) { return lattice_[j * (cells_ + 1) + i]; };
    return (1 - fy) * ((1 - fx) * at(x0, y0) + fx * at(x0 + 1, y0)) +
           fy * ((1 - fx) * at(x0, y0 + 1) + fx * at(x0 + 1, y0 + 1));
  }

 private:
  int cells_;
  std::vector<double> lattice_;
};

double shoreline(Size size, double u, std::uint32_t seed) {
  const double phase = (seed % 97) / 97.0 * kTwoPi;
  return size.height * (0.45 + 0.05 * std::sin(kTwoPi * 1.5 * u + phase));
}

}  // namespace

SyntheticScene make_scene(const TranslationScene& config) {
  const int w = config.size.width;
  const int h = config.size.height;
  ImageRGB image(w, h);
  Mask mask(w, h);
  for (int y = 0; y < h; ++y) {
    const bool band = y >= config.band_top() && y < config.band_bottom();
    for (int x = 0; x < w; ++x) {
      mask.set(x, y, band);
      for (int c = 0; c < 3; ++c) {
        image.at(x, y, c) = band ? band_texture(config, x, y, c) : static_texture(config, x, y, c);
      }
    }
  }
  return {std::move(image), std::move(mask), constant_flow(w, h, config.speed, 0.0)};
}

ImageRGB ground_truth_frame(const TranslationScene& config, int t) {
  SyntheticScene scene = make_scene(config);
  for (int y = config.band_top(); y < config.band_bottom(); ++y) {
    for (int x = 0; x < config.size.width; ++x) {
      for (int c = 0; c < 3; ++c) scene.image.at(x, y, c) = band_texture(config, x - t * config.speed, y, c);
    }
  }
  return scene.image;
}

ImageRGB make_demo_image(Size size, std::uint32_t seed) {
  const ValueNoise coarse(6, seed);
  const ValueNoise fine(24, seed * 7919u + 13u);
  ImageRGB image(size.width, size.height);
  for (int y = 0; y < size.height; ++y) {
    const double v = (y + 0.5) / size.height;
    for (int x = 0; x < size.width; ++x) {
      const double u = (x + 0.5) / size.width;
      const double texture = 0.6 * coarse(u, v) + 0.4 * fine(u, v);
      const double shore = shoreline(size, u, seed);
      std::array<double, 3> rgb;
      if (y < shore) {
        // sky with soft clouds
        const double cloud = std::clamp((texture - 0.45) * 2.0, 0.0, 1.0);
        rgb = {0.35 + 0.3 * v + 0.5 * cloud, 0.55 + 0.25 * v + 0.4 * cloud, 0.9 + 0.1 * cloud};
      } else if (y < size.height * 0.85) {
        // water
        rgb = {0.1 + 0.25 * texture, 0.3 + 0.3 * texture, 0.5 + 0.35 * texture};
      } else {
        // shore
        rgb = {0.25 + 0.2 * texture, 0.2 + 0.15 * texture, 0.1 + 0.1 * texture};
      }
      for (int c = 0; c < 3; ++c) image.at(x, y, c) = static_cast<float>(std::clamp(rgb[c], 0.0, 1.0));
    }
  }
  return image;
}

Mask make_demo_mask(Size size, std::uint32_t seed) {
  Mask mask(size.width, size.height);
  for (int y = 0; y < size.height; ++y) {
    for (int x = 0; x < size.width; ++x) {
      const double u = (x + 0.5) / size.width;
      mask.set(x, y, y >= shoreline(size, u, seed) && y < size.height * 0.85);
    }
  }
  return mask;
}

}  // namespace cineloop
