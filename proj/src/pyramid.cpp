#include "cineloop/pyramid.hpp"

#include <array>
#include <string>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

constexpr std::array<float, 5> kBinomial = {1.0f / 16, 4.0f / 16, 6.0f / 16, 4.0f / 16, 1.0f / 16};

// Reflect-101 border index.
int reflect(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

FeatureMap blur(const FeatureMap& src, float gain) {
  const int w = src.width();
  const int h = src.height();
  const int ch = src.channels();
  FeatureMap tmp(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        float acc = 0.0f;
        for (int k = -2; k <= 2; ++k) acc += kBinomial[k + 2] * src.at(reflect(x + k, w), y, c);
        tmp.at(x, y, c) = acc * gain;
      }
    }
  }
  FeatureMap out(w, h, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        float acc = 0.0f;
        for (int k = -2; k <= 2; ++k) acc += kBinomial[k + 2] * tmp.at(x, reflect(y + k, h), c);
        out.at(x, y, c) = acc * gain;
      }
    }
  }
  return out;
}

FeatureMap subtract(const FeatureMap& a, const FeatureMap& b) {
  FeatureMap out = a;
  auto dst = out.data();
  auto rhs = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= rhs[i];
  return out;
}

}  // namespace

void check_dyadic_chain(const FeaturePyramid& pyramid) {
  if (pyramid.levels.empty()) throw Error("pyramid has no levels");
  for (std::size_t k = 1; k < pyramid.levels.size(); ++k) {
    const FeatureMap& coarse = pyramid.levels[k - 1];
    const FeatureMap& fine = pyramid.levels[k];
    if (fine.width() != 2 * coarse.width() || fine.height() != 2 * coarse.height() ||
        fine.channels() != coarse.channels()) {
      throw Error("broken dyadic chain at pyramid level " + std::to_string(k));
    }
  }
}

FeatureMap downsample(const FeatureMap& map) {
  if (map.width() % 2 != 0 || map.height() % 2 != 0) throw Error("downsample requires even dimensions");
  const FeatureMap blurred = blur(map, 1.0f);
  FeatureMap out(map.width() / 2, map.height() / 2, map.channels());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      for (int c = 0; c < map.channels(); ++c) out.at(x, y, c) = blurred.at(2 * x, 2 * y, c);
    }
  }
  return out;
}

FeatureMap upsample(const FeatureMap& map, Size target) {
  if (target.width != 2 * map.width() || target.height != 2 * map.height()) {
    throw Error("upsample target must be exactly twice the source size");
  }
  FeatureMap zero_inserted(target.width, target.height, map.channels());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      for (int c = 0; c < map.channels(); ++c) zero_inserted.at(2 * x, 2 * y, c) = map.at(x, y, c);
    }
  }
  return blur(zero_inserted, 2.0f);
}

FeaturePyramid analyze(const ImageRGB& image, int levels) {
  if (levels < 1) throw Error("pyramid level count must be >= 1");
  const int divisor = 1 << (levels - 1);
  if (image.width() % divisor != 0 || image.height() % divisor != 0) {
    throw Error("image dimensions " + std::to_string(image.width()) + "x" + std::to_string(image.height()) +
                " must be divisible by " + std::to_string(divisor) + " for " + std::to_string(levels) +
                " pyramid levels");
  }
  // Gaussian chain, finest first.
  std::vector<FeatureMap> gaussian;
  gaussian.push_back(image);
  for (int k = 1; k < levels; ++k) gaussian.push_back(downsample(gaussian.back()));

  FeaturePyramid pyramid;
  pyramid.levels.reserve(levels);
  pyramid.levels.push_back(gaussian.back());
  for (int k = levels - 2; k >= 0; --k) {
    pyramid.levels.push_back(subtract(gaussian[k], upsample(gaussian[k + 1], gaussian[k].size())));
  }
  return pyramid;
}

FeatureMap synthesize_unclamped(const FeaturePyramid& pyramid) {
  check_dyadic_chain(pyramid);
  FeatureMap acc = pyramid.levels.front();
  for (std::size_t k = 1; k < pyramid.levels.size(); ++k) {
    const FeatureMap& residual = pyramid.levels[k];
    acc = upsample(acc, residual.size());
    auto dst = acc.data();
    auto src = residual.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }
  return acc;
}

ImageRGB synthesize(const FeaturePyramid& pyramid) {
  FeatureMap out = synthesize_unclamped(pyramid);
  if (out.channels() != 3) throw Error("synthesize requires a 3-channel pyramid");
  clamp_unit(out);
  return ImageRGB(std::move(out));
}

}  // namespace cineloop
