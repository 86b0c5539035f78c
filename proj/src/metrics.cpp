#include "cineloop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

struct Plane {
  int width;
  int height;
  std::vector<double> values;

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

Plane luminance(const ImageRGB& image) {
  Plane p{image.width(), image.height(), std::vector<double>(image.pixel_count())};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      p.values[static_cast<std::size_t>(y) * p.width + x] =
          0.299 * image.at(x, y, 0) + 0.587 * image.at(x, y, 1) + 0.114 * image.at(x, y, 2);
    }
  }
  return p;
}

Plane halve(const Plane& p) {
  Plane out{p.width / 2, p.height / 2, {}};
  out.values.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.values[static_cast<std::size_t>(y) * out.width + x] =
          (p.at(2 * x, 2 * y) + p.at(2 * x + 1, 2 * y) + p.at(2 * x, 2 * y + 1) + p.at(2 * x + 1, 2 * y + 1)) / 4.0;
    }
  }
  return out;
}

std::array<double, msssim::kWindow> gaussian_kernel() {
  std::array<double, msssim::kWindow> k{};
  double sum = 0.0;
  for (int i = 0; i < msssim::kWindow; ++i) {
    const double d = i - msssim::kWindow / 2;
    k[i] = std::exp(-(d * d) / (2.0 * msssim::kSigma * msssim::kSigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Valid-mode separable filtering.
Plane filter_valid(const Plane& p, const std::array<double, msssim::kWindow>& k) {
  const int n = msssim::kWindow;
  Plane rows{p.width - n + 1, p.height, {}};
  rows.values.resize(static_cast<std::size_t>(rows.width) * rows.height);
  for (int y = 0; y < rows.height; ++y) {
    for (int x = 0; x < rows.width; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * p.at(x + i, y);
      rows.values[static_cast<std::size_t>(y) * rows.width + x] = acc;
    }
  }
  Plane out{rows.width, p.height - n + 1, {}};
  out.values.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * rows.at(x, y + i);
      out.values[static_cast<std::size_t>(y) * out.width + x] = acc;
    }
  }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

// Mean luminance term and mean contrast-structure term at one scale.
std::pair<double, double> ssim_terms(const Plane& a, const Plane& b) {
  static const auto kernel = gaussian_kernel();
  const double c1 = (msssim::kK1 * msssim::kDynamicRange) * (msssim::kK1 * msssim::kDynamicRange);
  const double c2 = (msssim::kK2 * msssim::kDynamicRange) * (msssim::kK2 * msssim::kDynamicRange);
  const Plane mu_a = filter_valid(a, kernel);
  const Plane mu_b = filter_valid(b, kernel);
  const Plane aa = filter_valid(product(a, a), kernel);
  const Plane bb = filter_valid(product(b, b), kernel);
  const Plane ab = filter_valid(product(a, b), kernel);
  double l_sum = 0.0;
  double cs_sum = 0.0;
  for (std::size_t i = 0; i < mu_a.values.size(); ++i) {
    const double ma = mu_a.values[i];
    const double mb = mu_b.values[i];
    const double var_a = aa.values[i] - ma * ma;
    const double var_b = bb.values[i] - mb * mb;
    const double cov = ab.values[i] - ma * mb;
    l_sum += (2 * ma * mb + c1) / (ma * ma + mb * mb + c1);
    cs_sum += (2 * cov + c2) / (var_a + var_b + c2);
  }
  const double n = static_cast<double>(mu_a.values.size());
  return {l_sum / n, cs_sum / n};
}

}  // namespace

double rmse(const ImageRGB& a, const ImageRGB& b) {
  return rmse(a, b, Mask(a.width(), a.height(), true));
}

double rmse(const ImageRGB& a, const ImageRGB& b, const Mask& mask) {
  if (!a.same_shape(b) || mask.size() != a.size()) throw Error("rmse: shape mismatch");
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (!mask.at(x, y)) continue;
      for (int c = 0; c < 3; ++c) {
        const double d = 255.0 * a.at(x, y, c) - 255.0 * b.at(x, y, c);
        sum += d * d;
      }
      count += 3;
    }
  }
  if (count == 0) throw Error("rmse: empty mask support");
  return std::sqrt(sum / static_cast<double>(count));
}

int ms_ssim_scale_count(Size size) {
  int scales = 0;
  int w = size.width;
  int h = size.height;
  while (scales < static_cast<int>(msssim::kScaleWeights.size()) && w >= msssim::kWindow && h >= msssim::kWindow) {
    ++scales;
    w /= 2;
    h /= 2;
  }
  return scales;
}

double ms_ssim(const ImageRGB& a, const ImageRGB& b) {
  if (!a.same_shape(b)) throw Error("ms_ssim: shape mismatch");
  const int scales = ms_ssim_scale_count(a.size());
  if (scales == 0) throw Error("ms_ssim: image smaller than one 11x11 window");

  double weight_sum = 0.0;
  for (int s = 0; s < scales; ++s) weight_sum += msssim::kScaleWeights[s];

  Plane pa = luminance(a);
  Plane pb = luminance(b);
  double result = 1.0;
  for (int s = 0; s < scales; ++s) {
    const auto [l, cs] = ssim_terms(pa, pb);
    const double w = msssim::kScaleWeights[s] / weight_sum;
    result *= std::pow(std::max(cs, 0.0), w);
    if (s == scales - 1) {
      result *= std::pow(std::max(l, 0.0), w);
    } else {
      pa = halve(pa);
      pb = halve(pb);
    }
  }
  return std::clamp(result, 0.0, 1.0);
}

double loop_gap(std::span<const ImageRGB> frames) {
  if (frames.size() < 2) throw Error("loop_gap: needs at least 2 frames");
  const ImageRGB& first = frames.front();
  const ImageRGB& last = frames.back();
  if (!first.same_shape(last)) throw Error("loop_gap: shape mismatch");
  double gap = 0.0;
  const auto fa = first.data();
  const auto fb = last.data();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    gap = std::max(gap, std::abs(static_cast<double>(fa[i]) - fb[i]));
  }
  return gap;
}

}  // namespace cineloop
