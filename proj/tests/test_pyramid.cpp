#include <cmath>
#include <random>

#include "cineloop/error.hpp"
#include "cineloop/pyramid.hpp"
#include "doctest.h"
#include "oracles/oracles.hpp"

using namespace cineloop;

namespace {

double max_abs_diff(std::span<const float> a, std::span<const float> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(static_cast<double>(a[i]) - b[i]));
  return m;
}

}  // namespace

TEST_CASE("analyze constant image") {
  const FeaturePyramid p = analyze(ImageRGB(16, 16, 0.5f), 3);
  REQUIRE(p.level_count() == 3);
  for (float v : p.levels[0].data()) CHECK(std::abs(v - 0.5f) < 1e-6);
  for (int k = 1; k < 3; ++k)
    for (float v : p.levels[k].data()) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("level shapes follow the dyadic chain") {
  std::mt19937 rng(1);
  const FeaturePyramid p = analyze(oracle::random_image(rng, 64, 48), 5);
  REQUIRE(p.level_count() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(p.levels[k].width() == 64 >> (4 - k));
    CHECK(p.levels[k].height() == 48 >> (4 - k));
  }
  CHECK_NOTHROW(check_dyadic_chain(p));
}

TEST_CASE("round trip") {
  std::mt19937 rng(2);
  for (int levels = 1; levels <= 5; ++levels) {
    const ImageRGB image = oracle::random_image(rng, 64, 64);
    const ImageRGB back = synthesize(analyze(image, levels));
    CHECK(max_abs_diff(back.data(), image.data()) < 1e-6);
  }
}

TEST_CASE("single level pyramid is the image") {
  std::mt19937 rng(4);
  const ImageRGB image = oracle::random_image(rng, 10, 6);
  const FeaturePyramid p = analyze(image, 1);
  REQUIRE(p.level_count() == 1);
  CHECK(p.levels[0] == static_cast<const FeatureMap&>(image));
}

TEST_CASE("all-zero pyramid synthesizes black") {
  FeaturePyramid p;
  p.levels = {FeatureMap(4, 4, 3), FeatureMap(8, 8, 3), FeatureMap(16, 16, 3)};
  const ImageRGB zero = synthesize(p);
  for (float v : zero.data()) CHECK(v == 0.0f);
}

TEST_CASE("finest residual is local") {
  FeaturePyramid p = analyze(ImageRGB(32, 32, 0.4f), 4);
  const ImageRGB base = synthesize(p);
  p.levels[3].at(10, 7, 1) += 0.1f;
  const ImageRGB perturbed = synthesize(p);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x)
      for (int c = 0; c < 3; ++c) {
        const double d = perturbed.at(x, y, c) - static_cast<double>(base.at(x, y, c));
        if (x == 10 && y == 7 && c == 1) {
          CHECK(d == doctest::Approx(0.1).epsilon(1e-5));
        } else {
          CHECK(d == 0.0);
        }
      }
}

TEST_CASE("analyze and synthesize are linear") {
  std::mt19937 rng(6);
  const ImageRGB a = oracle::random_image(rng, 32, 32);
  const ImageRGB b = oracle::random_image(rng, 32, 32);
  const double ka = 0.7, kb = -1.3;
  ImageRGB mix(32, 32);
  for (std::size_t i = 0; i < mix.data().size(); ++i) {
    mix.data()[i] = static_cast<float>(ka * a.data()[i] + kb * b.data()[i]);
  }
  const FeaturePyramid pa = analyze(a, 4), pb = analyze(b, 4), pm = analyze(mix, 4);
  for (int k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < pm.levels[k].data().size(); ++i) {
      CHECK(std::abs(pm.levels[k].data()[i] - (ka * pa.levels[k].data()[i] + kb * pb.levels[k].data()[i])) <= 1e-6);
    }
  }
  const FeatureMap back = synthesize_unclamped(pm);
  CHECK(max_abs_diff(back.data(), mix.data()) <= 1e-6);
}

TEST_CASE("errors") {
  CHECK_THROWS_WITH_AS(analyze(ImageRGB(30, 32), 3), doctest::Contains("divisible by 4"), Error);
  CHECK_THROWS_AS(analyze(ImageRGB(32, 32), 0), Error);
  FeaturePyramid broken;
  broken.levels = {FeatureMap(4, 4, 3), FeatureMap(9, 8, 3)};
  CHECK_THROWS_AS(synthesize(broken), Error);
  CHECK_THROWS_AS(synthesize(FeaturePyramid{}), Error);
}
