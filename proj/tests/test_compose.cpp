#include <cmath>
#include <random>

#include "cineloop/compose.hpp"
#include "cineloop/error.hpp"
#include "cineloop/flowsynth.hpp"
#include "cineloop/metrics.hpp"
#include "cineloop/scene.hpp"
#include "doctest.h"
#include "oracles/oracles.hpp"

using namespace cineloop;

TEST_CASE("composite_frame") {
  std::mt19937 rng(1);
  const ImageRGB dyn = oracle::random_image(rng, 6, 6);
  const ImageRGB img = oracle::random_image(rng, 6, 6);
  CHECK(composite_frame(dyn, img, Mask(6, 6, false)) == img);
  CHECK(composite_frame(dyn, img, Mask(6, 6, true)) == dyn);

  Mask checker(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) checker.set(x, y, (x + y) % 2 == 1);
  ImageRGB delta(6, 6, 0.05f);
  const ImageRGB out = composite_frame(dyn, img, checker, delta);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x)
      for (int c = 0; c < 3; ++c) {
        const float s = checker.at(x, y) ? 1.0f : 0.0f;
        const float expected = std::clamp(s * dyn.at(x, y, c) + (1 - s) * (img.at(x, y, c) + 0.05f), 0.0f, 1.0f);
        CHECK(out.at(x, y, c) == expected);
      }
  CHECK_THROWS_AS(composite_frame(dyn, img, Mask(5, 6)), Error);
}

namespace {

CinemagraphJob demo_job(int size, FlowField flow, int frames) {
  return CinemagraphJob{make_demo_image({size, size}, 3), make_demo_mask({size, size}, 3), std::move(flow),
                        LoopSpec(frames), 3, std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("render_loop with zero motion reproduces the image") {
  const CinemagraphJob job = demo_job(32, FlowField(32, 32), 4);
  const auto frames = render_loop(job);
  REQUIRE(frames.size() == 5);
  for (const ImageRGB& f : frames) {
    CHECK(f == frames.front());
    for (std::size_t i = 0; i < f.data().size(); ++i) CHECK(std::abs(f.data()[i] - job.image.data()[i]) <= 1e-6);
  }
}

TEST_CASE("render_loop closes the loop") {
  const CinemagraphJob job = demo_job(32, rotation_flow(64, 64, 30, 40, 0.05), 6);
  const auto frames = render_loop(job);
  CHECK(frames.size() == 7);
  CHECK(loop_gap(frames) <= 1e-4);
  CHECK_FALSE(frames[3] == frames[0]);
}

TEST_CASE("render_loop keeps static pixels fixed, including under style") {
  CinemagraphJob job = demo_job(32, radial_flow(32, 32, 16, 20, 0.05), 4);
  job.style = StyleParams{{0.7, 0.4, 0.3}, {0.1, 0.1, 0.1}, 0.6};
  const auto frames = render_loop(job);
  const ImageRGB delta = style_delta(job.image, *job.style);
  for (const ImageRGB& f : frames)
    for (int y = 0; y < 32; ++y)
      for (int x = 0; x < 32; ++x)
        if (!job.mask.at(x, y))
          for (int c = 0; c < 3; ++c) {
            const float expected = std::clamp(job.image.at(x, y, c) + delta.at(x, y, c), 0.0f, 1.0f);
            CHECK(std::abs(f.at(x, y, c) - expected) <= 1e-6);
          }
}

TEST_CASE("render_loop translates a periodic band") {
  const TranslationScene config{{64, 64}, 8, 1.0};
  const SyntheticScene scene = make_scene(config);
  for (int levels : {1, 3}) {
    const CinemagraphJob job{scene.image, scene.mask, scene.flow, LoopSpec(8), levels, std::nullopt, std::nullopt};
    const auto frames = render_loop(job);
    for (int t = 0; t <= 8; ++t) {
      const ImageRGB expected = ground_truth_frame(config, t);
      double worst = 0.0;
      double sq = 0.0;
      int n = 0;
      // Interior rows of the band, away from its vertical borders.
      for (int y = config.band_top() + 4; y < config.band_bottom() - 4; ++y)
        for (int x = 4; x < 60; ++x)
          for (int c = 0; c < 3; ++c) {
            const double d = std::abs(frames[t].at(x, y, c) - expected.at(x, y, c));
            worst = std::max(worst, d);
            sq += d * d;
            ++n;
          }
      INFO("levels " << levels << " frame " << t);
      if (levels == 1) {
        // Integer shifts at a single level land exactly on the grid.
        CHECK(worst <= 1e-6);
      } else {
        // Coarse levels see fractional shifts of a near-Nyquist texture.
        CHECK(std::sqrt(sq / n) <= 0.05);
      }
    }
  }
}

TEST_CASE("render_loop is identical across thread counts") {
  const CinemagraphJob job = demo_job(32, rotation_flow(32, 32, 10, 20, 0.08), 5);
  RenderOptions one, many;
  one.threads = 1;
  many.threads = 4;
  CHECK(render_loop(job, one) == render_loop(job, many));
}

TEST_CASE("render_loop resamples mask and flow resolutions") {
  // Mask at half resolution, flow at double resolution.
  const ImageRGB image = make_demo_image({32, 32}, 5);
  const Mask mask = resample_nearest(make_demo_mask({32, 32}, 5), {16, 16});
  const CinemagraphJob job{image, mask, constant_flow(64, 64, 2.0, 0.0), LoopSpec(4), 2, std::nullopt, Size{32, 32}};
  const auto frames = render_loop(job);
  CHECK(frames.front().size() == Size{32, 32});
  CHECK(loop_gap(frames) <= 1e-4);
}

TEST_CASE("render_loop reports the failing frame") {
  const CinemagraphJob far{ImageRGB(2, 2, 0.5f), Mask(2, 2, true), constant_flow(2, 2, 100.0, 0.0), LoopSpec(2), 1,
                           std::nullopt, std::nullopt};
  CHECK_THROWS_WITH_AS(render_loop(far), "frame 1: nothing to fill from", Error);
}

TEST_CASE("render_loop rejects invalid jobs") {
  CinemagraphJob job = demo_job(32, FlowField(32, 32), 2);
  job.flow.data()[5] = std::nanf("");
  CHECK_THROWS_AS(render_loop(job), Error);
  job = demo_job(30, FlowField(30, 30), 2);
  CHECK_THROWS_WITH_AS(render_loop(job), doctest::Contains("divisible"), Error);
}
