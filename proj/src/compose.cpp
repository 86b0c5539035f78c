#include "cineloop/compose.hpp"

#include <algorithm>
#include <string>

#include "cineloop/error.hpp"
#include "cineloop/parallel.hpp"

namespace cineloop {

namespace {

void require_same_size(Size a, Size b) {
  if (a != b) throw Error("composite_frame: shape mismatch");
}

}  // namespace

ImageRGB composite_frame(const ImageRGB& dynamic, const ImageRGB& image, const Mask& mask, const ImageRGB& delta) {
  require_same_size(dynamic.size(), image.size());
  require_same_size(mask.size(), image.size());
  require_same_size(delta.size(), image.size());
  ImageRGB out(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const bool moving = mask.at(x, y);
      for (int c = 0; c < 3; ++c) {
        const float v = moving ? dynamic.at(x, y, c) : image.at(x, y, c) + delta.at(x, y, c);
        out.at(x, y, c) = std::clamp(v, 0.0f, 1.0f);
      }
    }
  }
  return out;
}

ImageRGB composite_frame(const ImageRGB& dynamic, const ImageRGB& image, const Mask& mask) {
  return composite_frame(dynamic, image, mask, ImageRGB(image.width(), image.height()));
}

std::vector<ImageRGB> render_loop(const CinemagraphJob& job, const RenderOptions& options) {
  if (!job.flow.all_finite()) throw Error("motion field contains non-finite values");
  if (!job.image.all_finite()) throw Error("input image contains non-finite values");

  const ImageRGB image = job.output_size ? resize_bilinear(job.image, *job.output_size) : job.image;
  const Mask image_mask = resample_nearest(job.mask, image.size());
  const FlowField motion =
      options.mask_motion ? apply_mask(job.flow, resample_nearest(job.mask, job.flow.size())) : job.flow;

  const FeaturePyramid pyramid = analyze(image, job.levels);

  std::optional<StyleTransform> style;
  ImageRGB delta(image.width(), image.height());
  if (job.style) {
    style.emplace(image, *job.style);
    delta = style->delta(image);
  }

  const int n = job.loop.frame_count();
  std::vector<std::optional<ImageRGB>> frames(static_cast<std::size_t>(n) + 1);
  parallel_for(frames.size(), options.threads, [&](std::size_t index) {
    const int t = static_cast<int>(index);
    try {
      const LoopDisplacements disp = loop_displacements(motion, job.loop, t);
      const double alpha = job.loop.looping_weight(t);
      const FeaturePyramid warped = warp_pyramid(pyramid, disp.forward, disp.backward, alpha, options.warp);
      ImageRGB dynamic = synthesize(warped);
      if (style) dynamic = style->apply(dynamic);
      frames[index] = composite_frame(dynamic, image, image_mask, delta);
    } catch (const std::exception& e) {
      throw Error("frame " + std::to_string(t) + ": " + e.what());
    }
  });

  std::vector<ImageRGB> out;
  out.reserve(frames.size());
  for (auto& f : frames) out.push_back(std::move(*f));
  return out;
}

}  // namespace cineloop
