#include "cineloop/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "cineloop/metrics.hpp"

namespace cineloop {

std::string_view arm_name(Arm arm) {
  switch (arm) {
    case Arm::kFull:
      return "full";
    case Arm::kNoForwardWarp:
      return "no-forward-warp";
    case Arm::kNoDfw:
      return "no-DFW";
    case Arm::kNoMsdfw:
      return "no-MSDFW";
    case Arm::kNoMask:
      return "no-mask";
  }
  return "unknown";
}

std::vector<ImageRGB> render_arm(const CinemagraphJob& job, Arm arm, int threads) {
  CinemagraphJob arm_job = job;
  RenderOptions options;
  options.threads = threads;
  switch (arm) {
    case Arm::kFull:
      break;
    case Arm::kNoForwardWarp:
      options.warp.method = WarpMethod::kGather;
      break;
    case Arm::kNoDfw:
      arm_job.levels = 1;
      break;
    case Arm::kNoMsdfw:
      options.warp.warp_all_levels = false;
      break;
    case Arm::kNoMask:
      options.mask_motion = false;
      break;
  }
  return render_loop(arm_job, options);
}

std::pair<double, double> score_frames(std::span<const ImageRGB> frames, std::span<const ImageRGB> reference) {
  double error = 0.0;
  double similarity = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    error += rmse(frames[i], reference[i]);
    similarity += ms_ssim(frames[i], reference[i]);
  }
  const double n = static_cast<double>(frames.size());
  return {error / n, similarity / n};
}

std::vector<EvalRow> run_ablation(const CinemagraphJob& job, const std::optional<GroundTruth>& ground_truth,
                                  int threads) {
  const std::vector<ImageRGB> full = render_arm(job, Arm::kFull, threads);
  std::vector<ImageRGB> truth;
  if (ground_truth) {
    for (std::size_t t = 0; t < full.size(); ++t) truth.push_back((*ground_truth)(static_cast<int>(t)));
  }

  std::vector<EvalRow> rows;
  for (Arm arm : kAllArms) {
    const std::vector<ImageRGB> frames = arm == Arm::kFull ? full : render_arm(job, arm, threads);
    const std::string method(arm_name(arm));
    const auto [rmse_full, ssim_full] = score_frames(frames, full);
    rows.push_back({method, "rmse_vs_full", rmse_full});
    rows.push_back({method, "ms_ssim_vs_full", ssim_full});
    if (!truth.empty()) {
      const auto [rmse_gt, ssim_gt] = score_frames(frames, truth);
      rows.push_back({method, "rmse_vs_gt", rmse_gt});
      rows.push_back({method, "ms_ssim_vs_gt", ssim_gt});
    }
  }
  return rows;
}

std::string to_csv(std::span<const EvalRow> rows) {
  std::ostringstream out;
  out << "# metrics: RMSE (0-255 scale) and MS-SSIM only; LPIPS and FID need pretrained networks and are not computed\n";
  out << "method,metric,value\n";
  out << std::setprecision(10);
  for (const EvalRow& row : rows) out << row.method << ',' << row.metric << ',' << row.value << '\n';
  return out.str();
}

GroundTruth translation_ground_truth(const ImageRGB& image, const Mask& mask, double u, double v) {
  return [image, mask, u, v](int t) {
    const Mask m = resample_nearest(mask, image.size());
    ImageRGB out = image;
    const int w = image.width();
    const int h = image.height();
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (!m.at(x, y)) continue;
        const double sx = std::clamp(x - t * u, 0.0, w - 1.0);
        const double sy = std::clamp(y - t * v, 0.0, h - 1.0);
        const int x0 = static_cast<int>(std::floor(sx));
        const int y0 = static_cast<int>(std::floor(sy));
        const int x1 = std::min(x0 + 1, w - 1);
        const int y1 = std::min(y0 + 1, h - 1);
        const double fx = sx - x0;
        const double fy = sy - y0;
        for (int c = 0; c < 3; ++c) {
          out.at(x, y, c) = static_cast<float>(
              (1 - fy) * ((1 - fx) * image.at(x0, y0, c) + fx * image.at(x1, y0, c)) +
              fy * ((1 - fx) * image.at(x0, y1, c) + fx * image.at(x1, y1, c)));
        }
      }
    }
    return out;
  };
}

}  // namespace cineloop
