#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cineloop/compose.hpp"

namespace cineloop {

/// Ablation arms of the evaluation harness.
enum class Arm {
  kFull,           ///< multi-scale forward warp, masked motion
  kNoForwardWarp,  ///< bilinear gather instead of splatting
  kNoDfw,          ///< single-level pyramid: warp RGB directly
  kNoMsdfw,        ///< only the finest pyramid level is warped
  kNoMask,         ///< motion is not multiplied by the mask
};

inline constexpr Arm kAllArms[] = {Arm::kFull, Arm::kNoForwardWarp, Arm::kNoDfw, Arm::kNoMsdfw, Arm::kNoMask};

std::string_view arm_name(Arm arm);

std::vector<ImageRGB> render_arm(const CinemagraphJob& job, Arm arm, int threads = 1);

struct EvalRow {
  std::string method;
  std::string metric;
  double value;
};

using GroundTruth = std::function<ImageRGB(int t)>;

/// Renders every arm and scores it (mean over frames) against the full arm
/// and, when given, against ground-truth frames.
std::vector<EvalRow> run_ablation(const CinemagraphJob& job, const std::optional<GroundTruth>& ground_truth,
                                  int threads = 1);

/// Mean RMSE and MS-SSIM of paired frame sequences.
std::pair<double, double> score_frames(std::span<const ImageRGB> frames, std::span<const ImageRGB> reference);

/// CSV with header "method,metric,value", preceded by a '#' note line.
std::string to_csv(std::span<const EvalRow> rows);

/// Ground truth for a constant flow (u, v) on an arbitrary image: the image
/// shifted by t * (u, v) (bilinear, clamped) inside the mask.
GroundTruth translation_ground_truth(const ImageRGB& image, const Mask& mask, double u, double v);

}  // namespace cineloop
