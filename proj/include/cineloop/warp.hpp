#pragma once

#include <vector>

#include "cineloop/field.hpp"
#include "cineloop/mask.hpp"
#include "cineloop/pyramid.hpp"
#include "cineloop/raster.hpp"

namespace cineloop {

/// Destinations whose total splat weight falls below this are holes.
inline constexpr double kHoleEpsilon = 1e-8;
/// Hole area (fraction of the map) at or above which diffusion inpainting runs.
inline constexpr double kLargeHoleRatio = 0.03;
/// Side of the median window used for small holes.
inline constexpr int kMedianWindow = 7;
/// Smoothing sweeps applied to hole pixels after diffusion fill.
inline constexpr int kDiffusionSmoothingSweeps = 20;

/// 1 = missing value.
class HoleMask : public BinaryGrid {
 public:
  using BinaryGrid::BinaryGrid;
};

/// Per-destination weighted feature sums and weight sums. Kept in double so
/// that joint normalization of identical contributions is exact.
struct SplatAccumulator {
  int width;
  int height;
  int channels;
  std::vector<double> feature_sums;  // width * height * channels
  std::vector<double> weights;       // width * height

  SplatAccumulator(int w, int h, int c)
      : width(w), height(h), channels(c),
        feature_sums(static_cast<std::size_t>(w) * h * c, 0.0),
        weights(static_cast<std::size_t>(w) * h, 0.0) {}
};

/// Resizes both channels bilinearly to `target` and multiplies u by
/// target.width / width and v by target.height / height.
DisplacementField rescale_displacement(const DisplacementField& field, Size target);

/// Forward-warps `features` along `displacement` with bilinear splatting,
/// scaling every contribution by `weight_scale`. Contributions that land off
/// the grid are dropped. Accumulation is sequential in row-major order.
SplatAccumulator splat(const FeatureMap& features, const DisplacementField& displacement, double weight_scale);

struct JointSplat {
  FeatureMap features;
  HoleMask holes;
};

/// Splats along the future displacement with weight alpha and along the past
/// displacement with 1 - alpha, normalizing by the combined weight.
JointSplat joint_splat(const FeatureMap& features, const DisplacementField& forward,
                       const DisplacementField& backward, double alpha);

/// Fills hole pixels; pixels outside the hole mask are never modified.
///
/// Holes covering at least `large_hole_ratio` of the map are diffusion-filled.
/// Otherwise each hole takes the per-channel median of the known values in
/// its 7x7 window; holes without any known neighbour are retried in later
/// passes against the updated map.
FeatureMap fill_holes(const FeatureMap& features, const HoleMask& holes, double large_hole_ratio = kLargeHoleRatio);

/// Backward warp used by the ablation harness: bilinear gather from
/// x - displacement(x) with clamped borders, blended alpha / (1 - alpha).
FeatureMap gather_blend(const FeatureMap& features, const DisplacementField& forward,
                        const DisplacementField& backward, double alpha);

enum class WarpMethod { kSplat, kGather };

struct WarpOptions {
  WarpMethod method = WarpMethod::kSplat;
  /// When false only the finest level is warped; coarser levels pass through.
  bool warp_all_levels = true;
  double large_hole_ratio = kLargeHoleRatio;
};

/// Multi-scale warp: every level receives the displacement fields rescaled
/// to its resolution, is jointly splatted, and has its holes filled.
FeaturePyramid warp_pyramid(const FeaturePyramid& pyramid, const DisplacementField& forward,
                            const DisplacementField& backward, double alpha, const WarpOptions& options = {});

}  // namespace cineloop
