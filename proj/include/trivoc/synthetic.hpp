#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trivoc/types.hpp"

namespace trivoc {

// Parameters of one synthetic registration instance. `source_cloud` names a
// built-in procedural cloud ("box": uniform in the cube, "sphere": uniform
// in the ball) or gives a PLY path to downsample.
struct SyntheticScenario {
  int n = 100;
  double outlier_ratio = 0.0;  // in [0, 0.99]
  double sigma = 0.01;
  double box_half_width = 0.5;
  double translation_bound = 3.0;
  double outlier_sphere_radius = 1.0;
  std::uint64_t seed = 0;
  std::string source_cloud = "box";
};

struct SyntheticInstance {
  CorrespondenceSet corr;
  RigidTransform ground_truth;
  std::vector<int> inliers;  // ascending 1-based labels of uncorrupted pairs
};

// Builds one instance, deterministically per seed. The draw sequence is
// fixed: (1) source points (or PLY downsample indices), then rescaling of
// the source into the centered box; (2) ground-truth rotation (uniform over
// SO(3)); (3) translation (uniform over the ball of radius
// translation_bound); (4) per-point Gaussian noise on the transformed
// targets; (5) the round(n * outlier_ratio) replaced indices; (6) one
// uniform point per outlier in the sphere of radius outlier_sphere_radius
// centered at the transformed cloud's centroid.
// Throws SourceTooSmall when a PLY cloud has fewer than n points.
SyntheticInstance generate_instance(const SyntheticScenario& s);

}  // namespace trivoc
