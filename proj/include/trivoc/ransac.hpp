#pragma once

#include <cstdint>

#include "trivoc/geometry.hpp"
#include "trivoc/trivoc.hpp"
#include "trivoc/types.hpp"

namespace trivoc {

struct RansacConfig {
  long long max_iterations = 10000;
  double confidence = 0.99;
  double gamma = 0.06;
  std::uint64_t rng_seed = 0;
  DegeneracyTolerances tolerances;
  bool record_triads = false;
};

// Plain RANSAC: uniform random distinct triads, minimal solve, consensus
// over the full set, adaptive stopping once the all-inlier sampling
// confidence is met, least-squares refinement of the winner. Deterministic
// for a fixed seed. Stats reuse SearchStats with layer_iterations[0]
// counting sampling iterations (degenerate samples included).
RegistrationResult ransac_register(
    const CorrespondenceSet& corr, const RansacConfig& config,
    const std::vector<int>* ground_truth_inliers = nullptr);

}  // namespace trivoc
