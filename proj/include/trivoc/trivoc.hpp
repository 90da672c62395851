#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "trivoc/geometry.hpp"
#include "trivoc/types.hpp"

namespace trivoc {

struct TriVoCConfig {
  NoiseModel noise;                          // gamma = multiplier * sigma
  double confidence = 0.99;                  // per-layer stopping confidence
  long long max_iteration_cap = 1'000'000;   // per-layer safety ceiling
  DegeneracyTolerances tolerances;
  int threads = 1;             // workers for consistency-matrix construction
  bool record_triads = false;  // log every evaluated triad (diagnostics)
};

struct SearchStats {
  // Number of 3-point sets for which a minimal model was solved; degenerate
  // (skipped) triads are not included.
  long long triads_evaluated = 0;
  // Distinct evaluated triads whose three members are all ground-truth
  // inliers; populated only when ground truth is supplied.
  std::optional<long long> pure_inlier_triads;
  // Times each selection layer advanced (outer, middle, inner).
  std::array<long long, 3> layer_iterations{0, 0, 0};
  // (triad ordinal, consensus size) at each improvement; sizes strictly
  // increase.
  std::vector<std::pair<long long, int>> consensus_history;
  // Consensus size re-counted under the final (refined) transform; the
  // reported consensus set itself stays frozen at the minimal model that
  // produced it.
  int refreshed_consensus_size = 0;
  // Every evaluated triad, in evaluation order (only when record_triads).
  std::vector<std::array<int, 3>> evaluated_triads;
};

struct RegistrationResult {
  RigidTransform transform;      // final estimate (refined when success)
  RigidTransform minimal_model;  // best minimal model found
  ConsensusSet consensus;        // frozen at the best minimal model
  SearchStats stats;
  // False when no triad produced a consensus of at least 3 (no-consensus
  // outcome); transform then carries the best effort.
  bool success = false;
};

// All correspondences whose residual under t is <= gamma (inclusive),
// evaluated over the full set.
ConsensusSet consensus_of(const RigidTransform& t,
                          const CorrespondenceSet& corr, double gamma);

// Iterations needed to draw at least one all-inlier sample with the given
// confidence when x of y candidates are inliers: ceil(log(1-confidence) /
// log(1-x/y)), clamped to [1, cap]. x <= 0 maps to cap (no evidence yet),
// x >= y to 1.
long long max_iterations(long long x, long long y, double confidence,
                         long long cap);

// Triple-layered voting registration. Builds the consistency matrix, then
// nests three vote-sorted, candidate-restricted point selections; each full
// triad is solved minimally and scored by consensus over the full set, and
// every improvement tightens the per-layer iteration bounds. The winning
// consensus is refined by least squares. Deterministic: no randomness
// anywhere, so identical inputs give identical results.
//
// `ground_truth_inliers` (1-based labels) only enables instrumentation
// counters; it never influences the estimate.
// Throws InsufficientCorrespondences when corr has fewer than 3 pairs.
RegistrationResult trivoc_register(
    const CorrespondenceSet& corr, const TriVoCConfig& config,
    const std::vector<int>* ground_truth_inliers = nullptr);

}  // namespace trivoc
