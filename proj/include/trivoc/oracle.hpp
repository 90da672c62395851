#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "trivoc/geometry.hpp"
#include "trivoc/types.hpp"

namespace trivoc {

// Largest instance the exhaustive oracle accepts (C(N,3) budget guard).
inline constexpr int kOracleMaxSize = 40;

// Ground-truth consensus maximizer for small instances: evaluates the
// minimal model of every non-degenerate triad and returns the largest
// consensus with the model that produced it. Ties go to the
// lexicographically smallest triad. Throws InstanceTooLarge when
// N > kOracleMaxSize. An instance with no usable triad yields an empty
// consensus and the identity transform.
std::pair<ConsensusSet, RigidTransform> exhaustive_consensus_oracle(
    const CorrespondenceSet& corr, double gamma,
    const DegeneracyTolerances& tol = {});

// Independent O(N^2) re-evaluation of the pairwise equal-length test, every
// ordered pair computed from scratch (no mirroring); row-major N x N with a
// false diagonal. Reference implementation for testing the matrix builder.
std::vector<std::uint8_t> pairwise_oracle(const CorrespondenceSet& corr,
                                          double gamma);

}  // namespace trivoc
