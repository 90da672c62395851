#include "trivoc/oracle.hpp"

#include <cmath>
#include <string>

#include "trivoc/errors.hpp"
#include "trivoc/trivoc.hpp"

namespace trivoc {

std::pair<ConsensusSet, RigidTransform> exhaustive_consensus_oracle(
    const CorrespondenceSet& corr, double gamma,
    const DegeneracyTolerances& tol) {
  const int n = corr.size();
  if (n > kOracleMaxSize) {
    throw InstanceTooLarge("exhaustive oracle accepts at most " +
                           std::to_string(kOracleMaxSize) +
                           " correspondences, got " + std::to_string(n));
  }

  ConsensusSet best;
  RigidTransform best_model;
  // Ascending (i, j, k) enumeration plus strict improvement keeps the
  // lexicographically smallest triad on ties.
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        RigidTransform model;
        try {
          model = solve_minimal_3pt(
              {corr.source_of(i), corr.source_of(j), corr.source_of(k)},
              {corr.target_of(i), corr.target_of(j), corr.target_of(k)}, tol);
        } catch (const DegenerateTriad&) {
          continue;
        }
        ConsensusSet cs = consensus_of(model, corr, gamma);
        if (cs.size() > best.size()) {
          best = std::move(cs);
          best_model = model;
        }
      }
    }
  }
  return {best, best_model};
}

std::vector<std::uint8_t> pairwise_oracle(const CorrespondenceSet& corr,
                                          double gamma) {
  const int n = corr.size();
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dp =
          std::sqrt((corr.source[i] - corr.source[j]).squaredNorm());
      const double dq =
          std::sqrt((corr.target[i] - corr.target[j]).squaredNorm());
      cells[static_cast<std::size_t>(i) * n + j] =
          (std::abs(dq - dp) <= 2.0 * gamma) ? 1 : 0;
    }
  }
  return cells;
}

}  // namespace trivoc
