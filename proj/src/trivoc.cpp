#include "trivoc/trivoc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "trivoc/consistency.hpp"
#include "trivoc/errors.hpp"

namespace trivoc {

namespace {

int count_consensus(const RigidTransform& t, const CorrespondenceSet& corr,
                    double gamma_sq) {
  const int n = corr.size();
  int count = 0;
  for (int i = 0; i < n; ++i) {
    const double r2 =
        (t.rotation * corr.source[i] + t.translation - corr.target[i])
            .squaredNorm();
    count += (r2 <= gamma_sq);
  }
  return count;
}

}  // namespace

ConsensusSet consensus_of(const RigidTransform& t,
                          const CorrespondenceSet& corr, double gamma) {
  const double g2 = gamma * gamma;
  const int n = corr.size();
  ConsensusSet cs;
  for (int i = 0; i < n; ++i) {
    const double r2 =
        (t.rotation * corr.source[i] + t.translation - corr.target[i])
            .squaredNorm();
    if (r2 <= g2) cs.indices.push_back(i + 1);
  }
  return cs;
}

long long max_iterations(long long x, long long y, double confidence,
                         long long cap) {
  if (x <= 0) return cap;
  if (x >= y) return 1;
  const double frac = static_cast<double>(x) / static_cast<double>(y);
  const double t =
      std::ceil(std::log(1.0 - confidence) / std::log(1.0 - frac));
  if (!(t < static_cast<double>(cap))) return cap;
  return std::max<long long>(1, static_cast<long long>(t));
}

RegistrationResult trivoc_register(const CorrespondenceSet& corr,
                                   const TriVoCConfig& config,
                                   const std::vector<int>* ground_truth) {
  const int n = corr.size();
  if (n < 3) {
    throw InsufficientCorrespondences(
        "registration needs at least 3 correspondences, got " +
        std::to_string(n));
  }

  const double gamma = config.noise.gamma();
  const double g2 = gamma * gamma;
  const double conf = config.confidence;
  const long long cap = config.max_iteration_cap;

  std::vector<std::uint8_t> is_inlier;
  if (ground_truth != nullptr) {
    is_inlier.assign(n + 1, 0);
    for (int label : *ground_truth) is_inlier[label] = 1;
  }
  std::set<std::array<int, 3>> pure_triads;

  const ConsistencyMatrix m =
      build_consistency_matrix(corr, gamma, config.threads);
  const std::vector<int> v1 = sort_correspondences(m);

  RegistrationResult result;
  SearchStats& stats = result.stats;
  std::vector<int> c_best;
  int c_max = 0;
  bool have_model = false;

  long long t1 = max_iterations(c_max, n, conf, cap);
  for (long long i = 0; i < std::min<long long>(n, t1); ++i) {
    ++stats.layer_iterations[0];
    const int a = v1[i];

    const std::vector<int> n2 = find_inlier_candidates(a, m);
    if (n2.empty()) continue;
    const ConsistencyMatrix m2 = get_reduced_consistency(m, n2);
    const std::vector<int> v2 = sort_correspondences(m2);
    const long long y2 = static_cast<long long>(n2.size());

    long long t2 = max_iterations(c_max - 1, y2, conf, cap);
    for (long long j = 0; j < std::min(y2, t2); ++j) {
      ++stats.layer_iterations[1];
      const int b = v2[j];

      const std::vector<int> n3 = find_inlier_candidates(b, m2);
      if (n3.empty()) continue;
      const ConsistencyMatrix m3 = get_reduced_consistency(m2, n3);
      const std::vector<int> v3 = sort_correspondences(m3);
      const long long y3 = static_cast<long long>(n3.size());

      long long t3 = max_iterations(c_max - 2, y3, conf, cap);
      for (long long k = 0; k < std::min(y3, t3); ++k) {
        ++stats.layer_iterations[2];
        const int c = v3[k];

        // The frame-based minimal solve is order-sensitive on noisy
        // triads; solving in ascending label order makes the model a
        // function of the 3-point set, matching the oracle's enumeration.
        std::array<int, 3> triad{a, b, c};
        std::sort(triad.begin(), triad.end());
        RigidTransform model;
        try {
          model = solve_minimal_3pt(
              {corr.source_of(triad[0]), corr.source_of(triad[1]),
               corr.source_of(triad[2])},
              {corr.target_of(triad[0]), corr.target_of(triad[1]),
               corr.target_of(triad[2])},
              config.tolerances);
        } catch (const DegenerateTriad&) {
          continue;
        }
        ++stats.triads_evaluated;
        if (config.record_triads) stats.evaluated_triads.push_back({a, b, c});
        if (ground_truth != nullptr && is_inlier[a] && is_inlier[b] &&
            is_inlier[c]) {
          pure_triads.insert(triad);
        }

        const int count = count_consensus(model, corr, g2);
        if (count > c_max) {
          c_max = count;
          c_best = consensus_of(model, corr, gamma).indices;
          result.minimal_model = model;
          have_model = true;
          stats.consensus_history.emplace_back(stats.triads_evaluated, count);
          t1 = max_iterations(c_max, n, conf, cap);
          t2 = max_iterations(c_max - 1, y2, conf, cap);
          t3 = max_iterations(c_max - 2, y3, conf, cap);
        }
      }
    }
  }

  if (ground_truth != nullptr) {
    stats.pure_inlier_triads = static_cast<long long>(pure_triads.size());
  }

  result.consensus.indices = std::move(c_best);
  if (c_max >= 3) {
    result.success = true;
    try {
      result.transform = solve_svd(corr, result.consensus.indices);
    } catch (const DegenerateConfiguration&) {
      // Consensus points happen to be collinear; the minimal model is the
      // best available estimate.
      result.transform = result.minimal_model;
    }
  } else {
    result.success = false;
    result.transform = have_model ? result.minimal_model : RigidTransform{};
  }
  stats.refreshed_consensus_size = count_consensus(result.transform, corr, g2);
  return result;
}

}  // namespace trivoc
