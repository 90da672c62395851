#include "trivoc/ransac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "trivoc/errors.hpp"
#include "trivoc/rng.hpp"

namespace trivoc {

namespace {

// Iterations needed so that, with the given confidence, at least one
// uniform 3-point sample was all-inlier when x of y correspondences are
// inliers; the per-sample success probability is (x/y)^3.
long long sample_bound(long long x, long long y, double confidence,
                       long long cap) {
  if (x <= 0) return cap;
  if (x >= y) return 1;
  const double w = static_cast<double>(x) / static_cast<double>(y);
  const double p = w * w * w;
  const double t = std::ceil(std::log(1.0 - confidence) / std::log(1.0 - p));
  if (!(t < static_cast<double>(cap))) return cap;
  return std::max<long long>(1, static_cast<long long>(t));
}

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

RegistrationResult ransac_register(const CorrespondenceSet& corr,
                                   const RansacConfig& config,
                                   const std::vector<int>* ground_truth) {
  const int n = corr.size();
  if (n < 3) {
    throw InsufficientCorrespondences(
        "registration needs at least 3 correspondences, got " +
        std::to_string(n));
  }

  const double g2 = config.gamma * config.gamma;
  Rng rng(config.rng_seed);

  std::vector<std::uint8_t> is_inlier;
  if (ground_truth != nullptr) {
    is_inlier.assign(n + 1, 0);
    for (int label : *ground_truth) is_inlier[label] = 1;
  }
  std::set<std::array<int, 3>> pure_triads;

  RegistrationResult result;
  SearchStats& stats = result.stats;
  std::vector<int> c_best;
  int c_max = 0;
  bool have_model = false;

  long long bound = config.max_iterations;
  long long iter = 0;
  while (iter < std::min(config.max_iterations, bound)) {
    ++iter;
    ++stats.layer_iterations[0];

    // Three distinct labels by rejection; draw order is part of the
    // deterministic contract.
    const int a = static_cast<int>(rng.uniform_int(1, n));
    int b = a;
    while (b == a) b = static_cast<int>(rng.uniform_int(1, n));
    int c = a;
    while (c == a || c == b) c = static_cast<int>(rng.uniform_int(1, n));

    // Ascending label order keeps the frame-based minimal model a function
    // of the sampled 3-point set rather than of the draw order.
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
      c_best = consensus_of(model, corr, config.gamma).indices;
      result.minimal_model = model;
      have_model = true;
      stats.consensus_history.emplace_back(stats.triads_evaluated, count);
      bound = sample_bound(c_max, n, config.confidence, config.max_iterations);
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
