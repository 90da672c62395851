#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include <trivoc/errors.hpp>
#include <trivoc/oracle.hpp>
#include <trivoc/ransac.hpp>
#include <trivoc/rng.hpp>
#include <trivoc/synthetic.hpp>
#include <trivoc/trivoc.hpp>

#include "helpers.hpp"

using trivoc::CorrespondenceSet;
using trivoc::Point3;
using trivoc::RansacConfig;
using trivoc::RigidTransform;

TEST_CASE("ransac recovers exactly on all-inlier noise-free instances") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    trivoc::Rng rng(seed);
    const RigidTransform gt = helpers::random_transform(rng);
    CorrespondenceSet corr;
    for (int i = 0; i < 15; ++i) {
      const Point3 p = rng.uniform_in_ball(0.5);
      corr.source.push_back(p);
      corr.target.push_back(gt.apply(p));
    }
    RansacConfig config;
    config.rng_seed = seed;
    const auto result = trivoc::ransac_register(corr, config);
    CHECK(result.success);
    CHECK(result.consensus.size() == 15);
    CHECK(helpers::stable_rotation_error_deg(result.transform.rotation,
                                             gt.rotation) <= 1e-6);
    CHECK(trivoc::translation_error_m(result.transform.translation,
                                      gt.translation) <= 1e-8);
    // With every point an inlier the adaptive bound collapses immediately.
    CHECK(result.stats.layer_iterations[0] <= 3);
  }
}

TEST_CASE("ransac matches the exhaustive oracle on small instances") {
  int matches = 0;
  const int total = 100;
  for (int seed = 0; seed < total; ++seed) {
    trivoc::SyntheticScenario scenario;
    scenario.n = 20;
    scenario.outlier_ratio = 0.5;
    scenario.seed = static_cast<std::uint64_t>(seed);
    const auto instance = trivoc::generate_instance(scenario);

    RansacConfig config;
    config.rng_seed = static_cast<std::uint64_t>(seed) + 1000;
    const auto result = trivoc::ransac_register(instance.corr, config);
    const auto [oracle, oracle_t] =
        trivoc::exhaustive_consensus_oracle(instance.corr, config.gamma);

    // Sampling can never beat an exhaustive search.
    CHECK(result.consensus.size() <= oracle.size());
    if (result.consensus.size() == oracle.size()) ++matches;
  }
  CHECK(matches >= 95);
}

TEST_CASE("ransac is deterministic for a fixed seed") {
  trivoc::SyntheticScenario scenario;
  scenario.n = 50;
  scenario.outlier_ratio = 0.6;
  scenario.seed = 31;
  const auto instance = trivoc::generate_instance(scenario);

  RansacConfig config;
  config.rng_seed = 7;
  config.record_triads = true;
  const auto a = trivoc::ransac_register(instance.corr, config);
  const auto b = trivoc::ransac_register(instance.corr, config);
  CHECK(a.transform.rotation == b.transform.rotation);
  CHECK(a.transform.translation == b.transform.translation);
  CHECK(a.consensus.indices == b.consensus.indices);
  CHECK(a.stats.triads_evaluated == b.stats.triads_evaluated);
  CHECK(a.stats.layer_iterations[0] == b.stats.layer_iterations[0]);
  CHECK(a.stats.evaluated_triads == b.stats.evaluated_triads);
}

TEST_CASE("ransac cannot cope with one percent inliers in its budget") {
  trivoc::SyntheticScenario scenario;
  scenario.n = 1000;
  scenario.outlier_ratio = 0.99;
  scenario.seed = 11;
  const auto instance = trivoc::generate_instance(scenario);

  RansacConfig config;
  config.rng_seed = 11;
  const auto result = trivoc::ransac_register(instance.corr, config,
                                              &instance.inliers);
  // Either it never assembles a consensus, or it burns its whole budget
  // (the adaptive bound cannot drop below 10000 at this inlier fraction).
  const bool exhausted =
      result.stats.layer_iterations[0] == config.max_iterations;
  CHECK((exhausted || !result.success));
}

TEST_CASE("exhaustive oracle returns the full set when everything agrees") {
  trivoc::Rng rng(3);
  const RigidTransform gt = helpers::random_transform(rng);
  CorrespondenceSet corr;
  for (int i = 0; i < 10; ++i) {
    const Point3 p = rng.uniform_in_ball(0.5);
    corr.source.push_back(p);
    corr.target.push_back(gt.apply(p));
  }
  const auto [consensus, transform] =
      trivoc::exhaustive_consensus_oracle(corr, 0.06);
  REQUIRE(consensus.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(consensus.indices[i] == i + 1);
  CHECK(helpers::stable_rotation_error_deg(transform.rotation, gt.rotation) <=
        1e-6);
}

TEST_CASE("exhaustive oracle isolates the only rigid triad") {
  // Three exact inliers plus five far-flung mismatches: the only consensus
  // of size >= 3 is the inlier triad itself.
  trivoc::Rng rng(19);
  const RigidTransform gt = helpers::random_transform(rng);
  CorrespondenceSet corr;
  const std::array<Point3, 3> src = {Point3(0, 0, 0), Point3(0.4, 0, 0),
                                     Point3(0, 0.4, 0)};
  for (const auto& p : src) {
    corr.source.push_back(p);
    corr.target.push_back(gt.apply(p));
  }
  for (int i = 0; i < 5; ++i) {
    corr.source.push_back(rng.uniform_in_ball(0.5));
    corr.target.push_back(Point3(50 + 10 * i, 100 * i, -40));
  }
  const auto [consensus, transform] =
      trivoc::exhaustive_consensus_oracle(corr, 0.01);
  CHECK(consensus.indices == std::vector<int>{1, 2, 3});
  CHECK(helpers::stable_rotation_error_deg(transform.rotation, gt.rotation) <=
        1e-6);
}

TEST_CASE("exhaustive oracle refuses oversized instances") {
  trivoc::SyntheticScenario scenario;
  scenario.n = 41;
  scenario.seed = 1;
  const auto too_big = trivoc::generate_instance(scenario);
  CHECK_THROWS_AS((void)trivoc::exhaustive_consensus_oracle(too_big.corr, 0.06),
                  trivoc::InstanceTooLarge);

  scenario.n = 40;
  const auto just_fits = trivoc::generate_instance(scenario);
  const auto [consensus, transform] =
      trivoc::exhaustive_consensus_oracle(just_fits.corr, 0.06);
  CHECK(consensus.size() == 40);
}

TEST_CASE("pairwise oracle reproduces hand-checked rows") {
  // Pair (1,2) rigid, pairs with 3 not.
  CorrespondenceSet corr;
  corr.source = {Point3(0, 0, 0), Point3(1, 0, 0), Point3(0, 2, 0)};
  corr.target = {Point3(5, 5, 5), Point3(6, 5, 5), Point3(5, 9, 5)};
  const std::vector<std::uint8_t> expected = {0, 1, 0,  //
                                              1, 0, 0,  //
                                              0, 0, 0};
  CHECK(trivoc::pairwise_oracle(corr, 0.06) == expected);
}

TEST_CASE("voting search never beats the exhaustive oracle") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    trivoc::SyntheticScenario scenario;
    scenario.n = 20;
    scenario.outlier_ratio = (seed % 2 == 0) ? 0.3 : 0.7;
    scenario.seed = seed;
    const auto instance = trivoc::generate_instance(scenario);

    trivoc::TriVoCConfig config;
    config.noise.sigma = scenario.sigma;
    const auto result = trivoc::trivoc_register(instance.corr, config);
    const auto [oracle, oracle_t] =
        trivoc::exhaustive_consensus_oracle(instance.corr,
                                            config.noise.gamma());
    CHECK(result.consensus.size() <= oracle.size());
  }
}
