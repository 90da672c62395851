#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include <trivoc/geometry.hpp>
#include <trivoc/rng.hpp>
#include <trivoc/types.hpp>

namespace helpers {

// Geodesic rotation distance in degrees via 2*asin(|G - I|_F / (2*sqrt(2))).
// Equivalent to the acos-of-trace form but exact near zero, where the acos
// form quantizes at ~1.2e-6 deg (one ulp of the trace).  Needed whenever a
// tolerance below 1e-5 deg is asserted.
inline double stable_rotation_error_deg(const Eigen::Matrix3d& r_est,
                                        const Eigen::Matrix3d& r_gt) {
  const Eigen::Matrix3d g = r_gt.transpose() * r_est;
  const double s =
      (g - Eigen::Matrix3d::Identity()).norm() / (2.0 * std::numbers::sqrt2);
  if (s >= 1.0) return 180.0;
  return 2.0 * std::asin(s) * 180.0 / std::numbers::pi;
}

inline trivoc::RigidTransform random_transform(trivoc::Rng& rng,
                                               double translation_bound = 3.0) {
  trivoc::RigidTransform t;
  t.rotation = rng.rotation();
  t.translation = rng.uniform_in_ball(translation_bound);
  return t;
}

// Random triad with a non-degenerate triangle (area bounded away from zero).
inline std::array<trivoc::Point3, 3> random_triad(trivoc::Rng& rng,
                                                  double half_width = 0.5) {
  while (true) {
    std::array<trivoc::Point3, 3> pts;
    for (auto& p : pts)
      for (int k = 0; k < 3; ++k) p[k] = rng.uniform(-half_width, half_width);
    const trivoc::Point3 n = (pts[1] - pts[0]).cross(pts[2] - pts[0]);
    const double min_edge = std::min({(pts[1] - pts[0]).norm(),
                                      (pts[2] - pts[0]).norm(),
                                      (pts[2] - pts[1]).norm()});
    if (n.norm() > 1e-3 && min_edge > 1e-2) return pts;
  }
}

inline std::array<trivoc::Point3, 3> apply_to_triad(
    const trivoc::RigidTransform& t, const std::array<trivoc::Point3, 3>& pts) {
  return {t.apply(pts[0]), t.apply(pts[1]), t.apply(pts[2])};
}

}  // namespace helpers
