#pragma once

#include <array>
#include <span>

#include "trivoc/types.hpp"

namespace trivoc {

// Rejection thresholds for near-degenerate 3-point sets: a triad is unusable
// when two of its points (nearly) coincide or when the three are (nearly)
// collinear.
struct DegeneracyTolerances {
  double min_pair_distance = 1e-9;  // meters
  double min_normal_norm = 1e-12;   // norm of the triangle cross product
};

// Exact rigid alignment of two 3-point sets: builds an orthonormal frame on
// each triangle (x along the first edge, z along the normal) and composes
// them. Maps src exactly onto dst when the triangles are congruent.
// Throws DegenerateTriad if either triad fails the tolerance checks.
RigidTransform solve_minimal_3pt(const std::array<Point3, 3>& src,
                                 const std::array<Point3, 3>& dst,
                                 const DegeneracyTolerances& tol = {});

// Least-squares rigid alignment (SVD of the cross-covariance with the
// determinant correction, so det(R) = +1 even when the best unconstrained
// solution is a reflection). `subset` holds 1-based correspondence labels,
// at least three. Throws DegenerateConfiguration when the covariance is
// rank-deficient beyond the reflection-correctable case (collinear points).
RigidTransform solve_svd(const CorrespondenceSet& corr,
                         std::span<const int> subset);

// As above over raw paired point ranges.
RigidTransform solve_svd_points(std::span<const Point3> src,
                                std::span<const Point3> dst);

// ||R*p + t - q||.
inline double residual(const RigidTransform& t, const Point3& p,
                       const Point3& q) {
  return (t.rotation * p + t.translation - q).norm();
}

// Geodesic distance between rotations, in degrees: the angle of
// r_gt^T * r_est, in [0, 180].
double rotation_error_deg(const Eigen::Matrix3d& r_est,
                          const Eigen::Matrix3d& r_gt);

inline double translation_error_m(const Eigen::Vector3d& t_est,
                                  const Eigen::Vector3d& t_gt) {
  return (t_gt - t_est).norm();
}

}  // namespace trivoc
