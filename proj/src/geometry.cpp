#include "trivoc/geometry.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "trivoc/errors.hpp"

namespace trivoc {

namespace {

// Orthonormal frame attached to a triangle: x along the first edge,
// z along the normal, y completing the right-handed basis.
Eigen::Matrix3d triad_frame(const std::array<Point3, 3>& pts,
                            const DegeneracyTolerances& tol) {
  const Point3& a = pts[0];
  const Point3& b = pts[1];
  const Point3& c = pts[2];

  const double dab = (b - a).norm();
  const double dac = (c - a).norm();
  const double dbc = (c - b).norm();
  if (std::min({dab, dac, dbc}) < tol.min_pair_distance) {
    throw DegenerateTriad("triad has (nearly) coincident points");
  }

  const Eigen::Vector3d normal = (b - a).cross(c - a);
  const double nn = normal.norm();
  if (nn < tol.min_normal_norm) {
    throw DegenerateTriad("triad is (nearly) collinear");
  }

  Eigen::Matrix3d frame;
  frame.col(0) = (b - a) / dab;
  frame.col(2) = normal / nn;
  frame.col(1) = frame.col(2).cross(frame.col(0));
  return frame;
}

}  // namespace

RigidTransform solve_minimal_3pt(const std::array<Point3, 3>& src,
                                 const std::array<Point3, 3>& dst,
                                 const DegeneracyTolerances& tol) {
  const Eigen::Matrix3d fp = triad_frame(src, tol);
  const Eigen::Matrix3d fq = triad_frame(dst, tol);

  RigidTransform t;
  t.rotation = fq * fp.transpose();
  const Point3 src_centroid = (src[0] + src[1] + src[2]) / 3.0;
  const Point3 dst_centroid = (dst[0] + dst[1] + dst[2]) / 3.0;
  t.translation = dst_centroid - t.rotation * src_centroid;
  return t;
}

RigidTransform solve_svd_points(std::span<const Point3> src,
                                std::span<const Point3> dst) {
  const int n = static_cast<int>(src.size());
  if (n < 3) {
    throw InsufficientCorrespondences(
        "least-squares alignment needs at least 3 points");
  }

  Point3 src_centroid = Point3::Zero();
  Point3 dst_centroid = Point3::Zero();
  for (int i = 0; i < n; ++i) {
    src_centroid += src[i];
    dst_centroid += dst[i];
  }
  src_centroid /= n;
  dst_centroid /= n;

  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (int i = 0; i < n; ++i) {
    h += (src[i] - src_centroid) * (dst[i] - dst_centroid).transpose();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d& sv = svd.singularValues();
  if (sv(1) <= 1e-12 * std::max(1.0, sv(0))) {
    throw DegenerateConfiguration(
        "point configuration is rank-deficient (collinear)");
  }

  const Eigen::Matrix3d u = svd.matrixU();
  const Eigen::Matrix3d v = svd.matrixV();
  Eigen::Vector3d d(1.0, 1.0, 1.0);
  d(2) = ((v * u.transpose()).determinant() < 0.0) ? -1.0 : 1.0;

  RigidTransform t;
  t.rotation = v * d.asDiagonal() * u.transpose();
  t.translation = dst_centroid - t.rotation * src_centroid;
  return t;
}

RigidTransform solve_svd(const CorrespondenceSet& corr,
                         std::span<const int> subset) {
  std::vector<Point3> src;
  std::vector<Point3> dst;
  src.reserve(subset.size());
  dst.reserve(subset.size());
  for (int label : subset) {
    src.push_back(corr.source_of(label));
    dst.push_back(corr.target_of(label));
  }
  return solve_svd_points(src, dst);
}

double rotation_error_deg(const Eigen::Matrix3d& r_est,
                          const Eigen::Matrix3d& r_gt) {
  const double tr = (r_gt.transpose() * r_est).trace();
  const double arg = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  return std::abs(std::acos(arg)) * 180.0 / std::numbers::pi;
}

}  // namespace trivoc
