#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace trivoc {

using Point3 = Eigen::Vector3d;

// Rigid transform q = R * p + t with R proper orthogonal.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Point3 apply(const Point3& p) const { return rotation * p + translation; }

  // Composition: (a * b).apply(p) == a.apply(b.apply(p)).
  RigidTransform operator*(const RigidTransform& other) const {
    return {rotation * other.rotation,
            rotation * other.translation + translation};
  }

  RigidTransform inverse() const {
    Eigen::Matrix3d rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

// Paired source/target point lists. Correspondence labels are 1-based
// everywhere in the public interface; the vectors themselves are 0-based,
// so label k refers to source[k-1] / target[k-1].
struct CorrespondenceSet {
  std::vector<Point3> source;  // the p_i
  std::vector<Point3> target;  // the q_i

  int size() const { return static_cast<int>(source.size()); }

  const Point3& source_of(int label) const { return source[label - 1]; }
  const Point3& target_of(int label) const { return target[label - 1]; }
};

// Isotropic Gaussian noise model. The inlier threshold is
// gamma = threshold_multiplier * sigma.
struct NoiseModel {
  double sigma = 0.01;
  double threshold_multiplier = 6.0;

  double gamma() const { return threshold_multiplier * sigma; }
};

// Indices of correspondences within the inlier threshold of a transform,
// sorted ascending, 1-based.
struct ConsensusSet {
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }
};

}  // namespace trivoc
