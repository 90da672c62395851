#include "trivoc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trivoc/errors.hpp"
#include "trivoc/ply.hpp"
#include "trivoc/rng.hpp"

namespace trivoc {

namespace {

std::vector<Point3> draw_source_points(const SyntheticScenario& s, Rng& rng) {
  std::vector<Point3> pts;
  if (s.source_cloud == "box") {
    pts.reserve(s.n);
    for (int i = 0; i < s.n; ++i) {
      const double x = rng.uniform(-s.box_half_width, s.box_half_width);
      const double y = rng.uniform(-s.box_half_width, s.box_half_width);
      const double z = rng.uniform(-s.box_half_width, s.box_half_width);
      pts.emplace_back(x, y, z);
    }
  } else if (s.source_cloud == "sphere") {
    pts.reserve(s.n);
    for (int i = 0; i < s.n; ++i) {
      pts.push_back(rng.uniform_in_ball(s.box_half_width));
    }
  } else {
    const PlyCloud cloud = load_ply(s.source_cloud);
    const int available = static_cast<int>(cloud.points.size());
    if (available < s.n) {
      throw SourceTooSmall("source cloud has " + std::to_string(available) +
                           " points, need " + std::to_string(s.n));
    }
    // Downsample: n distinct indices without replacement, in draw order.
    const std::vector<int> picks = rng.sample_distinct(s.n, available);
    pts.reserve(s.n);
    for (int idx : picks) pts.push_back(cloud.points[idx]);
  }
  return pts;
}

// Uniformly rescale and center so the cloud fits the [-half, half]^3 box.
void rescale_to_box(std::vector<Point3>& pts, double half) {
  Point3 lo = pts.front();
  Point3 hi = pts.front();
  for (const Point3& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Point3 center = (lo + hi) / 2.0;
  const double extent = (hi - lo).maxCoeff();
  const double scale = extent > 1e-300 ? 2.0 * half / extent : 1.0;
  for (Point3& p : pts) p = (p - center) * scale;
}

}  // namespace

SyntheticInstance generate_instance(const SyntheticScenario& s) {
  if (s.n < 3) {
    throw std::invalid_argument("scenario needs n >= 3");
  }
  if (s.outlier_ratio < 0.0 || s.outlier_ratio > 0.99) {
    throw std::invalid_argument("outlier_ratio must be in [0, 0.99]");
  }

  Rng rng(s.seed);
  SyntheticInstance inst;

  inst.corr.source = draw_source_points(s, rng);
  rescale_to_box(inst.corr.source, s.box_half_width);

  inst.ground_truth.rotation = rng.rotation();
  inst.ground_truth.translation = rng.uniform_in_ball(s.translation_bound);

  const int n = s.n;
  std::vector<Point3> transformed(n);
  Point3 centroid = Point3::Zero();
  for (int i = 0; i < n; ++i) {
    transformed[i] = inst.ground_truth.apply(inst.corr.source[i]);
    centroid += transformed[i];
  }
  centroid /= n;

  inst.corr.target.resize(n);
  for (int i = 0; i < n; ++i) {
    inst.corr.target[i] = transformed[i] + s.sigma * rng.normal3();
  }

  const int k = static_cast<int>(std::llround(n * s.outlier_ratio));
  const std::vector<int> outlier_picks = rng.sample_distinct(k, n);
  for (int idx : outlier_picks) {
    inst.corr.target[idx] =
        centroid + rng.uniform_in_ball(s.outlier_sphere_radius);
  }

  std::vector<std::uint8_t> replaced(n, 0);
  for (int idx : outlier_picks) replaced[idx] = 1;
  for (int i = 0; i < n; ++i) {
    if (!replaced[i]) inst.inliers.push_back(i + 1);
  }
  return inst;
}

}  // namespace trivoc
