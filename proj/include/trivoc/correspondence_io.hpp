#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trivoc/types.hpp"

namespace trivoc {

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double value);

// Correspondence exchange format: one pair per line as six
// whitespace-separated reals (p_x p_y p_z q_x q_y q_z); '#' starts a
// comment, blank lines are ignored. ParseError messages name the line.
CorrespondenceSet parse_correspondences(std::istream& in);
CorrespondenceSet load_correspondences(const std::filesystem::path& path);
void write_correspondences(const CorrespondenceSet& corr, std::ostream& os);
void save_correspondences(const CorrespondenceSet& corr,
                          const std::filesystem::path& path);

// Ground-truth sidecar for generated instances: the transform that produced
// the targets plus the 1-based labels of the uncorrupted pairs. JSON.
struct GroundTruthSidecar {
  RigidTransform transform;
  std::vector<int> inlier_indices;
};

std::string ground_truth_to_json(const GroundTruthSidecar& gt);
GroundTruthSidecar ground_truth_from_json(const std::string& text);
void save_ground_truth(const GroundTruthSidecar& gt,
                       const std::filesystem::path& path);
GroundTruthSidecar load_ground_truth(const std::filesystem::path& path);

}  // namespace trivoc
