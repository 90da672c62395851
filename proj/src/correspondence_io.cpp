#include "trivoc/correspondence_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "trivoc/errors.hpp"

namespace trivoc {

std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

CorrespondenceSet parse_correspondences(std::istream& in) {
  CorrespondenceSet corr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);

    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;

    if (tokens.size() != 6) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 6 values, got " +
                       std::to_string(tokens.size()));
    }
    double v[6];
    for (int k = 0; k < 6; ++k) {
      auto [end, ec] = std::from_chars(
          tokens[k].data(), tokens[k].data() + tokens[k].size(), v[k]);
      if (ec != std::errc() || end != tokens[k].data() + tokens[k].size()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": bad numeric value '" + tokens[k] + "'");
      }
      if (!std::isfinite(v[k])) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": non-finite value '" + tokens[k] + "'");
      }
    }
    corr.source.emplace_back(v[0], v[1], v[2]);
    corr.target.emplace_back(v[3], v[4], v[5]);
  }
  return corr;
}

CorrespondenceSet load_correspondences(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open correspondence file: " + path.string());
  }
  return parse_correspondences(in);
}

void write_correspondences(const CorrespondenceSet& corr, std::ostream& os) {
  os << "# p_x p_y p_z q_x q_y q_z\n";
  const int n = corr.size();
  for (int i = 0; i < n; ++i) {
    const Point3& p = corr.source[i];
    const Point3& q = corr.target[i];
    os << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
       << format_double(p.z()) << ' ' << format_double(q.x()) << ' '
       << format_double(q.y()) << ' ' << format_double(q.z()) << '\n';
  }
}

void save_correspondences(const CorrespondenceSet& corr,
                          const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) {
    throw ParseError("cannot write correspondence file: " + path.string());
  }
  write_correspondences(corr, os);
}

std::string ground_truth_to_json(const GroundTruthSidecar& gt) {
  nlohmann::ordered_json j;
  for (int r = 0; r < 3; ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < 3; ++c) row.push_back(gt.transform.rotation(r, c));
    j["rotation"].push_back(row);
  }
  j["translation"] = {gt.transform.translation.x(),
                      gt.transform.translation.y(),
                      gt.transform.translation.z()};
  j["inlier_indices"] = gt.inlier_indices;
  return j.dump(2) + "\n";
}

GroundTruthSidecar ground_truth_from_json(const std::string& text) {
  GroundTruthSidecar gt;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        gt.transform.rotation(r, c) = j.at("rotation").at(r).at(c);
      }
    }
    for (int k = 0; k < 3; ++k) {
      gt.transform.translation(k) = j.at("translation").at(k);
    }
    gt.inlier_indices = j.at("inlier_indices").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad ground-truth JSON: ") + e.what());
  }
  return gt;
}

void save_ground_truth(const GroundTruthSidecar& gt,
                       const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) {
    throw ParseError("cannot write ground-truth file: " + path.string());
  }
  os << ground_truth_to_json(gt);
}

GroundTruthSidecar load_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open ground-truth file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ground_truth_from_json(buffer.str());
}

}  // namespace trivoc
