#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "trivoc/types.hpp"

namespace trivoc {

struct PlyCloud {
  std::vector<Point3> points;
};

// Parses a PLY byte buffer. Supported: format ascii 1.0 and
// binary_little_endian 1.0, scalar per-vertex properties with x/y/z
// present; unknown scalar properties are skipped. Errors (MalformedHeader,
// CountMismatch, UnsupportedFormat) identify the offending line or byte.
PlyCloud parse_ply(const std::string& bytes);

PlyCloud load_ply(const std::filesystem::path& path);

// Writes x/y/z as double properties; the ASCII form uses shortest
// round-trip decimals, so write-then-parse reproduces coordinates exactly.
void write_ply(const PlyCloud& cloud, std::ostream& os, bool binary = false);

}  // namespace trivoc
