#include "trivoc/ply.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "trivoc/errors.hpp"

namespace trivoc {

namespace {

enum class ScalarType { kI8, kU8, kI16, kU16, kI32, kU32, kF32, kF64 };

int scalar_size(ScalarType t) {
  switch (t) {
    case ScalarType::kI8:
    case ScalarType::kU8:
      return 1;
    case ScalarType::kI16:
    case ScalarType::kU16:
      return 2;
    case ScalarType::kI32:
    case ScalarType::kU32:
    case ScalarType::kF32:
      return 4;
    case ScalarType::kF64:
      return 8;
  }
  return 0;
}

bool parse_scalar_type(const std::string& word, ScalarType* out) {
  if (word == "char" || word == "int8") *out = ScalarType::kI8;
  else if (word == "uchar" || word == "uint8") *out = ScalarType::kU8;
  else if (word == "short" || word == "int16") *out = ScalarType::kI16;
  else if (word == "ushort" || word == "uint16") *out = ScalarType::kU16;
  else if (word == "int" || word == "int32") *out = ScalarType::kI32;
  else if (word == "uint" || word == "uint32") *out = ScalarType::kU32;
  else if (word == "float" || word == "float32") *out = ScalarType::kF32;
  else if (word == "double" || word == "float64") *out = ScalarType::kF64;
  else return false;
  return true;
}

double decode_scalar(ScalarType t, const char* bytes) {
  auto load = [&](auto value) {
    std::memcpy(&value, bytes, sizeof(value));
    return static_cast<double>(value);
  };
  switch (t) {
    case ScalarType::kI8:
      return load(std::int8_t{});
    case ScalarType::kU8:
      return load(std::uint8_t{});
    case ScalarType::kI16:
      return load(std::int16_t{});
    case ScalarType::kU16:
      return load(std::uint16_t{});
    case ScalarType::kI32:
      return load(std::int32_t{});
    case ScalarType::kU32:
      return load(std::uint32_t{});
    case ScalarType::kF32:
      return load(float{});
    case ScalarType::kF64:
      return load(double{});
  }
  return 0.0;
}

struct Property {
  ScalarType type;
  std::string name;
};

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream ss(line);
  std::string w;
  while (ss >> w) words.push_back(w);
  return words;
}

}  // namespace

PlyCloud parse_ply(const std::string& bytes) {
  std::size_t pos = 0;
  int line_no = 0;

  auto next_line = [&]() -> std::string {
    if (pos >= bytes.size()) {
      throw MalformedHeader("unexpected end of file in header after line " +
                            std::to_string(line_no));
    }
    const std::size_t eol = bytes.find('\n', pos);
    std::string line = bytes.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = (eol == std::string::npos) ? bytes.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (next_line() != "ply") {
    throw MalformedHeader("line 1: expected 'ply' magic");
  }

  bool binary = false;
  bool have_format = false;
  long long vertex_count = -1;
  long long rows_before_vertex = 0;
  std::vector<Property> vertex_props;
  bool in_vertex_element = false;

  for (;;) {
    const std::string line = next_line();
    const std::vector<std::string> words = split_words(line);
    if (words.empty() || words[0] == "comment" || words[0] == "obj_info") {
      continue;
    }
    const std::string& key = words[0];

    if (key == "format") {
      if (words.size() != 3 || words[2] != "1.0") {
        throw UnsupportedFormat("line " + std::to_string(line_no) +
                                ": unsupported PLY version");
      }
      if (words[1] == "ascii") {
        binary = false;
      } else if (words[1] == "binary_little_endian") {
        binary = true;
      } else {
        throw UnsupportedFormat("line " + std::to_string(line_no) +
                                ": unsupported format '" + words[1] + "'");
      }
      have_format = true;
    } else if (key == "element") {
      if (words.size() != 3) {
        throw MalformedHeader("line " + std::to_string(line_no) +
                              ": malformed element declaration");
      }
      in_vertex_element = false;
      long long count = -1;
      auto [p, ec] = std::from_chars(
          words[2].data(), words[2].data() + words[2].size(), count);
      if (ec != std::errc() || p != words[2].data() + words[2].size() ||
          count < 0) {
        throw MalformedHeader("line " + std::to_string(line_no) +
                              ": bad element count '" + words[2] + "'");
      }
      if (words[1] == "vertex") {
        if (vertex_count >= 0) {
          throw MalformedHeader("line " + std::to_string(line_no) +
                                ": duplicate vertex element");
        }
        vertex_count = count;
        in_vertex_element = true;
      } else if (vertex_count < 0) {
        if (binary) {
          // Binary elements have no self-delimiting rows, so an element of
          // unknown layout ahead of the vertices cannot be skipped.
          throw UnsupportedFormat(
              "line " + std::to_string(line_no) +
              ": binary element precedes the vertex element");
        }
        rows_before_vertex += count;  // ASCII rows, one line each
      }
    } else if (key == "property") {
      if (!in_vertex_element) continue;  // properties of skipped elements
      if (words.size() >= 2 && words[1] == "list") {
        throw UnsupportedFormat("line " + std::to_string(line_no) +
                                ": list property in vertex element");
      }
      ScalarType type;
      if (words.size() != 3 || !parse_scalar_type(words[1], &type)) {
        throw UnsupportedFormat("line " + std::to_string(line_no) +
                                ": unsupported property type");
      }
      vertex_props.push_back({type, words[2]});
    } else if (key == "end_header") {
      break;
    } else {
      throw MalformedHeader("line " + std::to_string(line_no) +
                            ": unrecognized header keyword '" + key + "'");
    }
  }

  if (!have_format) {
    throw MalformedHeader("header is missing the format declaration");
  }
  if (vertex_count < 0) {
    throw MalformedHeader("header declares no vertex element");
  }

  int ix = -1, iy = -1, iz = -1;
  for (int i = 0; i < static_cast<int>(vertex_props.size()); ++i) {
    if (vertex_props[i].name == "x") ix = i;
    if (vertex_props[i].name == "y") iy = i;
    if (vertex_props[i].name == "z") iz = i;
  }
  if (ix < 0 || iy < 0 || iz < 0) {
    throw MalformedHeader("vertex element lacks x/y/z properties");
  }

  PlyCloud cloud;
  cloud.points.reserve(static_cast<std::size_t>(vertex_count));
  const int nprops = static_cast<int>(vertex_props.size());

  if (binary) {
    // Elements before the vertices were rejected above, so vertex data
    // starts right after the header.
    for (long long v = 0; v < vertex_count; ++v) {
      double coords[3] = {0, 0, 0};
      for (int p = 0; p < nprops; ++p) {
        const int size = scalar_size(vertex_props[p].type);
        if (pos + size > bytes.size()) {
          throw CountMismatch("unexpected end of data at byte " +
                              std::to_string(pos) + " (vertex " +
                              std::to_string(v + 1) + " of " +
                              std::to_string(vertex_count) + ")");
        }
        const double value =
            decode_scalar(vertex_props[p].type, bytes.data() + pos);
        pos += size;
        if (p == ix) coords[0] = value;
        if (p == iy) coords[1] = value;
        if (p == iz) coords[2] = value;
      }
      cloud.points.emplace_back(coords[0], coords[1], coords[2]);
    }
  } else {
    // Rows of elements declared before the vertices occupy one line each.
    for (long long r = 0; r < rows_before_vertex; ++r) {
      if (pos >= bytes.size()) {
        throw CountMismatch("unexpected end of data at line " +
                            std::to_string(line_no + 1) +
                            " while skipping a non-vertex element");
      }
      const std::size_t eol = bytes.find('\n', pos);
      pos = (eol == std::string::npos) ? bytes.size() : eol + 1;
      ++line_no;
    }

    // Vertex payload: whitespace-separated token stream.
    auto next_token = [&](long long vertex, int prop) -> std::string {
      while (pos < bytes.size() &&
             (bytes[pos] == ' ' || bytes[pos] == '\t' || bytes[pos] == '\r' ||
              bytes[pos] == '\n')) {
        if (bytes[pos] == '\n') ++line_no;
        ++pos;
      }
      if (pos >= bytes.size()) {
        throw CountMismatch(
            "unexpected end of data at line " + std::to_string(line_no + 1) +
            " (vertex " + std::to_string(vertex + 1) + " of " +
            std::to_string(vertex_count) + ", property " +
            vertex_props[prop].name + ")");
      }
      const std::size_t start = pos;
      while (pos < bytes.size() && bytes[pos] != ' ' && bytes[pos] != '\t' &&
             bytes[pos] != '\r' && bytes[pos] != '\n') {
        ++pos;
      }
      return bytes.substr(start, pos - start);
    };

    for (long long v = 0; v < vertex_count; ++v) {
      double coords[3] = {0, 0, 0};
      for (int p = 0; p < nprops; ++p) {
        const std::string token = next_token(v, p);
        double value = 0.0;
        auto [end, ec] = std::from_chars(token.data(),
                                         token.data() + token.size(), value);
        if (ec != std::errc() || end != token.data() + token.size()) {
          throw CountMismatch("line " + std::to_string(line_no + 1) +
                              ": bad numeric token '" + token + "'");
        }
        if (p == ix) coords[0] = value;
        if (p == iy) coords[1] = value;
        if (p == iz) coords[2] = value;
      }
      cloud.points.emplace_back(coords[0], coords[1], coords[2]);
    }
  }

  return cloud;
}

PlyCloud load_ply(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open PLY file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_ply(buffer.str());
}

void write_ply(const PlyCloud& cloud, std::ostream& os, bool binary) {
  os << "ply\n";
  os << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n");
  os << "element vertex " << cloud.points.size() << "\n";
  os << "property double x\nproperty double y\nproperty double z\n";
  os << "end_header\n";
  if (binary) {
    for (const Point3& p : cloud.points) {
      double coords[3] = {p.x(), p.y(), p.z()};
      os.write(reinterpret_cast<const char*>(coords), sizeof(coords));
    }
  } else {
    char buf[32];
    for (const Point3& p : cloud.points) {
      for (int k = 0; k < 3; ++k) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p(k));
        os.write(buf, end - buf);
        os.put(k == 2 ? '\n' : ' ');
      }
    }
  }
}

}  // namespace trivoc
