#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace trivoc {

// splitmix64 step; used to derive independent seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministically combines a master seed with stream coordinates
// (e.g. cell parameters and trial ordinal) into an independent seed.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> coords) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64(s);
  for (std::uint64_t c : coords) {
    s ^= c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h = splitmix64(s);
  }
  return h;
}

// Reproducible pseudo-random generator. The engine is std::mt19937_64,
// whose output sequence is fixed by the C++ standard; all distributions are
// implemented here rather than with std::*_distribution (whose algorithms
// are implementation-defined), so streams replay exactly for a given seed.
// Note: normal() and the direction samplers call into libm (log/cos/sqrt),
// so the last bit may differ across math libraries; integer draws and
// uniform01() are bit-exact everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Unbiased integer in [lo, hi] via masked rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t mask = ~std::uint64_t{0};
    if ((range & (range - 1)) == 0) {
      return lo + static_cast<std::int64_t>(engine_() & (range - 1));
    }
    mask >>= std::countl_zero(range - 1);
    std::uint64_t draw;
    do {
      draw = engine_() & mask;
    } while (draw >= range);
    return lo + static_cast<std::int64_t>(draw);
  }

  // Standard normal via Box-Muller; draws uniforms in pairs and caches the
  // second variate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::Vector3d normal3() {
    const double x = normal();
    const double y = normal();
    const double z = normal();
    return {x, y, z};
  }

  Eigen::Vector3d unit_vector() { return normal3().normalized(); }

  // Uniform over the solid ball of the given radius.
  Eigen::Vector3d uniform_in_ball(double radius) {
    const Eigen::Vector3d dir = unit_vector();
    const double r = radius * std::cbrt(uniform01());
    return dir * r;
  }

  // Uniform over SO(3): four iid normals normalized to a unit quaternion.
  Eigen::Matrix3d rotation() {
    const double w = normal();
    const double x = normal();
    const double y = normal();
    const double z = normal();
    Eigen::Quaterniond q(w, x, y, z);
    q.normalize();
    return q.toRotationMatrix();
  }

  // k distinct integers from [0, n), in draw order (partial Fisher-Yates).
  std::vector<int> sample_distinct(int k, int n) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) {
      const int j = static_cast<int>(uniform_int(i, n - 1));
      std::swap(pool[i], pool[j]);
      out[i] = pool[i];
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace trivoc
