#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace landscape {

// splitmix64 step; used to derive independent stream seeds from a master seed
// so that generation order and thread schedule cannot change any stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Mixes a master seed with a path of tags (family id, run index, ...) into a
// stream seed. derive_seed(m, {a, b}) != derive_seed(m, {b, a}) in general.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = master;
  splitmix64(state);
  for (std::uint64_t tag : path) {
    state ^= 0xD1B54A32D192ED03ULL * (tag + 1);
    splitmix64(state);
  }
  return state;
}

// Seeded random stream. Sampling is implemented on top of the raw 64-bit
// engine output (not std::*_distribution) so that sequences are identical
// across standard libraries and compilers.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derived(std::uint64_t master,
                           std::initializer_list<std::uint64_t> path) {
    return RngStream(derive_seed(master, path));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // +1 or -1 with equal probability.
  double sign() { return (next_u64() & 1ULL) ? 1.0 : -1.0; }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  Eigen::VectorXd gaussian_vector(int dim) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  Eigen::VectorXd uniform_on_sphere(int dim, double radius = 1.0) {
    Eigen::VectorXd v = gaussian_vector(dim);
    double norm = v.norm();
    while (norm == 0.0) {
      v = gaussian_vector(dim);
      norm = v.norm();
    }
    return (radius / norm) * v;
  }

  Eigen::VectorXd uniform_in_ball(int dim, double radius = 1.0) {
    const Eigen::VectorXd dir = uniform_on_sphere(dim);
    const double r = radius * std::pow(uniform01(), 1.0 / dim);
    return r * dir;
  }

  // Uniform over the cube [-half_width, half_width]^d.
  Eigen::VectorXd uniform_in_cube(int dim, double half_width) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = uniform(-half_width, half_width);
    return v;
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace landscape
