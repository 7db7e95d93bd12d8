#pragma once

#include <cmath>
#include <cstdint>

#include "proxpoint/space.hpp"

namespace proxpoint::rng {

// Counter-based sampling: every draw is a pure function of (seed, index,
// position in stream), so sequences can be evaluated at arbitrary indices in
// any order and reproduce bit-exactly. The stdlib distributions are avoided
// because their output is implementation-defined.

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(mix64(seed)) {}

  // Stream keyed by (seed, index); distinct indices give decorrelated streams.
  Stream(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(mix64(seed) ^ (index + 0x632be59bd9b4e019ull))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  // Standard normal via Box-Muller (cosine branch only).
  double normal() {
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  VecX<double> normal_vec(Index dim) {
    VecX<double> v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = normal();
    return v;
  }

  // Uniform in the closed ball of the given radius.
  VecX<double> ball_point(Index dim, double radius) {
    VecX<double> g = normal_vec(dim);
    double n = g.norm();
    if (n == 0.0) return VecX<double>::Zero(dim);
    double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(dim));
    return (r / n) * g;
  }

 private:
  std::uint64_t state_;
};

}  // namespace proxpoint::rng
