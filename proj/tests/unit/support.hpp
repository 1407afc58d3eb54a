#pragma once

#include <cmath>
#include <random>

#include "scalardyn/conformal.hpp"
#include "scalardyn/geometry.hpp"

namespace testsupport {

using scalardyn::ConformalGenerator;
using scalardyn::FourVector;
using scalardyn::Matrix4;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline FourVector random_vector(std::mt19937_64& rng, double scale = 1.0) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale),
          uniform(rng, -scale, scale)};
}

inline ConformalGenerator random_generator(std::mt19937_64& rng) {
  Matrix4 w{};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      w[i][j] = uniform(rng, -1, 1);
      w[j][i] = -w[i][j];
    }
  return {random_vector(rng), w, uniform(rng, -1, 1), random_vector(rng, 0.5)};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Richardson-style order check: error ratio e(h)/e(h/2) near 4, or both errors
// at round-off level.
inline bool second_order(double e_h, double e_h2, double floor = 1e-11) {
  if (e_h2 <= floor && e_h <= 4 * floor) return true;
  const double r = e_h / e_h2;
  return r >= 3.5 && r <= 4.5;
}

}  // namespace testsupport
