#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace scalardyn {

// Index conventions used throughout the library.
//
// * Metric signature (+,-,-,-), natural units c = 1. Lengths are measured in
//   units of 1/m0 unless a component says otherwise.
// * FourVector holds four real components in the Cartesian order (t, x, y, z).
//   Whether they are contravariant (x^mu) or covariant (p_mu, d_mu m^2) is
//   fixed by the API that produces them and stated there. Positions are
//   always contravariant; momenta and gradients are always covariant.
// * Light-front coordinates: x+ = t + z, x- = t - z, x_perp = (x, y).
//   Covariant light-front components follow the same linear map with a 1/2:
//   p+ = (p0 + p3)/2, p- = (p0 - p3)/2, so that p.x = p+ x+ + p- x- + p_perp x_perp
//   and p.p = 4 p+ p- - p_perp p_perp.

struct FourVector {
  std::array<double, 4> v{};

  constexpr FourVector() = default;
  constexpr FourVector(double t, double x, double y, double z) : v{t, x, y, z} {}

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }

  constexpr double t() const { return v[0]; }
  constexpr double x() const { return v[1]; }
  constexpr double y() const { return v[2]; }
  constexpr double z() const { return v[3]; }

  constexpr FourVector& operator+=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) v[i] += o.v[i];
    return *this;
  }
  constexpr FourVector& operator-=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) v[i] -= o.v[i];
    return *this;
  }
  constexpr FourVector& operator*=(double s) {
    for (auto& c : v) c *= s;
    return *this;
  }

  friend constexpr FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
  friend constexpr FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
  friend constexpr FourVector operator*(double s, FourVector a) { return a *= s; }
  friend constexpr FourVector operator*(FourVector a, double s) { return a *= s; }
  friend constexpr FourVector operator-(FourVector a) { return a *= -1.0; }
  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

/// Diagonal of the Minkowski metric.
inline constexpr std::array<double, 4> kMetric{1.0, -1.0, -1.0, -1.0};

/// a0 b0 - a1 b1 - a2 b2 - a3 b3.
constexpr double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// Raise or lower an index (the metric is its own inverse).
constexpr FourVector flip_index(const FourVector& a) {
  return {a[0], -a[1], -a[2], -a[3]};
}

/// Euclidean contraction a_mu b^mu of a covariant and a contravariant vector.
constexpr double contract(const FourVector& lower, const FourVector& upper) {
  return lower[0] * upper[0] + lower[1] * upper[1] + lower[2] * upper[2] +
         lower[3] * upper[3];
}

struct LightFrontCoords {
  double xplus{};
  double xminus{};
  double x1{};
  double x2{};

  friend constexpr bool operator==(const LightFrontCoords&, const LightFrontCoords&) = default;
};

/// Covariant light-front components of a covariant vector (momentum or gradient).
struct LightFrontCovector {
  double plus{};
  double minus{};
  double p1{};
  double p2{};
};

LightFrontCoords to_lightfront(const FourVector& x);
FourVector from_lightfront(const LightFrontCoords& lf);

LightFrontCovector to_lightfront_covector(const FourVector& lower);
FourVector from_lightfront_covector(const LightFrontCovector& lf);

/// x.x written in light-front variables: x+ x- - x_perp x_perp.
constexpr double lightfront_square(const LightFrontCoords& lf) {
  return lf.xplus * lf.xminus - lf.x1 * lf.x1 - lf.x2 * lf.x2;
}

}  // namespace scalardyn
