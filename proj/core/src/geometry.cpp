#include "scalardyn/geometry.hpp"

namespace scalardyn {

LightFrontCoords to_lightfront(const FourVector& x) {
  return {x.t() + x.z(), x.t() - x.z(), x.x(), x.y()};
}

FourVector from_lightfront(const LightFrontCoords& lf) {
  return {0.5 * (lf.xplus + lf.xminus), lf.x1, lf.x2, 0.5 * (lf.xplus - lf.xminus)};
}

LightFrontCovector to_lightfront_covector(const FourVector& lower) {
  return {0.5 * (lower[0] + lower[3]), 0.5 * (lower[0] - lower[3]), lower[1], lower[2]};
}

FourVector from_lightfront_covector(const LightFrontCovector& lf) {
  return {lf.plus + lf.minus, lf.p1, lf.p2, lf.plus - lf.minus};
}

}  // namespace scalardyn
