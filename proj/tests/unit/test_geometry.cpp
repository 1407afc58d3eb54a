#include <cfloat>
#include <random>

#include "doctest.h"
#include "scalardyn/geometry.hpp"
#include "support.hpp"

using namespace scalardyn;

TEST_CASE("minkowski_dot") {
  CHECK(minkowski_dot({1, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
  CHECK(minkowski_dot({1, 0, 0, 1}, {1, 0, 0, 1}) == 0.0);
  // 2*1 - 1*1 - 0 - 0
  CHECK(minkowski_dot({2, 1, 1, 1}, {1, 1, 0, 0}) == 1.0);
}

TEST_CASE("light-front map") {
  CHECK(to_lightfront({1, 0, 0, 1}) == LightFrontCoords{2, 0, 0, 0});
  CHECK(to_lightfront({1, 0, 0, 0}) == LightFrontCoords{1, 1, 0, 0});

  const FourVector x{0.3, -1.2, 0.7, 2.5};
  const FourVector back = from_lightfront(to_lightfront(x));
  // t and z come back from x+ +- x-, so the round-off is set by the largest component
  for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - x[i]) <= 2 * DBL_EPSILON * 2.5);

  const auto lf = to_lightfront(x);
  CHECK(lf.xplus == doctest::Approx(0.3 + 2.5));
  CHECK(lf.xminus == doctest::Approx(0.3 - 2.5));
  CHECK(lf.x1 == x[1]);
  CHECK(lf.x2 == x[2]);
}

TEST_CASE("round trip and invariant on random vectors") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 1000; ++n) {
    const FourVector x = testsupport::random_vector(rng, 10.0);
    const FourVector back = from_lightfront(to_lightfront(x));
    for (int i = 0; i < 4; ++i) REQUIRE(std::abs(back[i] - x[i]) <= 4 * DBL_EPSILON * 10.0);

    const double dot = minkowski_dot(x, x);
    const double lf = lightfront_square(to_lightfront(x));
    double scale = 0;
    for (double c : x.v) scale += c * c;
    REQUIRE(std::abs(dot - lf) <= 1e-12 * scale);
  }
}

TEST_CASE("covariant light-front components") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const FourVector p = testsupport::random_vector(rng);
    const FourVector x = testsupport::random_vector(rng);
    const auto pl = to_lightfront_covector(p);
    const auto xl = to_lightfront(x);
    CHECK(pl.plus == doctest::Approx((p[0] + p[3]) / 2));
    CHECK(pl.minus == doctest::Approx((p[0] - p[3]) / 2));
    // p_mu x^mu
    CHECK(contract(p, x) ==
          doctest::Approx(pl.plus * xl.xplus + pl.minus * xl.xminus + pl.p1 * xl.x1 + pl.p2 * xl.x2));
    // p^mu p_mu = 4 p+ p- - p_perp^2
    CHECK(minkowski_dot(p, p) == doctest::Approx(4 * pl.plus * pl.minus - pl.p1 * pl.p1 - pl.p2 * pl.p2));
    const FourVector back = from_lightfront_covector(pl);
    for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(p[i]));
  }
}
