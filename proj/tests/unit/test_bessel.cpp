#include <numbers>

#include "doctest.h"
#include "scalardyn/bessel.hpp"
#include "scalardyn/errors.hpp"

using namespace scalardyn;
using namespace scalardyn::bessel;

namespace {

constexpr double pi = std::numbers::pi;

// z^2 y'' + z y' - (z^2 + a^2) y, central differences
template <class F>
cplx modified_ode(F y, cplx a, double z, double h) {
  const cplx d1 = (y(z + h) - y(z - h)) / (2 * h);
  const cplx d2 = (y(z + h) - 2.0 * y(z) + y(z - h)) / (h * h);
  return z * z * d2 + z * d1 - (z * z + a * a) * y(z);
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("gamma") {
  CHECK(close(bessel::gamma(5.0), 24.0, 1e-13));
  CHECK(close(bessel::gamma(0.5), std::sqrt(pi), 1e-13));
  CHECK(std::norm(gamma(cplx(1, 1))) == doctest::Approx(pi / std::sinh(pi)).epsilon(1e-12));
  for (cplx z : {cplx(0.3, 0.4), cplx(-0.7, 1.2), cplx(2.5, -0.5)})
    CHECK(close(gamma(z) * gamma(1.0 - z), pi / std::sin(pi * z), 1e-11));
}

TEST_CASE("half-integer and tabulated values") {
  for (double z : {0.1, 1.0, 3.7, 20.0}) {
    CHECK(close(bessel_i(0.5, z), std::sqrt(2 / (pi * z)) * std::sinh(z), 1e-12));
    CHECK(close(bessel_k(0.5, z), std::sqrt(pi / (2 * z)) * std::exp(-z), 1e-12));
  }
  CHECK(bessel_i(0.0, 1.0).real() == doctest::Approx(1.2660658777520082).epsilon(1e-13));
  CHECK(bessel_k(0.0, 1.0).real() == doctest::Approx(0.42102443824070834).epsilon(1e-12));
  CHECK(bessel_i(1.0, 2.0).real() == doctest::Approx(1.5906368546373291).epsilon(1e-13));
  CHECK(bessel_k(1.0, 2.0).real() == doctest::Approx(0.13986588181652243).epsilon(1e-12));
}

TEST_CASE("Wronskian I_a K_{a+1} + I_{a+1} K_a = 1/z") {
  for (cplx a : {cplx(0.0), cplx(0.3), cplx(1.7), cplx(0.0, 0.8), cplx(0.4, 1.3)})
    for (double z : {0.05, 0.5, 2.0, 8.0, 30.0}) {
      CAPTURE(a);
      CAPTURE(z);
      const cplx w = bessel_i(a, z) * bessel_k(a + 1.0, z) + bessel_i(a + 1.0, z) * bessel_k(a, z);
      CHECK(close(w * z, 1.0, 1e-11));
    }
}

TEST_CASE("modified Bessel equation") {
  for (cplx a : {cplx(0.2), cplx(0.0, 0.6), cplx(1.1, 0.4)})
    for (double z : {0.4, 1.5, 5.0}) {
      auto I = [a](double s) { return bessel_i(a, s); };
      auto K = [a](double s) { return bessel_k(a, s); };
      auto J = [a](double s) { return bessel_j_neg_imag(a, s); };
      auto Y = [a](double s) { return bessel_y_neg_imag(a, s); };
      const double h = 1e-3;
      CHECK(std::abs(modified_ode(I, a, z, h)) <= 1e-5 * std::max(1.0, std::abs(I(z))));
      CHECK(std::abs(modified_ode(K, a, z, h)) <= 1e-5 * std::max(1.0, std::abs(K(z))));
      CHECK(std::abs(modified_ode(J, a, z, h)) <= 1e-5 * std::max(1.0, std::abs(J(z))));
      CHECK(std::abs(modified_ode(Y, a, z, h)) <= 1e-5 * std::max(1.0, std::abs(Y(z))));
    }
}

TEST_CASE("J and Y at imaginary argument have the Bessel Wronskian") {
  // W{J_a(w), Y_a(w)} = 2/(pi w) with w = -i z becomes J dY/dz - Y dJ/dz = 2/(pi z)
  for (cplx a : {cplx(0.25), cplx(0.0, 0.5), cplx(1.3)})
    for (double z : {0.3, 1.0, 4.0}) {
      const double h = 1e-5;
      const cplx J = bessel_j_neg_imag(a, z), Y = bessel_y_neg_imag(a, z);
      const cplx dJ = (bessel_j_neg_imag(a, z + h) - bessel_j_neg_imag(a, z - h)) / (2 * h);
      const cplx dY = (bessel_y_neg_imag(a, z + h) - bessel_y_neg_imag(a, z - h)) / (2 * h);
      CHECK(close((J * dY - Y * dJ) * z, 2 / pi, 1e-7));
    }
}

TEST_CASE("overflow guard") {
  CHECK_THROWS_AS(bessel_i(0.0, 800.0), OverflowError);
  CHECK_THROWS_AS(bessel_j_neg_imag(0.5, 750.0), OverflowError);
  CHECK(std::isfinite(std::abs(bessel_i(0.0, 650.0))));
}
