#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "scalardyn/backgrounds.hpp"
#include "scalardyn/errors.hpp"
#include "support.hpp"

using namespace scalardyn;
using testsupport::uniform;

namespace {

FourVector fd_grad(const ScalarBackground& bg, const FourVector& x, double h) {
  FourVector g;
  for (int mu = 0; mu < 4; ++mu) {
    FourVector xp = x, xm = x;
    xp[mu] += h;
    xm[mu] -= h;
    g[mu] = (bg.m2(xp) - bg.m2(xm)) / (2 * h);
  }
  return g;
}

double grad_error(const ScalarBackground& bg, const FourVector& x, double h) {
  const FourVector a = bg.grad_m2(x), n = fd_grad(bg, x, h);
  double e = 0;
  for (int mu = 0; mu < 4; ++mu) e = std::max(e, std::abs(a[mu] - n[mu]));
  return e;
}

struct Family {
  const char* name;
  ScalarBackground bg;
  FourVector (*draw)(std::mt19937_64&);
};

FourVector generic_point(std::mt19937_64& rng) { return testsupport::random_vector(rng); }

FourVector forward_point(std::mt19937_64& rng) {
  FourVector x = testsupport::random_vector(rng, 0.5);
  x[0] = uniform(rng, 0.8, 2.0) - x[3];
  return x;
}

FourVector timelike_point(std::mt19937_64& rng) {
  return {uniform(rng, 2.0, 3.0), uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5), uniform(rng, -0.5, 0.5)};
}

}  // namespace

TEST_CASE("linear z") {
  const auto sw = make_linear_z(1.0, 1.0, true);
  CHECK(sw.m2({0, 0, 0, -1}) == 1.0);
  CHECK(sw.m2({0, 0, 0, 2}) == 3.0);
  const FourVector g = sw.grad_m2({0.2, 0.1, 0.3, 1});
  const FourVector fd = fd_grad(sw, {0.2, 0.1, 0.3, 1}, 1e-4);
  for (int mu = 0; mu < 4; ++mu) CHECK(g[mu] == doctest::Approx(fd[mu]).epsilon(1e-8));
  CHECK(g == FourVector{0, 0, 0, 1.0});
  CHECK(sw.grad_m2({0, 0, 0, -1}) == FourVector{});
  CHECK(sw.switched());
  CHECK(sw.region_of({0, 0, 0, -1}) == 0);
  CHECK(sw.region_of({0, 0, 0, 1}) == 1);

  const auto full = make_linear_z(1.0, 1.0, false);
  CHECK_THROWS_AS(full.m2({0, 0, 0, -2}), RealityError);
}

TEST_CASE("timelike") {
  std::mt19937_64 rng(1);
  const auto zero = make_timelike(1.0, Profile::constant(0.0));
  CHECK(zero.m2({1.3, 0.2, 0.1, 0.4}) == 1.0);
  const auto lin = make_timelike(1.0, Profile::linear(0.0, 1.0));
  CHECK(lin.m2({2, 0.3, 0.3, 0.3}) == doctest::Approx(3.0));
  CHECK(lin.m2({-2, 0.3, 0.3, 0.3}) == 1.0);
  for (int n = 0; n < 20; ++n) {
    FourVector x = testsupport::random_vector(rng);
    x[0] = uniform(rng, 0.1, 2.0);
    const FourVector fd = fd_grad(lin, x, 1e-4);
    CHECK(fd[1] == doctest::Approx(0.0));
    CHECK(fd[2] == doctest::Approx(0.0));
    CHECK(fd[3] == doctest::Approx(0.0));
    CHECK(lin.grad_m2(x)[0] == doctest::Approx(fd[0]).epsilon(1e-8));
  }
  CHECK_THROWS_AS(make_timelike(1.0, Profile::linear(0.0, -1.0)).m2({3, 0, 0, 0}), RealityError);
}

TEST_CASE("plane wave") {
  const auto bg = make_plane_wave(Profile::sin2(1.0, 1.0));
  const double xp = std::numbers::pi / 2;
  CHECK(bg.m2({xp / 2, 0.7, -0.2, xp / 2}) == doctest::Approx(2.0));
  std::mt19937_64 rng(2);
  for (int n = 0; n < 50; ++n) {
    const FourVector g = bg.grad_m2(testsupport::random_vector(rng, 3.0));
    CHECK(g[1] == 0.0);
    CHECK(g[2] == 0.0);
    // m^2(x+): d_t m^2 = d_z m^2
    CHECK(g[0] == doctest::Approx(g[3]));
  }
  const auto minus = make_plane_wave(Profile::sin2(1.0, 1.0), LightFrontVariable::minus);
  CHECK(minus.m2({xp / 2, 0, 0, -xp / 2}) == doctest::Approx(2.0));
  const auto flat = make_plane_wave(Profile::constant(1.0));
  CHECK(flat.grad_m2({0.3, 0.1, 0.2, 0.4}) == FourVector{});
}

TEST_CASE("special conformal") {
  const double m0 = 1.0, L = 1.0, k = 1.0;
  const auto f = gaussian_conformal_profile(m0, L, k);
  const auto sw = make_special_conformal(f, SwitchOn{L, m0 * m0});
  CHECK(sw.m2({0.3, 0.1, 0.1, 0.2}) == 1.0);  // x+ = 0.5 < L
  // x_perp = 0, x- = 0, x+ = 2L
  CHECK(sw.m2({L, 0, 0, L}) == doctest::Approx(0.25));

  const auto pure = make_special_conformal(f);
  CHECK_THROWS_AS(pure.m2({0.5, 0.1, 0, -0.5}), DomainError);
  const FourVector x{1.1, 0.3, -0.2, 0.4};
  const auto lf = to_lightfront(x);
  const double u = lf.xminus - (lf.x1 * lf.x1 + lf.x2 * lf.x2) / lf.xplus;
  CHECK(pure.m2(x) == doctest::Approx(m0 * m0 * L * L * std::exp(-k * k * u * u) / (lf.xplus * lf.xplus)));
}

TEST_CASE("dilation") {
  const auto bg = make_dilation(1.0);
  CHECK(bg.m2({1, 0, 0, 0}) == 1.0);
  CHECK(make_dilation(2.0).m2({2, 0, 0, 1}) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(bg.m2({1, 0, 0, 1}), DomainError);
  CHECK_THROWS_AS(bg.m2({0.5, 0, 0, 1}), RealityError);
}

TEST_CASE("gradient consistency is second order for every family") {
  std::vector<Family> fams{
      {"constant", make_constant(1.0), generic_point},
      {"linear_z", make_linear_z(1.0, 0.8, false), forward_point},
      {"timelike", make_timelike(1.0, Profile::sin2(0.5, 1.0), false), generic_point},
      {"plane_wave", make_plane_wave(Profile::sin2(1.0, 0.7)), generic_point},
      {"plane_wave_minus", make_plane_wave(Profile::gaussian(1.0, 1.0), LightFrontVariable::minus), generic_point},
      {"special_conformal", make_special_conformal(gaussian_conformal_profile(1.0, 1.0, 1.0)), forward_point},
      {"dilation", make_dilation(1.5), timelike_point},
  };
  std::mt19937_64 rng(3);
  for (const auto& fam : fams) {
    CAPTURE(fam.name);
    int ok = 0;
    for (int n = 0; n < 100; ++n) {
      const FourVector x = fam.draw(rng);
      const double e1 = grad_error(fam.bg, x, 2e-3), e2 = grad_error(fam.bg, x, 1e-3);
      if (testsupport::second_order(e1, e2, 1e-10)) ++ok;
    }
    CHECK(ok >= 95);
  }
}

TEST_CASE("custom background with finite-difference gradient") {
  auto m2 = [](const FourVector& x) { return 2.0 + std::sin(x[0]) * std::cos(x[3]) + 0.1 * x[1] * x[1]; };
  auto grad = [](const FourVector& x) {
    return FourVector{std::cos(x[0]) * std::cos(x[3]), 0.2 * x[1], 0.0, -std::sin(x[0]) * std::sin(x[3])};
  };
  const auto fd = make_custom("fd", m2);
  std::mt19937_64 rng(4);
  for (int n = 0; n < 50; ++n) {
    const FourVector x = testsupport::random_vector(rng);
    const FourVector a = grad(x), b = fd.grad_m2(x);
    for (int mu = 0; mu < 4; ++mu) CHECK(b[mu] == doctest::Approx(a[mu]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("profiles") {
  const auto g = Profile::gaussian(2.0, 1.5);
  CHECK(g.antiderivative(10.0) == doctest::Approx(2.0 * std::sqrt(std::numbers::pi) / (2 * 1.5)).epsilon(1e-12));
  CHECK(g.derivative(0.3) == doctest::Approx(-2 * 1.5 * 1.5 * 0.3 * g(0.3)));

  std::vector<double> xs, ys;
  for (int i = 0; i <= 40; ++i) {
    xs.push_back(-2 + 0.1 * i);
    ys.push_back(std::sin(xs.back()));
  }
  const auto t = Profile::tabulated(xs, ys);
  CHECK(t(0.33) == doctest::Approx(std::sin(0.33)).epsilon(1e-4));
  CHECK(t.antiderivative(1.0) == doctest::Approx(1 - std::cos(1.0)).epsilon(1e-4));

  const auto s = Profile::sin2(1.0, 0.5);
  CHECK(s.antiderivative(2.0) == doctest::Approx(2.0 + 0.5 * (1.0 - std::sin(4.0) / 4.0)));
}
