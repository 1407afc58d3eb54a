#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "scalardyn/analytic.hpp"
#include "scalardyn/dynamics.hpp"
#include "scalardyn/errors.hpp"
#include "scalardyn/quantities.hpp"
#include "scalardyn/trajectory_io.hpp"
#include "support.hpp"

using namespace scalardyn;
using testsupport::uniform;

namespace {

ConservedQuantity coordinate(const char* label, int i) {
  return {label, [i](const PhaseSpaceState& s) { return s.q[i]; }, {}, {}};
}
ConservedQuantity momentum(const char* label, int i) {
  return {label, [i](const PhaseSpaceState& s) { return s.p[i]; }, {}, {}};
}

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) g.push_back(a + (b - a) * i / n);
  return g;
}

}  // namespace

TEST_CASE("instant hamiltonian") {
  const auto c = make_constant(2.25);
  CHECK(hamiltonian_instant(PhaseSpaceState::instant(0, {0.3, 0.1, 0}, {0, 0, 0}), c) == doctest::Approx(1.5));
  const auto lin = make_linear_z(1.0, 1.0, true);
  CHECK(hamiltonian_instant(PhaseSpaceState::instant(0, {0, 0, 0}, {0, 0, 0.4}), lin) ==
        doctest::Approx(std::sqrt(1.0 + 0.16)));
}

TEST_CASE("instant energy equals m u^0 of the covariant lift") {
  const auto bg = make_linear_z(1.0, 0.6, false);
  std::mt19937_64 rng(1);
  for (int n = 0; n < 50; ++n) {
    const FourVector x{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0, 1)};
    const double v1 = uniform(rng, -0.5, 0.5), v2 = uniform(rng, -0.5, 0.5), v3 = uniform(rng, -0.5, 0.5);
    const double g = 1.0 / std::sqrt(1 - v1 * v1 - v2 * v2 - v3 * v3);
    const FourVector u{g, g * v1, g * v2, g * v3};
    const double m = std::sqrt(bg.m2(x));
    const auto cov = PhaseSpaceState::covariant(0, x, u);
    const auto inst = to_instant(cov, bg);
    CHECK(hamiltonian_instant(inst, bg) == doctest::Approx(m * u[0]).epsilon(1e-12));
    // lower-index instant momenta: p_j = -m u^j
    CHECK(inst.p[0] == doctest::Approx(-m * u[1]));
  }
}

TEST_CASE("front hamiltonian") {
  const auto c = make_constant(1.0);
  CHECK(hamiltonian_front(PhaseSpaceState::front(0, 0, {0, 0}, 0.5, {0, 0}), c) == doctest::Approx(0.5));
  CHECK_THROWS_AS(hamiltonian_front(PhaseSpaceState::front(0, 0, {0, 0}, 0.0, {0, 0}), c), OnShellError);

  const auto wave = make_plane_wave(Profile::sin2(1.0, 1.0));
  const auto s = PhaseSpaceState::front(0.7, 0.1, {0, 0}, 0.4, {0.2, -0.1});
  CHECK(hamiltonian_front(s, wave) ==
        doctest::Approx((0.04 + 0.01 + 1.0 + std::pow(std::sin(0.7), 2)) / 1.6));

  // p+ = (p0 + p3)/2 and p- = (p0 - p3)/2 on random instant states
  const auto bg = make_linear_z(1.0, 0.5, false);
  std::mt19937_64 rng(2);
  for (int n = 0; n < 50; ++n) {
    const auto si = PhaseSpaceState::instant(uniform(rng, 0, 1), {uniform(rng, -1, 1), uniform(rng, -1, 1),
                                                                  uniform(rng, 0, 1)},
                                             {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    const FourVector p = four_momentum(si, bg);
    const auto lf = to_lightfront(si.position());
    const double pm = (p[0] - p[3]) / 2;
    const auto sf = PhaseSpaceState::front(lf.xplus, lf.xminus, {lf.x1, lf.x2}, pm, {p[1], p[2]});
    CHECK(hamiltonian_front(sf, bg) == doctest::Approx((p[0] + p[3]) / 2).epsilon(1e-12));
  }
}

TEST_CASE("non-relativistic hamiltonian") {
  const auto c = make_constant(4.0);
  CHECK(hamiltonian_nonrel(PhaseSpaceState::instant(0, {0, 0, 0}, {0, 0, 0}), c) == 2.0);
  // |p|/m = 0.1: H_nr - H lies in [0, m eps^4 / 8]
  const auto s = PhaseSpaceState::instant(0, {0, 0, 0}, {0.12, 0.0, -0.16});
  const double eps = 0.1, diff = hamiltonian_nonrel(s, c) - hamiltonian_instant(s, c);
  CHECK(diff >= 0.0);
  CHECK(diff <= 2.0 * std::pow(eps, 4) / 8 * (1 + 1e-9));
  CHECK(diff >= 2.0 * (std::pow(eps, 4) / 8 - std::pow(eps, 6) / 16) * (1 - 1e-9));
}

TEST_CASE("poisson brackets") {
  const auto bg = make_linear_z(1.0, 0.8, false);
  const auto s = PhaseSpaceState::instant(0, {0.2, -0.3, 0.4}, {0.5, 0.3, -0.2});
  CHECK(poisson_bracket(coordinate("x", 0), momentum("p1", 0), s) == doctest::Approx(1.0));
  CHECK(poisson_bracket(coordinate("x", 0), momentum("p2", 1), s) == doctest::Approx(0.0));

  const auto Q = spacelike_quantities(bg);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 20; ++n) {
    const auto r = PhaseSpaceState::instant(0, {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, 0, 1)},
                                            {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)});
    // Symbolic: dQ3/dq = (B,0,0), dQ3/dp = (2p3,0,2p1); dQ4/dq = (0,B,0), dQ4/dp = (0,2p3,2p2).
    // {Q3,Q4} = B*0 + 0*2p3 + 0 - (2p3*0 + 0*B + 2p1*0) = 0
    CHECK(poisson_bracket(Q[2], Q[3], r) == doctest::Approx(0.0).scale(1.0));
    // {p1, Q3} = -dQ3/dx = -B
    CHECK(poisson_bracket(Q[0], Q[2], r) == doctest::Approx(-0.8));
    for (const auto& q : Q) CHECK(poisson_bracket(q, Q[4], r) == doctest::Approx(0.0).scale(1.0));
  }

  const auto wave = make_plane_wave(Profile::sin2(1.0, 0.5));
  const auto W = planewave_quantities_set(wave);
  for (const auto& st : std::vector<PhaseSpaceState>{
           PhaseSpaceState::extended(0, 0.7, 0.2, {0.1, -0.4}, 0.9, 0.6, {0.3, 0.2}),
           PhaseSpaceState::extended(0, 1.3, -0.5, {0.5, 0.1}, 0.2, 0.3, {-0.6, 0.7})}) {
    for (int i : {0, 1, 2, 5})
      for (int j : {0, 1, 2, 5}) CHECK(std::abs(poisson_bracket(W[i], W[j], st)) <= 1e-9);
  }
}

TEST_CASE("numerical gradients match analytic ones") {
  const auto bg = make_linear_z(1.0, 0.8, false);
  const auto Q = spacelike_quantities(bg);
  const auto s = PhaseSpaceState::instant(0, {0.2, -0.3, 0.4}, {0.5, 0.3, -0.2});
  for (const auto& q : Q) {
    ConservedQuantity black_box{q.label, q.value, {}, {}};
    const auto a = phase_space_gradient(q, s), b = phase_space_gradient(black_box, s);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("df/dt along the flow equals -{f,H}") {
  const auto bg = make_linear_z(1.0, 1.0, false);
  const auto H = hamiltonian_quantity(Form::instant, bg);
  ConservedQuantity f{"f", [](const PhaseSpaceState& s) { return s.q[0] * s.q[2] + s.q[1] + s.p[2] * s.p[2]; }, {}, {}};
  const auto s0 = PhaseSpaceState::instant(0, {0.1, 0.2, 0.5}, {0.3, -0.2, -0.4});
  const double t = 0.6;
  double errs[2];
  int k = 0;
  for (double d : {2e-2, 1e-2}) {
    EvolveOptions o;
    o.tol_abs = o.tol_rel = 1e-13;
    o.output_times = {t - d, t, t + d};
    const auto tr = evolve(s0, bg, t + d, o);
    REQUIRE(tr.size() == 4);
    const double fd = (f(tr.samples[3].state) - f(tr.samples[1].state)) / (2 * d);
    errs[k++] = std::abs(fd + poisson_bracket(f, H, tr.samples[2].state));
  }
  CHECK(testsupport::second_order(errs[0], errs[1]));
}

TEST_CASE("extended form advances x+ at unit rate") {
  const auto wave = make_plane_wave(Profile::sin2(1.0, 0.5));
  const auto s = PhaseSpaceState::extended(0, 0.4, 0.1, {0.2, 0.3}, 0.7, 0.5, {0.1, 0.2});
  CHECK(flow_derivative(s, wave)[0] == 1.0);
}

TEST_CASE("free motion conserves every Poincare quantity") {
  const auto bg = make_constant(1.0);
  const auto Q = poincare_quantities(bg);
  REQUIRE(Q.size() == 10);
  for (const auto& s0 : {PhaseSpaceState::instant(0, {0.1, -0.2, 0.3}, {0.4, -0.3, 0.5}),
                         PhaseSpaceState::front(0.5, 0.2, {0.1, -0.1}, 0.7, {0.3, 0.1}),
                         PhaseSpaceState::extended(0, 0.5, 0.2, {0.1, -0.1}, (0.1 + 1.0) / 2.8, 0.7, {0.3, 0.1})}) {
    CAPTURE(to_string(s0.form));
    EvolveOptions o;
    o.monitored = Q;
    const auto tr = evolve(s0, bg, s0.time + 5.0, o);
    const auto rep = tr.drift(1e-10);
    for (const auto& e : rep.entries) CHECK_MESSAGE(e.within, e.label << " drift " << e.max_drift);
    // straight line: constant momenta
    for (int i = 0; i < s0.dof(); ++i) CHECK(tr.back().state.p[i] == doctest::Approx(s0.p[i]));
  }
}

TEST_CASE("autonomous backgrounds conserve their hamiltonian") {
  const auto lin = make_linear_z(1.0, 1.0, false);
  EvolveOptions o;
  o.monitored = {hamiltonian_quantity(Form::instant, lin)};
  const auto tr = evolve(PhaseSpaceState::instant(0, {0, 0, 0.2}, {0.3, 0.1, -0.4}), lin, 3.0, o);
  CHECK(tr.drift(1e-9).all_within());

  const auto wm = make_plane_wave(Profile::sin2(1.0, 0.8), LightFrontVariable::minus);
  EvolveOptions of;
  of.monitored = {hamiltonian_quantity(Form::front, wm)};
  const auto tf = evolve(PhaseSpaceState::front(0.2, 0.0, {0.1, 0.2}, 0.6, {0.2, -0.3}), wm, 4.0, of);
  CHECK(tf.drift(1e-9).all_within());
}

TEST_CASE("on-shell closure along instant orbits") {
  const auto bg = make_linear_z(1.0, 1.0, true);
  const auto tr = evolve(PhaseSpaceState::instant(0, {0, 0, 0}, {0.1, 0, -0.5}), bg, 3.0);
  for (const auto& smp : tr.samples) {
    const FourVector p = four_momentum(smp.state, bg);
    REQUIRE(std::abs(minkowski_dot(p, p) - bg.m2(smp.state.position())) <= 1e-8);
  }
}

TEST_CASE("samples are strictly increasing and output times are hit") {
  const auto bg = make_linear_z(1.0, 1.0, true);
  EvolveOptions o;
  o.output_times = grid(0.0, 3.0, 30);
  o.monitored = spacelike_quantities(bg);
  const auto tr = evolve(PhaseSpaceState::instant(0, {0, 0, 0}, {0, 0, -0.5}), bg, 3.0, o);
  REQUIRE(tr.size() == 31);
  for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.samples[i].time > tr.samples[i - 1].time);
  CHECK(tr.samples[10].time == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tr.stats.event_crossings >= 1);

  const auto a = tr.drift(1e-8), b = monitor(tr, o.monitored, 1e-8);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) CHECK(a.entries[i].max_drift == b.entries[i].max_drift);
}

TEST_CASE("momentum p3 is not conserved on the linear background") {
  const auto bg = make_linear_z(1.0, 1.0, false);
  const auto s0 = PhaseSpaceState::instant(0, {0, 0, 0.3}, {0.2, 0.0, -0.5});
  EvolveOptions o;
  o.output_times = grid(0.0, 2.0, 20);
  o.monitored = {instant_momentum(3), spacelike_quantities(bg)[4]};
  const auto tr = evolve(s0, bg, 2.0, o);
  const auto rep = tr.drift(1e-8);
  CHECK_FALSE(rep.at("p3").within);
  CHECK(rep.at("Q5").within);
  const double Q5 = hamiltonian_instant(s0, bg);
  const auto& p3 = tr.series("p3");
  for (std::size_t i = 0; i < tr.size(); ++i)
    CHECK(std::abs(p3[i] - p3[0] - tr.samples[i].time / (2 * Q5)) <= 1e-8);
}

TEST_CASE("switched spacelike orbit from the origin follows the closed form") {
  const auto bg = make_linear_z(1.0, 1.0, true);
  const auto s0 = PhaseSpaceState::instant(0, {0, 0, 0}, {0, 0, -0.5});
  const auto orbit = spacelike_orbit(bg, s0);
  EvolveOptions o;
  o.output_times = grid(0.0, 3.0, 60);
  const auto tr = evolve(s0, bg, 3.0, o);
  double zmax = 0;
  for (const auto& smp : tr.samples) {
    const auto ref = orbit(smp.time);
    for (int i = 0; i < 3; ++i) {
      REQUIRE(testsupport::rel_err(smp.state.q[i], ref.q[i]) <= 1e-8);
      REQUIRE(testsupport::rel_err(smp.state.p[i], ref.p[i]) <= 1e-8);
    }
    zmax = std::max(zmax, smp.state.q[2]);
  }
  CHECK(zmax > 0.1);
  CHECK(tr.back().state.q[2] < 0.0);
}

TEST_CASE("fixed-step RK4 converges at fourth order") {
  const auto bg = make_linear_z(1.0, 1.0, false);
  const auto s0 = PhaseSpaceState::instant(0, {0.1, 0.0, 0.3}, {0.2, -0.1, -0.5});
  const auto ref = spacelike_orbit(bg, s0)(1.0);
  double e[2];
  int k = 0;
  for (double h : {0.1, 0.05}) {
    EvolveOptions o;
    o.method = Integrator::rk4;
    o.rk4_step = h;
    const auto tr = evolve(s0, bg, 1.0, o);
    e[k++] = std::abs(tr.back().state.q[2] - ref.q[2]);
  }
  CHECK(e[0] / e[1] == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("covariant evolution") {
  const auto c = make_constant(1.0);
  const auto cs = PhaseSpaceState::covariant(0, {0, 0, 0, 0}, {std::sqrt(1.25), 0.5, 0, 0});
  const auto d = flow_derivative(cs, c);
  for (int i = 4; i < 8; ++i) CHECK(d[i] == 0.0);

  const auto wave = make_plane_wave(Profile::sin2(1.0, 0.6));
  const FourVector u0{std::sqrt(1 + 0.09 + 0.04 + 0.16), 0.3, -0.2, 0.4};
  EvolveOptions o;
  o.output_times = grid(0.0, 4.0, 40);
  const auto tr = evolve_covariant({0, 0.1, 0.2, 0.0}, u0, wave, 0.0, 4.0, o);
  const auto p0 = to_lightfront_covector(four_momentum(tr.front().state, wave));
  for (const auto& smp : tr.samples) {
    const auto& st = smp.state;
    const FourVector u{st.p[0], st.p[1], st.p[2], st.p[3]};
    const auto dd = flow_derivative(st, wave);
    const FourVector a{dd[4], dd[5], dd[6], dd[7]};
    CHECK(std::abs(minkowski_dot(u, a)) <= 1e-10);
    CHECK(std::abs(minkowski_dot(u, u) - 1.0) <= 1e-8);
    const auto p = to_lightfront_covector(four_momentum(st, wave));
    const double m = std::sqrt(wave.m2(st.position()));
    CHECK(p.minus == doctest::Approx(p0.minus).epsilon(1e-9));
    CHECK(p.p1 == doctest::Approx(-m * u[1]).epsilon(1e-12));
    CHECK(p.p1 == doctest::Approx(p0.p1).epsilon(1e-9));
    CHECK(p.p2 == doctest::Approx(p0.p2).epsilon(1e-9));
  }
  CHECK_THROWS_AS(evolve_covariant({0, 0, 0, 0}, {1.0, 0.5, 0, 0}, c, 0, 1), OnShellError);
}

TEST_CASE("error conditions") {
  const auto c = make_constant(1.0);
  CHECK_THROWS_AS(evolve(PhaseSpaceState::front(0.2, 0, {0, 0}, 0.0, {0, 0}), c, 1.0), OnShellError);
  const auto lin = make_linear_z(1.0, 1.0, false);
  CHECK_THROWS_AS(evolve(PhaseSpaceState::instant(0, {0, 0, -0.9}, {0, 0, 5.0}), lin, 2.0), Error);
  const auto conf = make_special_conformal(Profile::gaussian(1.0, 1.0));
  CHECK_THROWS_AS(evolve(PhaseSpaceState::front(0.0, 0, {0, 0}, 0.5, {0, 0}), conf, 0.5), DomainError);
  // p- is driven to zero before x+ = 0 is reached
  CHECK_THROWS_AS(evolve(PhaseSpaceState::front(-0.5, 0, {0, 0}, 0.5, {0, 0}), conf, 0.5), Error);
}

TEST_CASE("stop events") {
  const auto bg = make_linear_z(1.0, 1.0, true);
  EvolveOptions o;
  o.stop = StopEvent{"z >= 0.05", [](const PhaseSpaceState& s) { return s.q[2] - 0.05; }};
  const auto tr = evolve(PhaseSpaceState::instant(0, {0, 0, 0}, {0, 0, -0.5}), bg, 5.0, o);
  CHECK(tr.stop_reason == "z >= 0.05");
  CHECK(tr.back().state.q[2] == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("non-relativistic flow conserves B L_z") {
  const auto bg = make_linear_z(1.0, 0.02, false);
  EvolveOptions o;
  o.nonrelativistic = true;
  o.monitored = {spacelike_qtilde3(0.02), nonrel_hamiltonian_quantity(bg), angular_momentum(3)};
  const auto tr = evolve(PhaseSpaceState::instant(0, {0.3, -0.2, 0.1}, {0.03, 0.02, -0.01}), bg, 4.0, o);
  for (const auto& smp : tr.samples) {
    const auto& p = smp.state.p;
    REQUIRE(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) <= 0.05);
  }
  CHECK(tr.nonrelativistic);
  CHECK(tr.drift(1e-8).all_within());
}

TEST_CASE("trajectory export") {
  const auto bg = make_linear_z(1.0, 1.0, true);
  EvolveOptions o;
  o.output_times = grid(0.0, 1.0, 4);
  o.monitored = spacelike_quantities(bg);
  const auto tr = evolve(PhaseSpaceState::instant(0, {0, 0, 0}, {0, 0, -0.5}), bg, 1.0, o);

  const auto header = csv_header(tr);
  REQUIRE(header.size() == 1 + 6 + 5);
  CHECK(header[0] == "time");
  CHECK(header[7] == "Q1");
  std::ostringstream csv;
  write_csv(tr, csv);
  std::istringstream lines(csv.str());
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 1 + 5);

  const auto j = nlohmann::json::parse(trajectory_to_json(tr));
  CHECK(j["form"] == "instant");
  REQUIRE(j["samples"].size() == 5);
  CHECK(j["samples"][4]["t"].get<double>() == doctest::Approx(1.0));
  CHECK(j["samples"][0]["q"].size() == 3);
  CHECK(j["samples"][2]["Q"]["Q5"].get<double>() == doctest::Approx(std::sqrt(1.25)));
  CHECK(j["drift"].contains("Q3"));
}
