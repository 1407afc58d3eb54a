#include <limits>

#include "doctest.h"
#include "json.hpp"
#include "scalardyn/errors.hpp"
#include "scalardyn/integrability.hpp"
#include "scalardyn/quantities.hpp"

using namespace scalardyn;

namespace {

std::vector<PhaseSpaceState> spacelike_states(std::size_t n, unsigned seed) {
  auto st = random_states(Form::instant, n, seed);
  for (auto& s : st) s.q[2] = std::abs(s.q[2]);  // keep m^2 = 1 + B z > 0
  return st;
}

ConservedQuantity scaled(const ConservedQuantity& q, std::string label, double (*map)(double, double), double c) {
  ConservedQuantity r;
  r.label = std::move(label);
  r.value = [q, map, c](const PhaseSpaceState& s) { return map(q(s), c); };
  return r;
}

}  // namespace

TEST_CASE("spacelike set has rank 5 and is maximally superintegrable") {
  const double B = 1.0;
  const auto bg = make_linear_z(1.0, B, false);
  const auto Q = spacelike_quantities(bg);
  const auto states = spacelike_states(24, 1);
  const auto rep = independence_rank(Q, states);
  CHECK(rep.rank == 5);
  CHECK(rep.points.size() == 24);
  CHECK_FALSE(rep.exceeds_level_set_bound);
  for (const auto& sv : rep.singular_values) {
    REQUIRE(sv.size() == 5);
    for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] <= sv[i - 1]);
  }

  const auto tab = involution_table(Q, states);
  for (std::size_t i = 0; i < 5; ++i) CHECK(tab.max_bracket[i][i] == 0.0);
  CHECK(tab.involutive_set({0, 1, 4}));
  // {Q3, Q4} vanishes identically (symbolic oracle in the dynamics tests)
  CHECK(tab.max_bracket[2][3] <= 1e-9);
  CHECK_FALSE(tab.involutive[0][2]);
  CHECK(tab.max_bracket[0][2] == doctest::Approx(B));

  const auto c = classify(3, rep, tab);
  CHECK(c.label == Classification::maximally_superintegrable);
  CHECK(c.k == 2);
  CHECK(to_string(c.label) == "maximally superintegrable");
}

TEST_CASE("rank is invariant under recombination") {
  const double B = 0.7;
  const auto bg = make_linear_z(1.0, B, false);
  const auto Q = spacelike_quantities(bg);
  auto div = [](double v, double c) { return v / c; };
  auto sq = [](double v, double c) { return v * v / c; };
  auto id = [](double v, double) { return v; };
  const std::vector<ConservedQuantity> F{scaled(Q[2], "Q3/B", div, B), scaled(Q[3], "Q4/B", div, B),
                                         scaled(Q[4], "Q5^2/B", sq, B), scaled(Q[0], "Q1", id, 0),
                                         scaled(Q[1], "Q2", id, 0)};
  const auto states = spacelike_states(20, 2);
  const auto a = independence_rank(Q, states), b = independence_rank(F, states);
  CHECK(a.rank == b.rank);
  REQUIRE(a.point_ranks.size() == b.point_ranks.size());
  for (std::size_t i = 0; i < a.point_ranks.size(); ++i) CHECK(a.point_ranks[i] == b.point_ranks[i]);
}

TEST_CASE("exact dependence is detected") {
  const auto bg = make_constant(1.0);
  const std::vector<ConservedQuantity> dup{instant_momentum(1), instant_momentum(1),
                                           hamiltonian_quantity(Form::instant, bg)};
  CHECK(independence_rank(dup, random_states(Form::instant, 20, 3)).rank == 2);
}

TEST_CASE("plane-wave extended set has rank 7 and the four in involution") {
  const auto bg = make_plane_wave(Profile::sin2(1.0, 0.5));
  const auto Q = planewave_quantities_set(bg);
  const auto states = random_states(Form::extended_front, 20, 4);
  const auto rep = independence_rank(Q, states);
  CHECK(rep.rank == 7);
  CHECK_FALSE(rep.exceeds_level_set_bound);
  const auto tab = involution_table(Q, states);
  CHECK(tab.involutive_set({0, 1, 2, 5}));
  const auto c = classify(4, rep, tab);
  CHECK(c.label == Classification::maximally_superintegrable);
}

TEST_CASE("conformal set is at least minimally superintegrable") {
  const auto bg = make_special_conformal(Profile::gaussian(1.0, 1.0));
  const auto Q = conformal_quantities(bg);
  // xi_c.p is conserved on the mass shell only, so p+ is set to H
  auto states = random_states(Form::extended_front, 20, 5);
  for (auto& s : states) s.p[0] = hamiltonian_front(s, bg);
  const auto rep = independence_rank(Q, states);
  CHECK(rep.rank == 5);
  const auto tab = involution_table(Q, states);
  CHECK(tab.involutive_set({0, 1, 2, 4}));
  const auto c = classify(4, rep, tab);
  CHECK(c.label == Classification::minimally_superintegrable);
  CHECK(c.k == 1);
}

TEST_CASE("free particle with three momenta is integrable") {
  const auto bg = make_constant(1.0);
  const std::vector<ConservedQuantity> Q{instant_momentum(1), instant_momentum(2), instant_momentum(3)};
  const auto states = random_states(Form::instant, 20, 6);
  const auto c = classify(3, independence_rank(Q, states), involution_table(Q, states));
  CHECK(c.label == Classification::integrable);

  const std::vector<ConservedQuantity> two{instant_momentum(1), instant_momentum(2)};
  const auto d = classify(3, independence_rank(two, states), involution_table(two, states));
  CHECK(d.label == Classification::not_certified);
}

TEST_CASE("degenerate samples") {
  ConservedQuantity bad{"nan", [](const PhaseSpaceState&) { return std::numeric_limits<double>::quiet_NaN(); }, {}, {}};
  CHECK_THROWS_AS(independence_rank({bad}, random_states(Form::instant, 5, 7)), Error);
}

TEST_CASE("report json") {
  const auto bg = make_linear_z(1.0, 1.0, false);
  const auto Q = spacelike_quantities(bg);
  const auto states = spacelike_states(20, 8);
  const auto rep = independence_rank(Q, states);
  const auto tab = involution_table(Q, states);
  const auto j = nlohmann::json::parse(report_to_json(rep, tab, classify(3, rep, tab)));
  CHECK(j.dump().find("maximally superintegrable") != std::string::npos);
  CHECK(j.dump().find("singular_values") != std::string::npos);
}
