#include "scalardyn/phase_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "scalardyn/errors.hpp"

namespace scalardyn {

std::string_view to_string(Form f) {
  switch (f) {
    case Form::instant: return "instant";
    case Form::front: return "front";
    case Form::extended_front: return "extended";
    case Form::covariant: return "covariant";
  }
  return "unknown";
}

Form form_from_string(std::string_view s) {
  if (s == "instant") return Form::instant;
  if (s == "front") return Form::front;
  if (s == "extended" || s == "extended_front") return Form::extended_front;
  if (s == "covariant") return Form::covariant;
  throw std::invalid_argument("unknown dynamical form '" + std::string(s) + "'");
}

std::vector<double> PhaseSpaceState::canonical() const {
  const int n = dof();
  std::vector<double> y(2 * n);
  for (int i = 0; i < n; ++i) {
    y[i] = q[i];
    y[n + i] = p[i];
  }
  return y;
}

PhaseSpaceState PhaseSpaceState::with_canonical(std::span<const double> y) const {
  const auto n = static_cast<std::size_t>(dof());
  if (y.size() != 2 * n) throw std::invalid_argument("canonical vector has wrong length");
  PhaseSpaceState s = *this;
  for (std::size_t i = 0; i < n; ++i) {
    s.q[i] = y[i];
    s.p[i] = y[n + i];
  }
  return s;
}

FourVector PhaseSpaceState::position() const {
  switch (form) {
    case Form::instant: return {time, q[0], q[1], q[2]};
    case Form::front: return from_lightfront({time, q[0], q[1], q[2]});
    case Form::extended_front: return from_lightfront({q[0], q[1], q[2], q[3]});
    case Form::covariant: return {q[0], q[1], q[2], q[3]};
  }
  return {};
}

PhaseSpaceState PhaseSpaceState::instant(double t, std::array<double, 3> x, std::array<double, 3> p) {
  return {Form::instant, t, {x[0], x[1], x[2], 0.0}, {p[0], p[1], p[2], 0.0}};
}

PhaseSpaceState PhaseSpaceState::front(double xplus, double xminus, std::array<double, 2> xperp,
                                       double pminus, std::array<double, 2> pperp) {
  return {Form::front, xplus, {xminus, xperp[0], xperp[1], 0.0}, {pminus, pperp[0], pperp[1], 0.0}};
}

PhaseSpaceState PhaseSpaceState::extended(double s, double xplus, double xminus, std::array<double, 2> xperp,
                                          double pplus, double pminus, std::array<double, 2> pperp) {
  return {Form::extended_front, s, {xplus, xminus, xperp[0], xperp[1]}, {pplus, pminus, pperp[0], pperp[1]}};
}

PhaseSpaceState PhaseSpaceState::covariant(double tau, const FourVector& x, const FourVector& u) {
  return {Form::covariant, tau, x.v, u.v};
}

double hamiltonian_instant(const PhaseSpaceState& s, const ScalarBackground& bg) {
  const double m2 = bg.m2(s.position());
  return std::sqrt(s.p[0] * s.p[0] + s.p[1] * s.p[1] + s.p[2] * s.p[2] + m2);
}

namespace {

struct FrontMomenta {
  double pminus, p1, p2;
};

FrontMomenta front_momenta(const PhaseSpaceState& s) {
  if (s.form == Form::front) return {s.p[0], s.p[1], s.p[2]};
  if (s.form == Form::extended_front) return {s.p[1], s.p[2], s.p[3]};
  throw std::invalid_argument("front-form Hamiltonian needs a front or extended state");
}

}  // namespace

double hamiltonian_front(const PhaseSpaceState& s, const ScalarBackground& bg) {
  const auto [pm, p1, p2] = front_momenta(s);
  if (pm == 0.0) throw OnShellError("front form: p- = 0");
  const double m2 = bg.m2(s.position());
  return (p1 * p1 + p2 * p2 + m2) / (4.0 * pm);
}

double hamiltonian_nonrel(const PhaseSpaceState& s, const ScalarBackground& bg) {
  const double m2 = bg.m2(s.position());
  if (!(m2 > 0.0)) throw RealityError("non-relativistic Hamiltonian needs m^2 > 0");
  const double m = std::sqrt(m2);
  const double pp = s.p[0] * s.p[0] + s.p[1] * s.p[1] + s.p[2] * s.p[2];
  return pp / (2.0 * m) + m;
}

double hamiltonian_extended(const PhaseSpaceState& s, const ScalarBackground& bg) {
  if (s.form != Form::extended_front) throw std::invalid_argument("K needs an extended state");
  return hamiltonian_front(s, bg) - s.p[0];
}

FourVector four_momentum(const PhaseSpaceState& s, const ScalarBackground& bg) {
  switch (s.form) {
    case Form::instant: {
      const double H = hamiltonian_instant(s, bg);
      if (!(H > 0.0)) throw OnShellError("instant form: p0 must be positive");
      return {H, s.p[0], s.p[1], s.p[2]};
    }
    case Form::front: {
      const double pplus = hamiltonian_front(s, bg);
      return from_lightfront_covector({pplus, s.p[0], s.p[1], s.p[2]});
    }
    case Form::extended_front:
      return from_lightfront_covector({s.p[0], s.p[1], s.p[2], s.p[3]});
    case Form::covariant: {
      const double m2 = bg.m2(s.position());
      const double m = std::sqrt(m2);
      return m * flip_index(FourVector{s.p[0], s.p[1], s.p[2], s.p[3]});
    }
  }
  return {};
}

PhaseSpaceState to_instant(const PhaseSpaceState& cs, const ScalarBackground& bg) {
  if (cs.form != Form::covariant) throw std::invalid_argument("to_instant expects a covariant state");
  const FourVector p = four_momentum(cs, bg);
  return PhaseSpaceState::instant(cs.q[0], {cs.q[1], cs.q[2], cs.q[3]}, {p[1], p[2], p[3]});
}

}  // namespace scalardyn
