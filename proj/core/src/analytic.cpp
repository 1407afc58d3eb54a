#include "scalardyn/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "scalardyn/errors.hpp"
#include "scalardyn/quantities.hpp"

namespace scalardyn {

PhaseSpaceState ClosedFormOrbit::operator()(double time) const {
  if (time < begin || time > end) {
    std::ostringstream os;
    os << family << " orbit evaluated at " << time << " outside its window [" << begin << ", " << end << "]";
    throw DomainError(os.str());
  }
  return evaluator(time);
}

namespace {

void require_kind(const ScalarBackground& bg, BackgroundKind k, const char* what) {
  if (bg.family().kind != k) throw std::invalid_argument(std::string(what) + ": background of the wrong family");
}

}  // namespace

double spacelike_exit_time(double B, const PhaseSpaceState& init, double m0sq) {
  const double pp = init.p[0] * init.p[0] + init.p[1] * init.p[1] + init.p[2] * init.p[2];
  const double Q5 = std::sqrt(pp + m0sq);
  return init.time - 4.0 * Q5 * init.p[2] / B;
}

ClosedFormOrbit spacelike_orbit(const ScalarBackground& bg, const PhaseSpaceState& init) {
  require_kind(bg, BackgroundKind::linear_z, "spacelike_orbit");
  if (init.form != Form::instant) throw std::invalid_argument("spacelike_orbit needs an instant-form state");
  const auto& fam = bg.family();
  const double B = fam.B, m0sq = fam.m0sq;
  if (B == 0.0) throw std::invalid_argument("spacelike_orbit needs B != 0");
  if (fam.switched && (init.q[2] != 0.0 || !(init.p[2] < 0.0)))
    throw std::invalid_argument("switched spacelike orbit must start on z = 0 moving into z > 0");

  const double t0 = init.time;
  const double Q1 = init.p[0], Q2 = init.p[1], p30 = init.p[2];
  const double Q3 = 2.0 * Q1 * p30 + B * init.q[0];
  const double Q4 = 2.0 * Q2 * p30 + B * init.q[1];
  const double m2_0 = m0sq + B * init.q[2];
  const double Qperp2 = Q1 * Q1 + Q2 * Q2;
  const double Q5 = std::sqrt(Qperp2 + p30 * p30 + m2_0);

  ClosedFormOrbit orb;
  orb.family = "spacelike";
  orb.form = Form::instant;
  orb.initial = init;
  orb.constants = {{"Q1", Q1}, {"Q2", Q2}, {"Q3", Q3}, {"Q4", Q4}, {"Q5", Q5}, {"B", B}, {"m0sq", m0sq}};

  auto field = [=](double t) {
    const double p3 = p30 + B * (t - t0) / (2.0 * Q5);
    return PhaseSpaceState::instant(
        t, {(Q3 - 2.0 * Q1 * p3) / B, (Q4 - 2.0 * Q2 * p3) / B, (Q5 * Q5 - Qperp2 - m0sq - p3 * p3) / B},
        {Q1, Q2, p3});
  };

  if (!fam.switched) {
    // m^2 = Q5^2 - Q_perp^2 - p3^2 >= 0
    const double pmax = std::sqrt(std::max(0.0, Q5 * Q5 - Qperp2));
    const double ta = t0 + 2.0 * Q5 * (-pmax - p30) / B;
    const double tb = t0 + 2.0 * Q5 * (pmax - p30) / B;
    orb.begin = std::min(ta, tb);
    orb.end = std::max(ta, tb);
    orb.evaluator = field;
    return orb;
  }

  const double t_exit = spacelike_exit_time(B, init, m0sq);
  orb.constants["t_exit"] = t_exit;
  if (!(t_exit > t0)) throw std::invalid_argument("switched spacelike orbit never enters the field (need B > 0)");
  const PhaseSpaceState exit = field(t_exit);
  orb.evaluator = [=](double t) {
    auto free = [&](const PhaseSpaceState& ref) {
      const double H = Q5;  // m^2 = m0^2 on the interface
      PhaseSpaceState s = ref;
      s.time = t;
      for (int j = 0; j < 3; ++j) s.q[j] = ref.q[j] - ref.p[j] / H * (t - ref.time);
      return s;
    };
    if (t < t0) return free(init);
    if (t > t_exit) {
      PhaseSpaceState e = exit;
      e.q[2] = 0.0;
      return free(e);
    }
    return field(t);
  };
  return orb;
}

ClosedFormOrbit timelike_orbit(const ScalarBackground& bg, const PhaseSpaceState& init) {
  require_kind(bg, BackgroundKind::timelike, "timelike_orbit");
  if (init.form != Form::instant) throw std::invalid_argument("timelike_orbit needs an instant-form state");
  const auto& fam = bg.family();
  const Profile E = fam.profile;
  const double m0sq = fam.m0sq;
  const bool switched = fam.switched;
  const double pp = init.p[0] * init.p[0] + init.p[1] * init.p[1] + init.p[2] * init.p[2];
  const double t0 = init.time;

  auto integrand = [=](double s) {
    const double h2 = pp + m0sq + ((switched && s < 0.0) ? 0.0 : E(s));
    if (!(h2 > 0.0)) {
      std::ostringstream os;
      os << "p^2 + m^2 <= 0 at t = " << s;
      throw RealityError(os.str());
    }
    return 1.0 / std::sqrt(h2);
  };
  auto integral = [=](double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    auto piece = [&](double lo, double hi) {
      if (lo == hi) return 0.0;
      return gauss_kronrod<double, 31>::integrate(integrand, lo, hi, 15, 1e-14);
    };
    if (switched && a < 0.0 && b > 0.0) return piece(a, 0.0) + piece(0.0, b);
    if (switched && b < 0.0 && a > 0.0) return piece(a, 0.0) + piece(0.0, b);
    return piece(a, b);
  };

  ClosedFormOrbit orb;
  orb.family = "timelike";
  orb.form = Form::instant;
  orb.initial = init;
  const auto& x = init.q;
  const auto& p = init.p;
  orb.constants = {{"p1", p[0]}, {"p2", p[1]}, {"p3", p[2]}, {"m0sq", m0sq},
                   {"L1", x[1] * p[2] - x[2] * p[1]}, {"L2", x[2] * p[0] - x[0] * p[2]},
                   {"L3", x[0] * p[1] - x[1] * p[0]}};
  orb.evaluator = [=](double t) {
    const double I = integral(t0, t);
    PhaseSpaceState s = init;
    s.time = t;
    for (int j = 0; j < 3; ++j) s.q[j] = init.q[j] - init.p[j] * I;
    return s;
  };
  return orb;
}

std::array<double, 7> planewave_quantities(const PhaseSpaceState& s, const ScalarBackground& bg) {
  require_kind(bg, BackgroundKind::plane_wave_plus, "planewave_quantities");
  const auto qs = planewave_quantities_set(bg);
  std::array<double, 7> out{};
  for (std::size_t i = 0; i < 7; ++i) out[i] = qs[i](s);
  return out;
}

double planewave_xminus(const std::array<double, 7>& Q, double xplus, double pminus, double pperp2,
                        const ScalarBackground& bg) {
  if (pminus == 0.0) throw OnShellError("planewave_xminus: p- = 0");
  return (Q[6] + pperp2 * xplus + bg.family().profile.antiderivative(xplus)) / (4.0 * pminus * pminus);
}

ClosedFormOrbit planewave_orbit(const ScalarBackground& bg, const PhaseSpaceState& init) {
  require_kind(bg, BackgroundKind::plane_wave_plus, "planewave_orbit");
  if (init.form != Form::extended_front) throw std::invalid_argument("planewave_orbit needs an extended state");
  const double pm = init.p[1];
  if (pm == 0.0) throw OnShellError("planewave_orbit: p- = 0");
  const auto Q = planewave_quantities(init, bg);
  const Profile m2 = bg.family().profile;
  const double pp = init.p[2] * init.p[2] + init.p[3] * init.p[3];

  ClosedFormOrbit orb;
  orb.family = "planewave";
  orb.form = Form::extended_front;
  orb.initial = init;
  for (int i = 0; i < 7; ++i) orb.constants["Q" + std::to_string(i + 1)] = Q[i];
  orb.evaluator = [=](double s) {
    PhaseSpaceState st = init;
    st.time = s;
    const double ds = s - init.time;
    st.q[0] = init.q[0] + ds;
    st.q[2] = init.q[2] - init.p[2] / (2.0 * pm) * ds;
    st.q[3] = init.q[3] - init.p[3] / (2.0 * pm) * ds;
    st.p[0] = init.p[0] + (m2(st.q[0]) - m2(init.q[0])) / (4.0 * pm);
    st.q[1] = (Q[6] + pp * st.q[0] + m2.antiderivative(st.q[0])) / (4.0 * pm * pm);
    return st;
  };
  return orb;
}

ClosedFormOrbit conformal_orbit(const ScalarBackground& bg, const PhaseSpaceState& init,
                                const ConformalOrbitOptions& opts) {
  require_kind(bg, BackgroundKind::special_conformal, "conformal_orbit");
  const auto& fam = bg.family();
  const Profile f = fam.profile;
  double xp0, xm0, x10, x20, pm0, p10, p20;
  if (init.form == Form::front) {
    xp0 = init.time;
    xm0 = init.q[0], x10 = init.q[1], x20 = init.q[2];
    pm0 = init.p[0], p10 = init.p[1], p20 = init.p[2];
  } else if (init.form == Form::extended_front) {
    xp0 = init.q[0];
    xm0 = init.q[1], x10 = init.q[2], x20 = init.q[3];
    pm0 = init.p[1], p10 = init.p[2], p20 = init.p[3];
  } else {
    throw std::invalid_argument("conformal_orbit needs a front-form state");
  }
  if (!(xp0 > 0.0)) throw DomainError("conformal_orbit: x+0 must be positive");
  if (fam.switched && xp0 < fam.switch_at) throw DomainError("conformal_orbit: initial x+ is before the switch-on");
  if (pm0 == 0.0) throw OnShellError("conformal_orbit: p- = 0");

  const double perp2 = x10 * x10 + x20 * x20;
  const double u0 = xm0 - perp2 / xp0;
  const double m2 = f(u0) / (xp0 * xp0);
  const double pplus = (p10 * p10 + p20 * p20 + m2) / (4.0 * pm0);
  const double Qp1 = 2.0 * pm0 * x10 + xp0 * p10;
  const double Qp2 = 2.0 * pm0 * x20 + xp0 * p20;
  const double Q3 = -xp0 * xp0 * pplus - perp2 * pm0 - xp0 * (x10 * p10 + x20 * p20);
  if (Q3 == 0.0) throw std::invalid_argument("conformal_orbit: Q3 = 0");
  const double Qpp = Qp1 * Qp1 + Qp2 * Qp2;
  const double four_q3sq = 4.0 * Q3 * Q3;

  ClosedFormOrbit orb;
  orb.family = "conformal";
  orb.form = Form::front;
  orb.initial = PhaseSpaceState::front(xp0, xm0, {x10, x20}, pm0, {p10, p20});
  orb.initial.time = xp0;
  orb.constants = {{"Qperp1", Qp1}, {"Qperp2", Qp2}, {"Q3", Q3}, {"u0", u0}, {"xplus0", xp0}};
  orb.begin = fam.switched ? fam.switch_at : 0.0;
  if (!fam.switched) orb.begin = std::nextafter(0.0, 1.0);

  auto F = [=](double u) { return (Qpp * (u - u0) + f.integral(u0, u)) / four_q3sq; };
  auto u_of = [=](double xp) {
    const double target = 1.0 / xp0 - 1.0 / xp;
    if (target == 0.0) return u0;
    const double dir = target > 0.0 ? 1.0 : -1.0;
    auto g = [&](double u) { return F(u) - target; };
    double step = 1e-3 * std::max(1.0, std::abs(u0));
    double lo = u0, hi = u0 + dir * step;
    double glo = -target, ghi = g(hi);
    while (dir * ghi < 0.0) {
      const double grow = ghi;
      if (dir * (grow - glo) < 0.0) throw DomainError("conformal_orbit: non-monotone quadrature (f < -Q_perp^2)");
      lo = hi;
      glo = grow;
      step *= 2.0;
      if (step > opts.max_bracket) {
        std::ostringstream os;
        os << "conformal_orbit: x+ = " << xp << " lies beyond the orbit's asymptote (x- -> infinity)";
        throw DomainError(os.str());
      }
      hi = u0 + dir * step;
      ghi = g(hi);
    }
    if (ghi == 0.0) return hi;
    double a = std::min(lo, hi), b = std::max(lo, hi);
    double ga = a == lo ? glo : ghi, gb = a == lo ? ghi : glo;
    if (ga == 0.0) return a;
    boost::uintmax_t iters = 200;
    const double tol = opts.root_tol;
    auto r = boost::math::tools::toms748_solve(
        g, a, b, ga, gb, [tol](double x, double y) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(x)); },
        iters);
    return 0.5 * (r.first + r.second);
  };

  orb.evaluator = [=](double xp) {
    const double u = u_of(xp);
    const double fu = f(u);
    const double pm = -(Qpp + fu) / (4.0 * Q3);
    const double r1 = x10 / xp0 + Qp1 * (u - u0) / (2.0 * Q3);
    const double r2 = x20 / xp0 + Qp2 * (u - u0) / (2.0 * Q3);
    const double x1 = r1 * xp, x2 = r2 * xp;
    const double xm = u + (x1 * x1 + x2 * x2) / xp;
    const double p1 = (Qp1 - 2.0 * pm * x1) / xp;
    const double p2 = (Qp2 - 2.0 * pm * x2) / xp;
    return PhaseSpaceState::front(xp, xm, {x1, x2}, pm, {p1, p2});
  };
  return orb;
}

namespace fig2 {

double kappa(double pminus0, double m0, double L, double k) {
  return 2.0 * std::sqrt(std::numbers::pi) * pminus0 * pminus0 / (k * m0 * m0 * L);
}

double pminus(double kappa, double m0, double L, double k) {
  if (!(kappa > 0.0)) throw std::invalid_argument("fig2::pminus needs kappa > 0");
  return std::sqrt(kappa * k * m0 * m0 * L / (2.0 * std::sqrt(std::numbers::pi)));
}

double inverse_xplus(double kappa, double xminus) { return 1.0 - kappa * std::erf(xminus); }

double asymptote(double kappa) {
  if (!(kappa < 1.0)) return HUGE_VAL;
  return 1.0 / (1.0 - kappa);
}

PhaseSpaceState initial_state(double kappa, double m0, double L, double k) {
  return PhaseSpaceState::front(L, 0.0, {0.0, 0.0}, pminus(kappa, m0, L, k), {0.0, 0.0});
}

}  // namespace fig2

}  // namespace scalardyn
