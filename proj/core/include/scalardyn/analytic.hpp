#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/phase_space.hpp"

namespace scalardyn {

/// A solution of the equations of motion in closed form (or by quadrature).
/// The evaluator maps the form's time to the state; outside [begin, end] it
/// throws DomainError.
struct ClosedFormOrbit {
  std::string family;
  Form form = Form::instant;
  PhaseSpaceState initial;
  std::map<std::string, double> constants;
  double begin = -HUGE_VAL;
  double end = HUGE_VAL;
  std::function<PhaseSpaceState(double)> evaluator;

  PhaseSpaceState operator()(double time) const;
};

/// Orbit on m^2 = m0sq + B z. Unswitched: valid wherever m^2 >= 0. Switched:
/// the initial state must sit on z = 0 moving into the field (p3 < 0); the
/// orbit is free before t0 and after the exit at t0 - 4 Q5 p3(0) / B.
ClosedFormOrbit spacelike_orbit(const ScalarBackground& bg, const PhaseSpaceState& init);
/// Time at which a switched spacelike orbit entering at `init` leaves z > 0.
double spacelike_exit_time(double B, const PhaseSpaceState& init, double m0sq);

/// Orbit on m^2 = m0sq + E(t): constant momenta, coordinates from
/// x(t) = x(t0) - p \int_{t0}^t ds / sqrt(p^2 + m^2(s)) by Gauss-Kronrod.
/// Constants include the angular momenta L1, L2, L3.
ClosedFormOrbit timelike_orbit(const ScalarBackground& bg, const PhaseSpaceState& init);

/// Q1..Q7 of the plane wave m^2(x+) at an extended-front state.
std::array<double, 7> planewave_quantities(const PhaseSpaceState& s, const ScalarBackground& bg);

/// x- at `xplus` recovered from Q7 and the constant momenta.
double planewave_xminus(const std::array<double, 7>& Q, double xplus, double pminus, double pperp2,
                        const ScalarBackground& bg);

/// Extended-front orbit on a plane wave: x+ = x+0 + (s - s0), linear x_perp,
/// p+ following dp+/ds = d+ m^2 / (4 p-), x- from Q7.
ClosedFormOrbit planewave_orbit(const ScalarBackground& bg, const PhaseSpaceState& init);

struct ConformalOrbitOptions {
  double root_tol = 1e-12;       // bracket width for u(x+)
  double max_bracket = 1e8;      // give up expanding the u bracket beyond |u - u0|
};

/// Front-form orbit on m^2 = f(u)/x+^2 with u = x- - x_perp^2/x+. u(x+) by
/// inverting \int_{u0}^u (Q_perp^2 + f)/(4 Q3^2) = 1/x+0 - 1/x+ with a
/// bracketed root search, p- = -(Q_perp^2 + f(u))/(4 Q3),
/// x_perp/x+ = x_perp0/x+0 + Q_perp (u - u0)/(2 Q3), x- = u + x_perp^2/x+.
/// Accepts front or extended-front initial data in the field region.
ClosedFormOrbit conformal_orbit(const ScalarBackground& bg, const PhaseSpaceState& init,
                                const ConformalOrbitOptions& opts = {});

/// Dimensionless data of the switched Gaussian conformal orbit with
/// x_perp = p_perp = 0 entering at x+ = L, x- = 0:
/// L/x+ = 1 - kappa Erf(k x-), kappa = 2 sqrt(pi) p-^2 / (k m0^2 L).
namespace fig2 {
double kappa(double pminus0, double m0, double L, double k);
double pminus(double kappa, double m0, double L, double k);
/// 1 - kappa Erf(x) in units x+ / L and x- k.
double inverse_xplus(double kappa, double xminus);
/// Limit of x+ / L as x- -> infinity.
double asymptote(double kappa);
PhaseSpaceState initial_state(double kappa, double m0, double L, double k);
}  // namespace fig2

}  // namespace scalardyn
