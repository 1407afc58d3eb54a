#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/geometry.hpp"

namespace scalardyn {

/// Choice of time and the matching canonical variables.
///
/// | form           | time  | q                  | p                     |
/// |----------------|-------|--------------------|-----------------------|
/// | instant        | t     | x, y, z            | p1, p2, p3            |
/// | front          | x+    | x-, x1, x2         | p-, p1, p2            |
/// | extended_front | s     | x+, x-, x1, x2     | p+, p-, p1, p2        |
/// | covariant      | tau   | t, x, y, z         | dx^mu/dtau (upper)    |
///
/// Canonical momenta are covariant (lower index), exactly as they appear in
/// H = sqrt(p^2 + m^2) and H = (p_perp^2 + m^2)/(4 p-). With the bracket
/// {A,B} = dA/dq dB/dp - dA/dp dB/dq, evolution is dQ/dt = dQ/dt|explicit - {Q,H};
/// this is the opposite of the usual sign, and it is what makes the lower
/// index momenta move physically (dx^j/dt = -p_j/H = p^j/H).
enum class Form { instant, front, extended_front, covariant };

std::string_view to_string(Form f);
Form form_from_string(std::string_view s);

struct PhaseSpaceState {
  Form form = Form::instant;
  double time = 0.0;
  std::array<double, 4> q{};
  std::array<double, 4> p{};

  /// Degrees of freedom: 3 for instant/front, 4 otherwise.
  int dof() const { return form == Form::instant || form == Form::front ? 3 : 4; }

  /// (q..., p...) of length 2 dof().
  std::vector<double> canonical() const;
  PhaseSpaceState with_canonical(std::span<const double> y) const;

  /// Contravariant Cartesian position (t, x, y, z).
  FourVector position() const;

  static PhaseSpaceState instant(double t, std::array<double, 3> x, std::array<double, 3> p);
  static PhaseSpaceState front(double xplus, double xminus, std::array<double, 2> xperp, double pminus,
                               std::array<double, 2> pperp);
  static PhaseSpaceState extended(double s, double xplus, double xminus, std::array<double, 2> xperp,
                                  double pplus, double pminus, std::array<double, 2> pperp);
  static PhaseSpaceState covariant(double tau, const FourVector& x, const FourVector& u);
};

/// Instant-form energy sqrt(p^2 + m^2(t, x)); RealityError if m^2 < 0.
double hamiltonian_instant(const PhaseSpaceState& s, const ScalarBackground& bg);

/// Front-form energy p+ = (p_perp^2 + m^2)/(4 p-); OnShellError if p- = 0.
/// Accepts front and extended-front states (the latter ignore their stored p+).
double hamiltonian_front(const PhaseSpaceState& s, const ScalarBackground& bg);

/// Non-relativistic energy p^2/(2m) + m with m = sqrt(m^2(t, x)).
double hamiltonian_nonrel(const PhaseSpaceState& s, const ScalarBackground& bg);

/// Extended-phase-space Hamiltonian K = H_front - p+.
double hamiltonian_extended(const PhaseSpaceState& s, const ScalarBackground& bg);

/// Canonical four-momentum p_mu (covariant, Cartesian order) of a state. The
/// missing component is supplied by the form's Hamiltonian: p0 = H in the
/// instant form, p+ = H in the front form. Extended states use their stored
/// p+, covariant states use p_mu = m u_mu.
FourVector four_momentum(const PhaseSpaceState& s, const ScalarBackground& bg);

/// Convert a covariant-form state into the instant form at the same event.
PhaseSpaceState to_instant(const PhaseSpaceState& covariant_state, const ScalarBackground& bg);

}  // namespace scalardyn
