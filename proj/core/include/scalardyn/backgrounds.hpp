#pragma once

#include <functional>
#include <optional>
#include <string>

#include "scalardyn/geometry.hpp"
#include "scalardyn/profile.hpp"

namespace scalardyn {

/// m^2 and its covariant gradient d_mu m^2 (Cartesian order) at one point.
struct MassSample {
  double m2{};
  FourVector grad;  // lower index
};

enum class BackgroundKind {
  constant,
  linear_z,
  timelike,
  plane_wave_plus,   // m^2(x+)
  plane_wave_minus,  // m^2(x-)
  special_conformal,
  dilation,
  custom,
};

/// Parameters the built-in families were constructed from. Consumers such as
/// the closed-form orbits and the Klein-Gordon solutions read them back.
struct BackgroundFamily {
  BackgroundKind kind = BackgroundKind::custom;
  double m0sq = 1.0;
  double B = 0.0;
  double c2 = 0.0;
  bool switched = false;
  double switch_at = 0.0;  // z = 0, t = 0 or x+ = L
  Profile profile;         // E(t), m^2(x+-), or f(u)
};

/// A dynamical mass field m^2(x) with an analytic four-gradient.
///
/// A background is either smooth, or made of two smooth pieces glued along a
/// switch-on surface given by an event function g(x): the "field" piece
/// applies where g(x) >= 0 and the "outside" piece where g(x) < 0. m^2 is
/// continuous across the surface, its gradient is not. Integrators lock the
/// piece (region) for the duration of a step and cross the surface only via
/// event location.
///
/// Sampling m^2 < 0 raises RealityError; sampling a singular point raises
/// DomainError.
class ScalarBackground {
 public:
  using ScalarFn = std::function<double(const FourVector&)>;
  using GradFn = std::function<FourVector(const FourVector&)>;
  /// Returns an empty string inside the domain, a description otherwise.
  using DomainFn = std::function<std::string(const FourVector&)>;

  struct Piece {
    ScalarFn m2;
    GradFn grad;
  };

  ScalarBackground(std::string label, Piece smooth, DomainFn domain = {});
  ScalarBackground(std::string label, Piece outside, Piece field, ScalarFn event,
                   DomainFn domain = {});

  const std::string& label() const { return label_; }
  const BackgroundFamily& family() const { return family_; }
  ScalarBackground& with_family(BackgroundFamily f) {
    family_ = std::move(f);
    return *this;
  }

  bool switched() const { return static_cast<bool>(event_); }
  /// Signed event function; zero on the switch surface, >= 0 in the field.
  double switch_event(const FourVector& x) const { return event_ ? event_(x) : 1.0; }
  /// 1 in the field piece, 0 outside. Always 1 for smooth backgrounds.
  int region_of(const FourVector& x) const { return switch_event(x) >= 0.0 ? 1 : 0; }

  bool in_domain(const FourVector& x) const { return !domain_ || domain_(x).empty(); }
  void check_domain(const FourVector& x) const;

  double m2(const FourVector& x) const { return sample(x).m2; }
  FourVector grad_m2(const FourVector& x) const { return sample(x).grad; }

  /// Evaluates the piece for `region` (or the piece containing x when
  /// region < 0) without the domain or reality checks.
  MassSample sample_unchecked(const FourVector& x, int region = -1) const;
  /// Checked evaluation.
  MassSample sample(const FourVector& x, int region = -1) const;

 private:
  std::string label_;
  Piece outside_;
  Piece field_;
  ScalarFn event_;
  DomainFn domain_;
  BackgroundFamily family_;
};

/// m^2 = m0sq everywhere.
ScalarBackground make_constant(double m0sq);

/// m^2 = m0sq + B z; with `switched` the field applies for z >= 0 only.
ScalarBackground make_linear_z(double m0sq, double B, bool switched);

/// m^2 = m0sq + E(t); with `switched` E applies for t >= 0 only.
ScalarBackground make_timelike(double m0sq, Profile E, bool switched = true);

enum class LightFrontVariable { plus, minus };

/// m^2 = profile(x+) (or profile(x-)).
ScalarBackground make_plane_wave(Profile profile, LightFrontVariable var = LightFrontVariable::plus);

/// Switch-on data for the special-conformal family: m^2 = m0sq for x+ < L.
struct SwitchOn {
  double L = 1.0;
  double m0sq = 1.0;
};

/// m^2 = f(u) / x+^2, u = x- - x_perp.x_perp / x+. Without a switch the
/// surface x+ = 0 is singular.
ScalarBackground make_special_conformal(Profile f, std::optional<SwitchOn> switch_on = std::nullopt);

/// f(u) = m0^2 L^2 exp(-k^2 u^2), the Gaussian profile of the switched
/// conformal example.
Profile gaussian_conformal_profile(double m0, double L, double k);

/// m^2 = c2 / x.x, singular on the light cone; spacelike points give m^2 < 0.
ScalarBackground make_dilation(double c2);

/// User-defined smooth background. Without an analytic gradient an O(h^4)
/// central difference with h = 1e-5 * scale is used.
ScalarBackground make_custom(std::string label, ScalarBackground::ScalarFn m2,
                             ScalarBackground::GradFn grad = {}, double scale = 1.0,
                             ScalarBackground::DomainFn domain = {});

}  // namespace scalardyn
