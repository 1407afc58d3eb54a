#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/geometry.hpp"
#include "scalardyn/phase_space.hpp"

namespace scalardyn {

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Infinitesimal conformal transformation
///
///   xi_mu(x) = a_mu + omega_{mu nu} x^nu + lambda x_mu + c_mu x^2 - 2 (c.x) x_mu
///
/// with every parameter stored covariantly (lower index, Cartesian order).
/// omega must be antisymmetric; this is enforced on construction.
class ConformalGenerator {
 public:
  ConformalGenerator() = default;
  ConformalGenerator(const FourVector& a_lower, const Matrix4& omega_lower, double lambda,
                     const FourVector& c_lower);

  const FourVector& a() const { return a_; }
  const Matrix4& omega() const { return omega_; }
  double lambda() const { return lambda_; }
  const FourVector& c() const { return c_; }

  bool is_zero(double tol = 0.0) const;
  /// Lorentz + translations only (d.xi = 0).
  bool is_poincare() const;

  friend ConformalGenerator operator+(const ConformalGenerator& a, const ConformalGenerator& b);
  friend ConformalGenerator operator*(double s, const ConformalGenerator& g);

  // Named generators. The comment gives xi.p in front-form variables.

  /// xi^mu = a^mu (contravariant input).
  static ConformalGenerator translation(const FourVector& a_upper);
  /// xi.p = p+
  static ConformalGenerator translation_plus();
  /// xi.p = p-
  static ConformalGenerator translation_minus();
  /// xi.p = p_perp (perp = 1 or 2)
  static ConformalGenerator translation_perp(int perp);
  /// xi.p = x p2 - y p1
  static ConformalGenerator rotation_z();
  /// xi = (z, 0, 0, t); xi.p = x+ p+ - x- p-
  static ConformalGenerator boost_z();
  /// T_perp: xi.p = 2 x_perp p- + x+ p_perp
  static ConformalGenerator null_rotation_t(int perp);
  /// U_perp: xi.p = 2 x_perp p+ + x- p_perp
  static ConformalGenerator null_rotation_u(int perp);
  /// xi = lambda x
  static ConformalGenerator dilation(double lambda = 1.0);
  /// Special conformal transformation with contravariant parameter c^mu.
  static ConformalGenerator special_conformal(const FourVector& c_upper);
  /// c^- = 1, all other components zero.
  static ConformalGenerator special_conformal_minus();
  /// Builds omega from a linear Killing field xi^mu = M^mu_nu x^nu.
  static ConformalGenerator from_linear_field(const Matrix4& m_upper);

 private:
  FourVector a_;
  Matrix4 omega_{};
  double lambda_ = 0.0;
  FourVector c_;
};

/// The ten Poincare generators with labels (p0.., Lz, Kz, T1, T2, U1, U2 style).
struct NamedGenerator {
  std::string label;
  ConformalGenerator generator;
};
std::vector<NamedGenerator> poincare_generators();

/// xi^mu(x), contravariant.
FourVector killing_vector(const ConformalGenerator& g, const FourVector& x);

/// d_nu xi^mu(x) as J[mu][nu].
Matrix4 killing_jacobian(const ConformalGenerator& g, const FourVector& x);

/// d.xi = 4 lambda - 8 c.x, closed form.
double divergence(const ConformalGenerator& g, const FourVector& x);

/// d_mu xi_nu + d_nu xi_mu - 1/2 eta_{mu nu} d.xi from closed-form derivatives.
Matrix4 conformal_killing_residual(const ConformalGenerator& g, const FourVector& x);

/// Same residual for an arbitrary contravariant vector field, differentiated by
/// central differences with step h. Intended for negative tests.
using VectorField = std::function<FourVector(const FourVector&)>;
Matrix4 conformal_killing_residual(const VectorField& xi_upper, const FourVector& x, double h = 1e-4);

/// Generator of the commutator field xi1.d xi2 - xi2.d xi1, i.e. of
/// [L_xi1, L_xi2] acting on scalars. lie_bracket(g2, g1) is the orientation
/// L_[xi2, xi1] used for Poisson brackets:
///   {xi1.p, xi2.p} = -lie_bracket(g1, g2)(x) . p.
/// Throws std::logic_error if the fitted generator does not reproduce the
/// commutator field (closure failure).
ConformalGenerator lie_bracket(const ConformalGenerator& g1, const ConformalGenerator& g2);

/// L_xi m^2 + 1/2 m^2 d.xi at x with the background's analytic gradient.
/// Zero means xi.p is a first integral.
double symmetry_defect(const ConformalGenerator& g, const ScalarBackground& bg, const FourVector& x);

/// Q = xi(x).p with p the canonical four-momentum rebuilt from the state.
double conserved_from_generator(const ConformalGenerator& g, const PhaseSpaceState& s,
                                const ScalarBackground& bg);

/// A phase-space function monitored along orbits.
///
/// `gradient`, when present, returns d/d(q, p) in the state's canonical order
/// (length 2 dof). Quantities without it are differentiated numerically.
struct ConservedQuantity {
  std::string label;
  std::function<double(const PhaseSpaceState&)> value;
  std::function<std::vector<double>(const PhaseSpaceState&)> gradient;
  /// Set when the quantity is xi.p for a conformal generator; empty for
  /// hidden (phase-space) symmetries.
  std::optional<ConformalGenerator> generator;

  double operator()(const PhaseSpaceState& s) const { return value(s); }
};

ConservedQuantity quantity_from_generator(std::string label, const ConformalGenerator& g,
                                          const ScalarBackground& bg);

/// {"a":[4], "omega":[[4x4]], "lambda":x, "c":[4]} with lower-index entries.
std::string to_json(const ConformalGenerator& g);
/// Throws std::invalid_argument on malformed input or non-antisymmetric omega.
ConformalGenerator generator_from_json(const std::string& text);

}  // namespace scalardyn
