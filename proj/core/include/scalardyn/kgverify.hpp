#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/conformal.hpp"
#include "scalardyn/geometry.hpp"
#include "scalardyn/profile.hpp"

namespace scalardyn {

using cplx = std::complex<double>;

/// A complex scalar field with the parameters it was built from.
struct Wavefunction {
  std::string name;
  std::function<cplx(const FourVector&)> eval;
  /// Empty string inside the domain, a description otherwise. Empty function:
  /// defined everywhere.
  std::function<std::string(const FourVector&)> domain;
  std::map<std::string, double> params;

  cplx operator()(const FourVector& x) const;
  bool in_domain(const FourVector& x) const { return !domain || domain(x).empty(); }
};

enum class Stencil { second_order, fourth_order };

/// (d^2 + m^2) phi at x with a central-difference d'Alembertian
/// d_t^2 - d_x^2 - d_y^2 - d_z^2 (3-point or 5-point per axis). DomainError if
/// any stencil point, widened by a further h, leaves phi's or bg's domain.
cplx kg_residual(const Wavefunction& phi, const ScalarBackground& bg, const FourVector& x, double h = 1e-3,
                 Stencil stencil = Stencil::second_order);

/// |kg_residual| / max(|phi(x)|, 1e-300).
double kg_residual_relative(const Wavefunction& phi, const ScalarBackground& bg, const FourVector& x,
                            double h = 1e-3, Stencil stencil = Stencil::second_order);

/// xi(x).d phi (central differences) + 1/4 (d.xi)(x) phi(x).
cplx symmetry_apply(const ConformalGenerator& g, const Wavefunction& phi, const FourVector& x, double h = 1e-3);

/// max_x |symmetry_apply + i Q phi| / max_x |phi|.
double eigen_defect(const ConformalGenerator& g, const Wavefunction& phi, cplx Q,
                    const std::vector<FourVector>& points, double h = 1e-3);

/// exp(-i Q_perp.x_perp - i Q- x- - i \int_0^{x+} (Q_perp^2 + m^2(s))/(4 Q-) ds)
/// for a plane wave m^2(x+).
Wavefunction make_planewave_solution(std::array<double, 2> Qperp, double Qminus, const ScalarBackground& bg);

/// (1/x+) exp(-i (Q3 + Q_perp.x_perp)/x+ + i \int_0^u (Q_perp^2 + f(s))/(4 Q3) ds),
/// u = x- - x_perp^2/x+. Domain x+ != 0.
Wavefunction make_conformal_solution(std::array<double, 2> Qperp, double Q3, const Profile& f);

/// (x+)^{-(1 + i Q3)} v^{-i Q3} exp(-i Q_perp.x_perp/x+) y(v), v = sqrt(x.x)/x+,
/// y = c1 J_a(-i|Q_perp| v) + c2 Y_a(-i|Q_perp| v), a = sqrt(c^2 - Q3^2)
/// (imaginary when c^2 < Q3^2). Domain x+ > 0, x.x > 0.
Wavefunction make_dilation_solution(std::array<double, 2> Qperp, double Q3, double c2, cplx c1, cplx c2coef);

/// Same prefactor with a caller-supplied radial function y(v).
Wavefunction make_dilation_solution(std::array<double, 2> Qperp, double Q3, double c2,
                                    std::function<cplx(double)> y, std::string name = "dilation(custom y)");

/// Free mode exp(-i p.x) with covariant p (any mass shell).
Wavefunction make_free_mode(const FourVector& p_lower);

/// d_mu S with phi = |phi| exp(-i S), by central differences (covariant).
FourVector phase_gradient(const Wavefunction& phi, const FourVector& x, double h = 1e-5);

/// g(u) = x+ exp(i (Q3 + Q_perp.x_perp)/x+) phi at fixed x+ and x_perp,
/// x- = u + x_perp^2/x+.
std::function<cplx(double)> extract_conformal_g(const Wavefunction& phi, std::array<double, 2> Qperp, double Q3,
                                                double xplus, std::array<double, 2> xperp);

/// chi(x+) = exp(i (Q_perp.x_perp + Q- x-)) phi at fixed x- and x_perp.
std::function<cplx(double)> extract_planewave_chi(const Wavefunction& phi, std::array<double, 2> Qperp,
                                                  double Qminus, double xminus, std::array<double, 2> xperp);

/// max_u |4 i Q3 g'(u) + (Q_perp^2 + f(u)) g(u)| / max_u |g(u)|, g' central.
double ode_residual_conformal(const std::function<cplx(double)>& g, std::array<double, 2> Qperp, double Q3,
                              const Profile& f, const std::vector<double>& u_grid, double h = 1e-3);

/// max |4 i Q- chi'(x+) - (Q_perp^2 + m^2(x+)) chi| / max |chi|.
double ode_residual_planewave(const std::function<cplx(double)>& chi, std::array<double, 2> Qperp, double Qminus,
                              const Profile& m2, const std::vector<double>& xplus_grid, double h = 1e-3);

/// A (generator, eigenvalue) pair for which L phi = -i Q phi is expected.
struct EigenCondition {
  std::string label;
  ConformalGenerator generator;
  cplx Q;
};

/// The eigenvector conditions a solution built by make_* was constructed
/// from: translations for plane waves and free modes, null rotations plus
/// xi_c for the conformal solution, null rotations plus the dilation for the
/// dilation solution.
std::vector<EigenCondition> stated_eigen_conditions(const Wavefunction& phi);

/// Rejection-sampled points in t in [1.5, 3], x, y, z in [-1, 1] whose
/// neighbourhood of radius `margin` along every axis lies in both domains.
std::vector<FourVector> random_points_in_domain(const Wavefunction& phi, const ScalarBackground& bg,
                                                std::size_t count, std::uint64_t seed, double margin = 0.1);

struct ConvergenceRow {
  FourVector point;
  double h{};
  double residual{};  // relative, see kg_residual_relative
  double ratio{};     // residual(2h) / residual(h); NaN on the coarsest row
};

/// Relative residuals at h0, h0/2, ..., h0/2^(levels-1) for every point.
std::vector<ConvergenceRow> kg_convergence(const Wavefunction& phi, const ScalarBackground& bg,
                                           const std::vector<FourVector>& points, double h0 = 1e-2,
                                           int levels = 2, Stencil stencil = Stencil::second_order);

/// point_t,point_x,point_y,point_z,h,residual,ratio
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out);

/// | [d^2 + m^2, L] phi - (1/2 d.xi (d^2 + m^2) phi - (L_xi m^2 + 1/2 d.xi m^2) phi) |
/// with L = L_xi + d.xi/4, every derivative by nested central differences.
double operator_identity_defect(const ConformalGenerator& g, const Wavefunction& phi, const ScalarBackground& bg,
                                const FourVector& x, double h = 1e-2);

}  // namespace scalardyn
