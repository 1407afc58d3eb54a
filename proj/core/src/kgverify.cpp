#include "scalardyn/kgverify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "scalardyn/bessel.hpp"
#include "scalardyn/errors.hpp"

namespace scalardyn {

namespace {

constexpr cplx I{0.0, 1.0};

FourVector unit(int mu, double s) {
  FourVector e;
  e[mu] = s;
  return e;
}

void check_margin(const Wavefunction& phi, const ScalarBackground* bg, const FourVector& x, double reach) {
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "stencil around (" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ") with reach " << reach
       << " leaves the domain: " << why;
    throw DomainError(os.str());
  };
  for (int mu = 0; mu < 4; ++mu)
    for (double s : {-reach, 0.0, reach}) {
      const FourVector y = x + unit(mu, s);
      if (!phi.in_domain(y)) fail(phi.domain(y));
      if (bg && !bg->in_domain(y)) fail("background singular");
    }
  // an axis segment through x+ = 0 has both endpoints inside a domain that excludes that surface
  const double xp = x.t() + x.z();
  if (std::abs(xp) <= reach)
    for (int mu : {0, 3}) {
      const FourVector y = x + unit(mu, -xp);
      if (!phi.in_domain(y)) fail(phi.domain(y));
      if (bg && !bg->in_domain(y)) fail("background singular");
    }
}

// d^2 phi / (dx^mu)^2
cplx second_derivative(const Wavefunction& phi, const FourVector& x, int mu, double h, Stencil st) {
  const FourVector e = unit(mu, h);
  const cplx f0 = phi.eval(x);
  if (st == Stencil::second_order) return (phi.eval(x + e) - 2.0 * f0 + phi.eval(x - e)) / (h * h);
  const FourVector e2 = unit(mu, 2 * h);
  return (-phi.eval(x + e2) + 16.0 * phi.eval(x + e) - 30.0 * f0 + 16.0 * phi.eval(x - e) - phi.eval(x - e2)) /
         (12.0 * h * h);
}

cplx first_derivative(const Wavefunction& phi, const FourVector& x, int mu, double h) {
  const FourVector e = unit(mu, h);
  return (phi.eval(x + e) - phi.eval(x - e)) / (2.0 * h);
}

std::string lf_domain(const FourVector& x) {
  const double xp = x.t() + x.z();
  return xp == 0.0 ? std::string("singular surface x+ = 0") : std::string();
}

}  // namespace

cplx Wavefunction::operator()(const FourVector& x) const {
  if (domain) {
    const std::string why = domain(x);
    if (!why.empty()) throw DomainError(name + ": " + why);
  }
  return eval(x);
}

cplx kg_residual(const Wavefunction& phi, const ScalarBackground& bg, const FourVector& x, double h,
                 Stencil stencil) {
  check_margin(phi, &bg, x, (stencil == Stencil::second_order ? 2.0 : 3.0) * h);
  cplx box = second_derivative(phi, x, 0, h, stencil);
  for (int j = 1; j < 4; ++j) box -= second_derivative(phi, x, j, h, stencil);
  return box + bg.m2(x) * phi.eval(x);
}

double kg_residual_relative(const Wavefunction& phi, const ScalarBackground& bg, const FourVector& x, double h,
                            Stencil stencil) {
  const cplx r = kg_residual(phi, bg, x, h, stencil);
  return std::abs(r) / std::max(std::abs(phi.eval(x)), 1e-300);
}

cplx symmetry_apply(const ConformalGenerator& g, const Wavefunction& phi, const FourVector& x, double h) {
  check_margin(phi, nullptr, x, 2.0 * h);
  const FourVector xi = killing_vector(g, x);
  cplx out = 0.25 * divergence(g, x) * phi.eval(x);
  for (int mu = 0; mu < 4; ++mu)
    if (xi[mu] != 0.0) out += xi[mu] * first_derivative(phi, x, mu, h);
  return out;
}

double eigen_defect(const ConformalGenerator& g, const Wavefunction& phi, cplx Q,
                    const std::vector<FourVector>& points, double h) {
  double worst = 0.0, scale = 0.0;
  for (const auto& x : points) {
    const cplx v = phi(x);
    worst = std::max(worst, std::abs(symmetry_apply(g, phi, x, h) + I * Q * v));
    scale = std::max(scale, std::abs(v));
  }
  return worst / std::max(scale, 1e-300);
}

Wavefunction make_planewave_solution(std::array<double, 2> Qperp, double Qminus, const ScalarBackground& bg) {
  if (bg.family().kind != BackgroundKind::plane_wave_plus)
    throw std::invalid_argument("make_planewave_solution needs an m^2(x+) background");
  if (Qminus == 0.0) throw std::invalid_argument("make_planewave_solution: Q- = 0");
  const Profile m2 = bg.family().profile;
  const double qq = Qperp[0] * Qperp[0] + Qperp[1] * Qperp[1];
  Wavefunction w;
  w.name = "planewave";
  w.params = {{"Q1", Qperp[0]}, {"Q2", Qperp[1]}, {"Qminus", Qminus}};
  w.eval = [=](const FourVector& x) {
    const double xp = x.t() + x.z(), xm = x.t() - x.z();
    const double S = Qperp[0] * x.x() + Qperp[1] * x.y() + Qminus * xm + (qq * xp + m2.antiderivative(xp)) / (4.0 * Qminus);
    return std::exp(-I * S);
  };
  return w;
}

Wavefunction make_conformal_solution(std::array<double, 2> Qperp, double Q3, const Profile& f) {
  if (Q3 == 0.0) throw std::invalid_argument("make_conformal_solution: Q3 = 0");
  const double qq = Qperp[0] * Qperp[0] + Qperp[1] * Qperp[1];
  Wavefunction w;
  w.name = "conformal";
  w.params = {{"Q1", Qperp[0]}, {"Q2", Qperp[1]}, {"Q3", Q3}};
  w.domain = lf_domain;
  w.eval = [=](const FourVector& x) {
    const double xp = x.t() + x.z(), xm = x.t() - x.z();
    const double perp2 = x.x() * x.x() + x.y() * x.y();
    const double u = xm - perp2 / xp;
    const double phase = -(Q3 + Qperp[0] * x.x() + Qperp[1] * x.y()) / xp + (qq * u + f.antiderivative(u)) / (4.0 * Q3);
    return std::exp(I * phase) / xp;
  };
  return w;
}

Wavefunction make_dilation_solution(std::array<double, 2> Qperp, double Q3, double c2,
                                    std::function<cplx(double)> y, std::string name) {
  Wavefunction w;
  w.name = std::move(name);
  w.params = {{"Q1", Qperp[0]}, {"Q2", Qperp[1]}, {"Q3", Q3}, {"c2", c2}};
  w.domain = [](const FourVector& x) {
    if (!(x.t() + x.z() > 0.0)) return std::string("needs x+ > 0");
    if (!(minkowski_dot(x, x) > 0.0)) return std::string("needs x.x > 0 (inside the light cone)");
    return std::string();
  };
  w.eval = [=](const FourVector& x) {
    const double xp = x.t() + x.z();
    const double xx = minkowski_dot(x, x);
    if (!(xp > 0.0) || !(xx > 0.0)) throw DomainError("dilation solution evaluated outside x+ > 0, x.x > 0");
    const double v = std::sqrt(xx) / xp;
    const cplx pre = std::exp(-(1.0 + I * Q3) * std::log(xp) - I * Q3 * std::log(v) -
                              I * (Qperp[0] * x.x() + Qperp[1] * x.y()) / xp);
    return pre * y(v);
  };
  return w;
}

Wavefunction make_dilation_solution(std::array<double, 2> Qperp, double Q3, double c2, cplx c1, cplx c2coef) {
  const double qabs = std::hypot(Qperp[0], Qperp[1]);
  if (qabs == 0.0) throw std::invalid_argument("make_dilation_solution: Bessel form needs Q_perp != 0");
  if (c2 < 0.0) throw std::invalid_argument("make_dilation_solution: c^2 must be >= 0");
  const cplx alpha = std::sqrt(cplx(c2 - Q3 * Q3, 0.0));
  auto y = [=](double v) {
    const double z = qabs * v;
    cplx out = 0.0;
    if (c1 != 0.0) out += c1 * bessel::bessel_j_neg_imag(alpha, z);
    if (c2coef != 0.0) out += c2coef * bessel::bessel_y_neg_imag(alpha, z);
    return out;
  };
  Wavefunction w = make_dilation_solution(Qperp, Q3, c2, y, "dilation");
  w.params["alpha_re"] = alpha.real();
  w.params["alpha_im"] = alpha.imag();
  return w;
}

Wavefunction make_free_mode(const FourVector& p_lower) {
  Wavefunction w;
  w.name = "free";
  w.params = {{"p0", p_lower[0]}, {"p1", p_lower[1]}, {"p2", p_lower[2]}, {"p3", p_lower[3]}};
  w.eval = [=](const FourVector& x) { return std::exp(-I * contract(p_lower, x)); };
  return w;
}

FourVector phase_gradient(const Wavefunction& phi, const FourVector& x, double h) {
  check_margin(phi, nullptr, x, 2.0 * h);
  const cplx v = phi.eval(x);
  FourVector out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = (I * first_derivative(phi, x, mu, h) / v).real();
  return out;
}

std::function<cplx(double)> extract_conformal_g(const Wavefunction& phi, std::array<double, 2> Qperp, double Q3,
                                                double xplus, std::array<double, 2> xperp) {
  return [=](double u) {
    const double perp2 = xperp[0] * xperp[0] + xperp[1] * xperp[1];
    const double xm = u + perp2 / xplus;
    const FourVector x = from_lightfront({xplus, xm, xperp[0], xperp[1]});
    return xplus * std::exp(I * (Q3 + Qperp[0] * xperp[0] + Qperp[1] * xperp[1]) / xplus) * phi(x);
  };
}

std::function<cplx(double)> extract_planewave_chi(const Wavefunction& phi, std::array<double, 2> Qperp,
                                                  double Qminus, double xminus, std::array<double, 2> xperp) {
  return [=](double xp) {
    const FourVector x = from_lightfront({xp, xminus, xperp[0], xperp[1]});
    return std::exp(I * (Qperp[0] * xperp[0] + Qperp[1] * xperp[1] + Qminus * xminus)) * phi(x);
  };
}

double ode_residual_conformal(const std::function<cplx(double)>& g, std::array<double, 2> Qperp, double Q3,
                              const Profile& f, const std::vector<double>& u_grid, double h) {
  const double qq = Qperp[0] * Qperp[0] + Qperp[1] * Qperp[1];
  double worst = 0.0, scale = 0.0;
  for (double u : u_grid) {
    const cplx gu = g(u);
    const cplx dg = (g(u + h) - g(u - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(4.0 * I * Q3 * dg + (qq + f(u)) * gu));
    scale = std::max(scale, std::abs(gu));
  }
  return worst / std::max(scale, 1e-300);
}

double ode_residual_planewave(const std::function<cplx(double)>& chi, std::array<double, 2> Qperp, double Qminus,
                              const Profile& m2, const std::vector<double>& xplus_grid, double h) {
  const double qq = Qperp[0] * Qperp[0] + Qperp[1] * Qperp[1];
  double worst = 0.0, scale = 0.0;
  for (double xp : xplus_grid) {
    const cplx c = chi(xp);
    const cplx dc = (chi(xp + h) - chi(xp - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(4.0 * I * Qminus * dc - (qq + m2(xp)) * c));
    scale = std::max(scale, std::abs(c));
  }
  return worst / std::max(scale, 1e-300);
}

std::vector<EigenCondition> stated_eigen_conditions(const Wavefunction& phi) {
  const auto& P = phi.params;
  auto get = [&](const char* k) {
    auto it = P.find(k);
    if (it == P.end()) throw std::invalid_argument(phi.name + ": missing parameter " + k);
    return it->second;
  };
  if (phi.name == "planewave")
    return {{"p1", ConformalGenerator::translation_perp(1), get("Q1")},
            {"p2", ConformalGenerator::translation_perp(2), get("Q2")},
            {"p-", ConformalGenerator::translation_minus(), get("Qminus")}};
  if (phi.name == "free")
    return {{"p0", ConformalGenerator::translation({1, 0, 0, 0}), get("p0")},
            {"p1", ConformalGenerator::translation({0, 1, 0, 0}), get("p1")},
            {"p2", ConformalGenerator::translation({0, 0, 1, 0}), get("p2")},
            {"p3", ConformalGenerator::translation({0, 0, 0, 1}), get("p3")}};
  if (phi.name == "conformal")
    return {{"T1", ConformalGenerator::null_rotation_t(1), get("Q1")},
            {"T2", ConformalGenerator::null_rotation_t(2), get("Q2")},
            {"xi_c", ConformalGenerator::special_conformal_minus(), get("Q3")}};
  if (phi.name.rfind("dilation", 0) == 0)
    return {{"T1", ConformalGenerator::null_rotation_t(1), get("Q1")},
            {"T2", ConformalGenerator::null_rotation_t(2), get("Q2")},
            {"D", ConformalGenerator::dilation(), get("Q3")}};
  throw std::invalid_argument("no stated eigenvector conditions for '" + phi.name + "'");
}

std::vector<FourVector> random_points_in_domain(const Wavefunction& phi, const ScalarBackground& bg,
                                                std::size_t count, std::uint64_t seed, double margin) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(1.5, 3.0), ux(-1.0, 1.0);
  std::vector<FourVector> out;
  std::size_t tries = 0;
  while (out.size() < count) {
    if (++tries > 1000 * (count + 1)) throw DomainError("random_points_in_domain: domain too small to sample");
    const FourVector x{ut(rng), ux(rng), ux(rng), ux(rng)};
    bool ok = true;
    for (int mu = 0; mu < 4 && ok; ++mu)
      for (double s : {-margin, 0.0, margin}) {
        const FourVector y = x + unit(mu, s);
        if (!phi.in_domain(y) || !bg.in_domain(y)) ok = false;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<ConvergenceRow> kg_convergence(const Wavefunction& phi, const ScalarBackground& bg,
                                           const std::vector<FourVector>& points, double h0, int levels,
                                           Stencil stencil) {
  std::vector<ConvergenceRow> rows;
  for (const auto& x : points) {
    double prev = std::numeric_limits<double>::quiet_NaN();
    double h = h0;
    for (int l = 0; l < levels; ++l, h *= 0.5) {
      const double r = kg_residual_relative(phi, bg, x, h, stencil);
      rows.push_back({x, h, r, l == 0 ? std::numeric_limits<double>::quiet_NaN() : prev / r});
      prev = r;
    }
  }
  return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out) {
  out << "point_t,point_x,point_y,point_z,h,residual,ratio\n";
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << sep;
  };
  for (const auto& r : rows) {
    for (int mu = 0; mu < 4; ++mu) put(r.point[mu], ',');
    put(r.h, ',');
    put(r.residual, ',');
    put(r.ratio, '\n');
  }
}

double operator_identity_defect(const ConformalGenerator& g, const Wavefunction& phi, const ScalarBackground& bg,
                                const FourVector& x, double h) {
  Wavefunction Lphi{"L phi", [&](const FourVector& y) { return symmetry_apply(g, phi, y, h); }, phi.domain, {}};
  Wavefunction KGphi{"KG phi", [&](const FourVector& y) { return kg_residual(phi, bg, y, h); }, phi.domain, {}};
  const cplx lhs = kg_residual(Lphi, bg, x, h) - symmetry_apply(g, KGphi, x, h);
  const double div = divergence(g, x);
  const cplx rhs = 0.5 * div * KGphi.eval(x) - symmetry_defect(g, bg, x) * phi.eval(x);
  return std::abs(lhs - rhs);
}

}  // namespace scalardyn
