#include "scalardyn/backgrounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scalardyn/errors.hpp"

namespace scalardyn {

namespace {

std::string describe(const FourVector& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ")";
  return os.str();
}

// Convert covariant light-front derivative components to Cartesian ones:
// d_t = d_+ + d_-, d_z = d_+ - d_-.
FourVector lf_gradient(double dplus, double dminus, double d1, double d2) {
  return {dplus + dminus, d1, d2, dplus - dminus};
}

ScalarBackground::Piece constant_piece(double m0sq) {
  return {[m0sq](const FourVector&) { return m0sq; }, [](const FourVector&) { return FourVector{}; }};
}

}  // namespace

ScalarBackground::ScalarBackground(std::string label, Piece smooth, DomainFn domain)
    : label_(std::move(label)), outside_(smooth), field_(std::move(smooth)), domain_(std::move(domain)) {}

ScalarBackground::ScalarBackground(std::string label, Piece outside, Piece field, ScalarFn event,
                                   DomainFn domain)
    : label_(std::move(label)),
      outside_(std::move(outside)),
      field_(std::move(field)),
      event_(std::move(event)),
      domain_(std::move(domain)) {}

void ScalarBackground::check_domain(const FourVector& x) const {
  if (!domain_) return;
  if (auto why = domain_(x); !why.empty())
    throw DomainError(label_ + ": " + why + " at " + describe(x));
}

MassSample ScalarBackground::sample_unchecked(const FourVector& x, int region) const {
  const Piece& piece = (region < 0 ? region_of(x) : region) == 1 ? field_ : outside_;
  return {piece.m2(x), piece.grad(x)};
}

MassSample ScalarBackground::sample(const FourVector& x, int region) const {
  check_domain(x);
  auto s = sample_unchecked(x, region);
  if (!(s.m2 >= 0.0))
    throw RealityError(label_ + ": m^2 = " + std::to_string(s.m2) + " < 0 at " + describe(x));
  return s;
}

ScalarBackground make_constant(double m0sq) {
  if (!(m0sq > 0.0)) throw std::invalid_argument("constant background needs m0^2 > 0");
  ScalarBackground bg("constant", constant_piece(m0sq));
  bg.with_family({.kind = BackgroundKind::constant, .m0sq = m0sq, .profile = {}});
  return bg;
}

ScalarBackground make_linear_z(double m0sq, double B, bool switched) {
  if (!(m0sq > 0.0)) throw std::invalid_argument("linear_z background needs m0^2 > 0");
  ScalarBackground::Piece field{[=](const FourVector& x) { return m0sq + B * x.z(); },
                                [=](const FourVector&) { return FourVector{0, 0, 0, B}; }};
  BackgroundFamily fam{.kind = BackgroundKind::linear_z, .m0sq = m0sq, .B = B, .switched = switched, .profile = {}};
  if (!switched) {
    ScalarBackground bg("linear_z", std::move(field));
    bg.with_family(fam);
    return bg;
  }
  ScalarBackground bg("linear_z(switched)", constant_piece(m0sq), std::move(field),
                      [](const FourVector& x) { return x.z(); });
  bg.with_family(fam);
  return bg;
}

ScalarBackground make_timelike(double m0sq, Profile E, bool switched) {
  if (!(m0sq > 0.0)) throw std::invalid_argument("timelike background needs m0^2 > 0");
  ScalarBackground::Piece field{[=](const FourVector& x) { return m0sq + E(x.t()); },
                                [=](const FourVector& x) { return FourVector{E.derivative(x.t()), 0, 0, 0}; }};
  BackgroundFamily fam{.kind = BackgroundKind::timelike, .m0sq = m0sq, .switched = switched, .profile = E};
  if (!switched) {
    ScalarBackground bg("timelike", std::move(field));
    bg.with_family(fam);
    return bg;
  }
  ScalarBackground bg("timelike(switched)", constant_piece(m0sq), std::move(field),
                      [](const FourVector& x) { return x.t(); });
  bg.with_family(fam);
  return bg;
}

ScalarBackground make_plane_wave(Profile profile, LightFrontVariable var) {
  ScalarBackground::Piece piece;
  if (var == LightFrontVariable::plus) {
    piece = {[=](const FourVector& x) { return profile(x.t() + x.z()); },
             [=](const FourVector& x) { return lf_gradient(profile.derivative(x.t() + x.z()), 0, 0, 0); }};
  } else {
    piece = {[=](const FourVector& x) { return profile(x.t() - x.z()); },
             [=](const FourVector& x) { return lf_gradient(0, profile.derivative(x.t() - x.z()), 0, 0); }};
  }
  const bool plus = var == LightFrontVariable::plus;
  ScalarBackground bg(plus ? "plane_wave(x+)" : "plane_wave(x-)", std::move(piece));
  bg.with_family({.kind = plus ? BackgroundKind::plane_wave_plus : BackgroundKind::plane_wave_minus,
                  .profile = std::move(profile)});
  return bg;
}

ScalarBackground make_special_conformal(Profile f, std::optional<SwitchOn> switch_on) {
  ScalarBackground::Piece field{
      [=](const FourVector& x) {
        const auto lf = to_lightfront(x);
        const double u = lf.xminus - (lf.x1 * lf.x1 + lf.x2 * lf.x2) / lf.xplus;
        return f(u) / (lf.xplus * lf.xplus);
      },
      [=](const FourVector& x) {
        const auto lf = to_lightfront(x);
        const double xp = lf.xplus;
        const double perp2 = lf.x1 * lf.x1 + lf.x2 * lf.x2;
        const double u = lf.xminus - perp2 / xp;
        const double fu = f(u);
        const double df = f.derivative(u);
        const double xp2 = xp * xp;
        const double dplus = -2.0 * fu / (xp2 * xp) + df * perp2 / (xp2 * xp2);
        const double dminus = df / xp2;
        const double d1 = -2.0 * lf.x1 * df / (xp2 * xp);
        const double d2 = -2.0 * lf.x2 * df / (xp2 * xp);
        return lf_gradient(dplus, dminus, d1, d2);
      }};

  BackgroundFamily fam{.kind = BackgroundKind::special_conformal, .profile = f};
  if (!switch_on) {
    ScalarBackground bg("special_conformal", std::move(field), [](const FourVector& x) {
      return x.t() + x.z() == 0.0 ? std::string("singular surface x+ = 0") : std::string();
    });
    bg.with_family(fam);
    return bg;
  }
  const double L = switch_on->L;
  if (!(L > 0.0)) throw std::invalid_argument("switched conformal background needs L > 0");
  fam.switched = true;
  fam.switch_at = L;
  fam.m0sq = switch_on->m0sq;
  ScalarBackground bg("special_conformal(switched)", constant_piece(switch_on->m0sq), std::move(field),
                      [L](const FourVector& x) { return x.t() + x.z() - L; });
  bg.with_family(fam);
  return bg;
}

Profile gaussian_conformal_profile(double m0, double L, double k) {
  return Profile::gaussian(m0 * m0 * L * L, k);
}

ScalarBackground make_dilation(double c2) {
  if (!(c2 > 0.0)) throw std::invalid_argument("dilation background needs c^2 > 0");
  ScalarBackground::Piece piece{
      [=](const FourVector& x) { return c2 / minkowski_dot(x, x); },
      [=](const FourVector& x) {
        const double xx = minkowski_dot(x, x);
        return (-2.0 * c2 / (xx * xx)) * flip_index(x);
      }};
  ScalarBackground bg("dilation", std::move(piece), [](const FourVector& x) {
    return minkowski_dot(x, x) == 0.0 ? std::string("light-cone singularity x.x = 0") : std::string();
  });
  bg.with_family({.kind = BackgroundKind::dilation, .c2 = c2, .profile = {}});
  return bg;
}

ScalarBackground make_custom(std::string label, ScalarBackground::ScalarFn m2, ScalarBackground::GradFn grad,
                             double scale, ScalarBackground::DomainFn domain) {
  if (!m2) throw std::invalid_argument("custom background needs an m^2 function");
  if (!grad) {
    const double h = 1e-5 * scale;
    grad = [m2, h](const FourVector& x) {
      FourVector g;
      for (std::size_t mu = 0; mu < 4; ++mu) {
        auto at = [&](double s) {
          FourVector y = x;
          y[mu] += s * h;
          return m2(y);
        };
        g[mu] = (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h);
      }
      return g;
    };
  }
  return ScalarBackground(std::move(label), {std::move(m2), std::move(grad)}, std::move(domain));
}

}  // namespace scalardyn
