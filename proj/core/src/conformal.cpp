#include "scalardyn/conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace scalardyn {

namespace {

void require_antisymmetric(const Matrix4& w) {
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      if (w[m][n] != -w[n][m]) throw std::invalid_argument("omega must be antisymmetric");
}

// F^mu = xi1.d xi2^mu - xi2.d xi1^mu
FourVector commutator_field(const ConformalGenerator& g1, const ConformalGenerator& g2, const FourVector& x) {
  const FourVector xi1 = killing_vector(g1, x);
  const FourVector xi2 = killing_vector(g2, x);
  const Matrix4 j1 = killing_jacobian(g1, x);
  const Matrix4 j2 = killing_jacobian(g2, x);
  FourVector f;
  for (int m = 0; m < 4; ++m)
    for (int r = 0; r < 4; ++r) f[m] += xi1[r] * j2[m][r] - xi2[r] * j1[m][r];
  return f;
}

FourVector unit(int mu) {
  FourVector e;
  e[mu] = 1.0;
  return e;
}

}  // namespace

ConformalGenerator::ConformalGenerator(const FourVector& a_lower, const Matrix4& omega_lower, double lambda,
                                       const FourVector& c_lower)
    : a_(a_lower), omega_(omega_lower), lambda_(lambda), c_(c_lower) {
  require_antisymmetric(omega_);
}

bool ConformalGenerator::is_zero(double tol) const {
  auto small = [tol](double v) { return std::abs(v) <= tol; };
  if (!small(lambda_)) return false;
  for (int m = 0; m < 4; ++m) {
    if (!small(a_[m]) || !small(c_[m])) return false;
    for (int n = 0; n < 4; ++n)
      if (!small(omega_[m][n])) return false;
  }
  return true;
}

bool ConformalGenerator::is_poincare() const {
  return lambda_ == 0.0 && c_ == FourVector{};
}

ConformalGenerator operator+(const ConformalGenerator& a, const ConformalGenerator& b) {
  Matrix4 w{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) w[m][n] = a.omega_[m][n] + b.omega_[m][n];
  return {a.a_ + b.a_, w, a.lambda_ + b.lambda_, a.c_ + b.c_};
}

ConformalGenerator operator*(double s, const ConformalGenerator& g) {
  Matrix4 w{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) w[m][n] = s * g.omega_[m][n];
  return {s * g.a_, w, s * g.lambda_, s * g.c_};
}

ConformalGenerator ConformalGenerator::translation(const FourVector& a_upper) {
  return {flip_index(a_upper), Matrix4{}, 0.0, FourVector{}};
}

ConformalGenerator ConformalGenerator::translation_plus() {
  // xi^+ = 1, xi^- = 0  =>  xi^0 = xi^3 = 1/2
  return translation({0.5, 0.0, 0.0, 0.5});
}

ConformalGenerator ConformalGenerator::translation_minus() {
  return translation({0.5, 0.0, 0.0, -0.5});
}

ConformalGenerator ConformalGenerator::translation_perp(int perp) {
  if (perp != 1 && perp != 2) throw std::invalid_argument("perp index must be 1 or 2");
  FourVector a;
  a[perp] = 1.0;
  return translation(a);
}

ConformalGenerator ConformalGenerator::from_linear_field(const Matrix4& m_upper) {
  Matrix4 w{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) w[m][n] = kMetric[m] * m_upper[m][n];
  return {FourVector{}, w, 0.0, FourVector{}};
}

ConformalGenerator ConformalGenerator::rotation_z() {
  Matrix4 m{};  // xi = (0, -y, x, 0)
  m[1][2] = -1.0;
  m[2][1] = 1.0;
  return from_linear_field(m);
}

ConformalGenerator ConformalGenerator::boost_z() {
  Matrix4 m{};  // xi = (z, 0, 0, t)
  m[0][3] = 1.0;
  m[3][0] = 1.0;
  return from_linear_field(m);
}

ConformalGenerator ConformalGenerator::null_rotation_t(int perp) {
  if (perp != 1 && perp != 2) throw std::invalid_argument("perp index must be 1 or 2");
  // xi^- = 2 x_perp, xi^perp = x+, xi^+ = 0  =>  xi = (x_perp, .., t + z, .., -x_perp)
  Matrix4 m{};
  m[0][perp] = 1.0;
  m[3][perp] = -1.0;
  m[perp][0] = 1.0;
  m[perp][3] = 1.0;
  return from_linear_field(m);
}

ConformalGenerator ConformalGenerator::null_rotation_u(int perp) {
  if (perp != 1 && perp != 2) throw std::invalid_argument("perp index must be 1 or 2");
  // xi^+ = 2 x_perp, xi^perp = x-, xi^- = 0  =>  xi = (x_perp, .., t - z, .., x_perp)
  Matrix4 m{};
  m[0][perp] = 1.0;
  m[3][perp] = 1.0;
  m[perp][0] = 1.0;
  m[perp][3] = -1.0;
  return from_linear_field(m);
}

ConformalGenerator ConformalGenerator::dilation(double lambda) {
  return {FourVector{}, Matrix4{}, lambda, FourVector{}};
}

ConformalGenerator ConformalGenerator::special_conformal(const FourVector& c_upper) {
  return {FourVector{}, Matrix4{}, 0.0, flip_index(c_upper)};
}

ConformalGenerator ConformalGenerator::special_conformal_minus() {
  return special_conformal({0.5, 0.0, 0.0, -0.5});
}

std::vector<NamedGenerator> poincare_generators() {
  using G = ConformalGenerator;
  return {
      {"p+", G::translation_plus()},     {"p-", G::translation_minus()},
      {"p1", G::translation_perp(1)},    {"p2", G::translation_perp(2)},
      {"Lz", G::rotation_z()},           {"Kz", G::boost_z()},
      {"T1", G::null_rotation_t(1)},     {"T2", G::null_rotation_t(2)},
      {"U1", G::null_rotation_u(1)},     {"U2", G::null_rotation_u(2)},
  };
}

FourVector killing_vector(const ConformalGenerator& g, const FourVector& x) {
  const double xx = minkowski_dot(x, x);
  const double cx = contract(g.c(), x);
  FourVector xi;
  for (int m = 0; m < 4; ++m) {
    double lower = g.a()[m];
    for (int n = 0; n < 4; ++n) lower += g.omega()[m][n] * x[n];
    xi[m] = kMetric[m] * lower + g.lambda() * x[m] + kMetric[m] * g.c()[m] * xx - 2.0 * cx * x[m];
  }
  return xi;
}

Matrix4 killing_jacobian(const ConformalGenerator& g, const FourVector& x) {
  const double cx = contract(g.c(), x);
  Matrix4 j{};
  for (int m = 0; m < 4; ++m) {
    const double c_up = kMetric[m] * g.c()[m];
    for (int n = 0; n < 4; ++n) {
      const double x_low = kMetric[n] * x[n];
      j[m][n] = kMetric[m] * g.omega()[m][n] + 2.0 * c_up * x_low - 2.0 * g.c()[n] * x[m];
    }
    j[m][m] += g.lambda() - 2.0 * cx;
  }
  return j;
}

double divergence(const ConformalGenerator& g, const FourVector& x) {
  return 4.0 * g.lambda() - 8.0 * contract(g.c(), x);
}

namespace {

Matrix4 residual_from_jacobian(const Matrix4& j) {
  double div = 0.0;
  for (int m = 0; m < 4; ++m) div += j[m][m];
  Matrix4 r{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      // d_mu xi_nu = eta_nn d_mu xi^nu = eta_nn J[nu][mu]
      r[m][n] = kMetric[n] * j[n][m] + kMetric[m] * j[m][n] - (m == n ? 0.5 * kMetric[m] * div : 0.0);
    }
  return r;
}

}  // namespace

Matrix4 conformal_killing_residual(const ConformalGenerator& g, const FourVector& x) {
  return residual_from_jacobian(killing_jacobian(g, x));
}

Matrix4 conformal_killing_residual(const VectorField& xi_upper, const FourVector& x, double h) {
  Matrix4 j{};
  for (int n = 0; n < 4; ++n) {
    FourVector xp = x, xm = x;
    xp[n] += h;
    xm[n] -= h;
    const FourVector fp = xi_upper(xp);
    const FourVector fm = xi_upper(xm);
    for (int m = 0; m < 4; ++m) j[m][n] = (fp[m] - fm[m]) / (2.0 * h);
  }
  return residual_from_jacobian(j);
}

ConformalGenerator lie_bracket(const ConformalGenerator& g1, const ConformalGenerator& g2) {
  // The commutator field is a quadratic polynomial; read its parameters off
  // symmetric/antisymmetric combinations at unit points (exact, no truncation).
  const FourVector f0 = commutator_field(g1, g2, {});
  Matrix4 lin{};
  FourVector quad_e0;
  for (int n = 0; n < 4; ++n) {
    const FourVector fp = commutator_field(g1, g2, unit(n));
    const FourVector fm = commutator_field(g1, g2, -unit(n));
    for (int m = 0; m < 4; ++m) lin[m][n] = 0.5 * (fp[m] - fm[m]);
    if (n == 0)
      for (int m = 0; m < 4; ++m) quad_e0[m] = 0.5 * (fp[m] + fm[m]) - f0[m];
  }
  // At x = e0: quadratic part = c^mu - 2 c_0 delta^mu_0.
  const FourVector c_upper{-quad_e0[0], quad_e0[1], quad_e0[2], quad_e0[3]};
  const double lambda = 0.25 * (lin[0][0] + lin[1][1] + lin[2][2] + lin[3][3]);
  Matrix4 w{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) w[m][n] = kMetric[m] * (lin[m][n] - (m == n ? lambda : 0.0));
  Matrix4 wa{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) wa[m][n] = 0.5 * (w[m][n] - w[n][m]);

  ConformalGenerator out(flip_index(f0), wa, lambda, flip_index(c_upper));

  // Closure check at a few fixed points.
  const FourVector probes[] = {{0.3, -0.7, 1.1, 0.4}, {-1.2, 0.5, 0.2, -0.9}, {0.8, 1.3, -0.6, 0.1}};
  for (const auto& x : probes) {
    const FourVector want = commutator_field(g1, g2, x);
    const FourVector got = killing_vector(out, x);
    double scale = 1.0;
    for (int m = 0; m < 4; ++m) scale = std::max(scale, std::abs(want[m]));
    for (int m = 0; m < 4; ++m)
      if (std::abs(want[m] - got[m]) > 1e-9 * scale)
        throw std::logic_error("lie_bracket: commutator field is not a conformal Killing vector");
  }
  return out;
}

double symmetry_defect(const ConformalGenerator& g, const ScalarBackground& bg, const FourVector& x) {
  const MassSample s = bg.sample(x);
  return contract(s.grad, killing_vector(g, x)) + 0.5 * s.m2 * divergence(g, x);
}

double conserved_from_generator(const ConformalGenerator& g, const PhaseSpaceState& s,
                                const ScalarBackground& bg) {
  const FourVector x = s.position();
  return contract(four_momentum(s, bg), killing_vector(g, x));
}

ConservedQuantity quantity_from_generator(std::string label, const ConformalGenerator& g,
                                          const ScalarBackground& bg) {
  ConservedQuantity q;
  q.label = std::move(label);
  q.value = [g, bg](const PhaseSpaceState& s) { return conserved_from_generator(g, s, bg); };
  q.generator = g;
  return q;
}

std::string to_json(const ConformalGenerator& g) {
  nlohmann::json j;
  j["a"] = g.a().v;
  j["omega"] = g.omega();
  j["lambda"] = g.lambda();
  j["c"] = g.c().v;
  return j.dump();
}

ConformalGenerator generator_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("generator JSON: ") + e.what());
  }
  auto vec4 = [&](const char* key) {
    FourVector v;
    if (!j.contains(key)) return v;
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.size() != 4) throw std::invalid_argument(std::string("generator JSON: '") + key + "' must have 4 entries");
    for (int i = 0; i < 4; ++i) v[i] = arr[i].get<double>();
    return v;
  };
  Matrix4 w{};
  if (j.contains("omega")) {
    const auto& arr = j.at("omega");
    if (!arr.is_array() || arr.size() != 4) throw std::invalid_argument("generator JSON: omega must be 4x4");
    for (int m = 0; m < 4; ++m) {
      if (!arr[m].is_array() || arr[m].size() != 4) throw std::invalid_argument("generator JSON: omega must be 4x4");
      for (int n = 0; n < 4; ++n) w[m][n] = arr[m][n].get<double>();
    }
  }
  const double lambda = j.value("lambda", 0.0);
  return {vec4("a"), w, lambda, vec4("c")};
}

}  // namespace scalardyn
