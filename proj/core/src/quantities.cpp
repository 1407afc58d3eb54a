#include "scalardyn/quantities.hpp"

#include <cmath>
#include <stdexcept>

namespace scalardyn {

namespace {

using Grad = std::vector<double>;

void require_form(const PhaseSpaceState& s, Form f, const char* who) {
  if (s.form != f) throw std::invalid_argument(std::string(who) + ": wrong phase-space form");
}

double minus_derivative(const FourVector& g) { return 0.5 * (g[0] - g[3]); }
double plus_derivative(const FourVector& g) { return 0.5 * (g[0] + g[3]); }

}  // namespace

ConservedQuantity hamiltonian_quantity(Form form, const ScalarBackground& bg) {
  ConservedQuantity q;
  switch (form) {
    case Form::instant:
      q.label = "H";
      q.value = [bg](const PhaseSpaceState& s) { return hamiltonian_instant(s, bg); };
      q.gradient = [bg](const PhaseSpaceState& s) {
        const auto ms = bg.sample(s.position());
        const double H = std::sqrt(s.p[0] * s.p[0] + s.p[1] * s.p[1] + s.p[2] * s.p[2] + ms.m2);
        return Grad{ms.grad[1] / (2 * H), ms.grad[2] / (2 * H), ms.grad[3] / (2 * H),
                    s.p[0] / H,           s.p[1] / H,           s.p[2] / H};
      };
      break;
    case Form::front:
      q.label = "H";
      q.value = [bg](const PhaseSpaceState& s) { return hamiltonian_front(s, bg); };
      q.gradient = [bg](const PhaseSpaceState& s) {
        const auto ms = bg.sample(s.position());
        const double pm = s.p[0];
        const double H = (s.p[1] * s.p[1] + s.p[2] * s.p[2] + ms.m2) / (4 * pm);
        return Grad{minus_derivative(ms.grad) / (4 * pm), ms.grad[1] / (4 * pm), ms.grad[2] / (4 * pm),
                    -H / pm, s.p[1] / (2 * pm), s.p[2] / (2 * pm)};
      };
      break;
    case Form::extended_front:
      q.label = "K";
      q.value = [bg](const PhaseSpaceState& s) { return hamiltonian_extended(s, bg); };
      q.gradient = [bg](const PhaseSpaceState& s) {
        const auto ms = bg.sample(s.position());
        const double pm = s.p[1];
        const double H = (s.p[2] * s.p[2] + s.p[3] * s.p[3] + ms.m2) / (4 * pm);
        return Grad{plus_derivative(ms.grad) / (4 * pm), minus_derivative(ms.grad) / (4 * pm),
                    ms.grad[1] / (4 * pm), ms.grad[2] / (4 * pm), -1.0, -H / pm,
                    s.p[2] / (2 * pm), s.p[3] / (2 * pm)};
      };
      break;
    case Form::covariant:
      throw std::invalid_argument("the covariant form has no phase-space Hamiltonian here");
  }
  return q;
}

ConservedQuantity nonrel_hamiltonian_quantity(const ScalarBackground& bg) {
  ConservedQuantity q;
  q.label = "Hnr";
  q.value = [bg](const PhaseSpaceState& s) { return hamiltonian_nonrel(s, bg); };
  q.gradient = [bg](const PhaseSpaceState& s) {
    const auto ms = bg.sample(s.position());
    const double m = std::sqrt(ms.m2);
    const double pp = s.p[0] * s.p[0] + s.p[1] * s.p[1] + s.p[2] * s.p[2];
    const double dHdm = 1.0 - pp / (2 * m * m);
    Grad g(6);
    for (int j = 0; j < 3; ++j) {
      g[j] = dHdm * ms.grad[j + 1] / (2 * m);
      g[3 + j] = s.p[j] / m;
    }
    return g;
  };
  return q;
}

ConservedQuantity instant_momentum(int j) {
  if (j < 1 || j > 3) throw std::invalid_argument("momentum index must be 1..3");
  ConservedQuantity q;
  q.label = "p" + std::to_string(j);
  q.value = [j](const PhaseSpaceState& s) { return s.p[j - 1]; };
  q.gradient = [j](const PhaseSpaceState&) {
    Grad g(6, 0.0);
    g[2 + j] = 1.0;
    return g;
  };
  return q;
}

ConservedQuantity angular_momentum(int axis) {
  // L_a = x_b p_c - x_c p_b with (a, b, c) cyclic.
  if (axis < 1 || axis > 3) throw std::invalid_argument("axis must be 1..3");
  const int b = axis % 3;
  const int c = (axis + 1) % 3;
  ConservedQuantity q;
  q.label = std::string("L") + "xyz"[axis - 1];
  q.value = [b, c](const PhaseSpaceState& s) { return s.q[b] * s.p[c] - s.q[c] * s.p[b]; };
  q.gradient = [b, c](const PhaseSpaceState& s) {
    Grad g(6, 0.0);
    g[b] = s.p[c];
    g[c] = -s.p[b];
    g[3 + c] = s.q[b];
    g[3 + b] = -s.q[c];
    return g;
  };
  return q;
}

std::vector<ConservedQuantity> spacelike_quantities(const ScalarBackground& bg) {
  const double B = bg.family().B;
  ConservedQuantity q1 = instant_momentum(1);
  q1.label = "Q1";
  ConservedQuantity q2 = instant_momentum(2);
  q2.label = "Q2";
  ConservedQuantity q3{"Q3",
                       [B](const PhaseSpaceState& s) {
                         require_form(s, Form::instant, "Q3");
                         return 2 * s.p[0] * s.p[2] + B * s.q[0];
                       },
                       [B](const PhaseSpaceState& s) {
                         return Grad{B, 0, 0, 2 * s.p[2], 0, 2 * s.p[0]};
                       },
                       std::nullopt};
  ConservedQuantity q4{"Q4",
                       [B](const PhaseSpaceState& s) {
                         require_form(s, Form::instant, "Q4");
                         return 2 * s.p[1] * s.p[2] + B * s.q[1];
                       },
                       [B](const PhaseSpaceState& s) {
                         return Grad{0, B, 0, 0, 2 * s.p[2], 2 * s.p[1]};
                       },
                       std::nullopt};
  ConservedQuantity q5 = hamiltonian_quantity(Form::instant, bg);
  q5.label = "Q5";
  return {q1, q2, q3, q4, q5};
}

ConservedQuantity spacelike_qtilde3(double B) {
  return {"Qtilde3",
          [B](const PhaseSpaceState& s) {
            const double Q1 = s.p[0], Q2 = s.p[1];
            const double Q3 = 2 * s.p[0] * s.p[2] + B * s.q[0];
            const double Q4 = 2 * s.p[1] * s.p[2] + B * s.q[1];
            return Q3 * Q2 - Q4 * Q1;
          },
          [B](const PhaseSpaceState& s) {
            // Q3 Q2 - Q4 Q1 = B (x p2 - y p1) identically.
            return Grad{B * s.p[1], -B * s.p[0], 0, -B * s.q[1], B * s.q[0], 0};
          },
          std::nullopt};
}

std::vector<ConservedQuantity> timelike_quantities() {
  return {instant_momentum(1), instant_momentum(2), instant_momentum(3),
          angular_momentum(1), angular_momentum(2), angular_momentum(3)};
}

std::vector<ConservedQuantity> planewave_quantities_set(const ScalarBackground& bg) {
  if (bg.family().kind != BackgroundKind::plane_wave_plus)
    throw std::invalid_argument("plane-wave quantities need an m^2(x+) background");
  const Profile m2 = bg.family().profile;
  auto ext = [](const PhaseSpaceState& s) { require_form(s, Form::extended_front, "plane-wave quantity"); };
  auto mom = [ext](std::string label, int idx) {
    return ConservedQuantity{label,
                             [ext, idx](const PhaseSpaceState& s) {
                               ext(s);
                               return s.p[idx];
                             },
                             [idx](const PhaseSpaceState&) {
                               Grad g(8, 0.0);
                               g[4 + idx] = 1.0;
                               return g;
                             },
                             std::nullopt};
  };
  // Null rotations: 2 x_perp p- + x+ p_perp.
  auto null_rot = [ext](std::string label, int perp) {
    const int qi = 1 + perp;  // q index of x_perp
    const int pi = 1 + perp;  // p index of p_perp
    return ConservedQuantity{label,
                             [ext, qi, pi](const PhaseSpaceState& s) {
                               ext(s);
                               return 2 * s.q[qi] * s.p[1] + s.q[0] * s.p[pi];
                             },
                             [qi, pi](const PhaseSpaceState& s) {
                               Grad g(8, 0.0);
                               g[0] = s.p[pi];
                               g[qi] = 2 * s.p[1];
                               g[4 + 1] = 2 * s.q[qi];
                               g[4 + pi] = s.q[0];
                               return g;
                             },
                             std::nullopt};
  };
  ConservedQuantity q6{"Q6",
                       [ext, m2](const PhaseSpaceState& s) {
                         ext(s);
                         return 4 * s.p[0] * s.p[1] - s.p[2] * s.p[2] - s.p[3] * s.p[3] - m2(s.q[0]);
                       },
                       [m2](const PhaseSpaceState& s) {
                         return Grad{-m2.derivative(s.q[0]), 0, 0, 0, 4 * s.p[1], 4 * s.p[0],
                                     -2 * s.p[2], -2 * s.p[3]};
                       },
                       std::nullopt};
  ConservedQuantity q7{"Q7",
                       [ext, m2](const PhaseSpaceState& s) {
                         ext(s);
                         const double pp = s.p[2] * s.p[2] + s.p[3] * s.p[3];
                         return 4 * s.p[1] * s.p[1] * s.q[1] - pp * s.q[0] - m2.antiderivative(s.q[0]);
                       },
                       [m2](const PhaseSpaceState& s) {
                         const double pp = s.p[2] * s.p[2] + s.p[3] * s.p[3];
                         return Grad{-pp - m2(s.q[0]), 4 * s.p[1] * s.p[1], 0, 0, 0, 8 * s.p[1] * s.q[1],
                                     -2 * s.p[2] * s.q[0], -2 * s.p[3] * s.q[0]};
                       },
                       std::nullopt};
  return {mom("Q1", 2), mom("Q2", 3), mom("Q3", 1), null_rot("Q4", 1), null_rot("Q5", 2), q6, q7};
}

std::vector<ConservedQuantity> conformal_quantities(const ScalarBackground& bg) {
  auto ext = [](const PhaseSpaceState& s) { require_form(s, Form::extended_front, "conformal quantity"); };
  auto null_rot = [ext](std::string label, int perp) {
    const int qi = 1 + perp;
    const int pi = 1 + perp;
    return ConservedQuantity{label,
                             [ext, qi, pi](const PhaseSpaceState& s) {
                               ext(s);
                               return 2 * s.q[qi] * s.p[1] + s.q[0] * s.p[pi];
                             },
                             [qi, pi](const PhaseSpaceState& s) {
                               Grad g(8, 0.0);
                               g[0] = s.p[pi];
                               g[qi] = 2 * s.p[1];
                               g[4 + 1] = 2 * s.q[qi];
                               g[4 + pi] = s.q[0];
                               return g;
                             },
                             ConformalGenerator::null_rotation_t(perp)};
  };
  // xi_c.p with c^- = 1: -x+^2 p+ - x_perp^2 p- - x+ x_perp.p_perp
  ConservedQuantity q3{"Q3",
                       [ext](const PhaseSpaceState& s) {
                         ext(s);
                         const double xp = s.q[0];
                         const double perp2 = s.q[2] * s.q[2] + s.q[3] * s.q[3];
                         const double xdotp = s.q[2] * s.p[2] + s.q[3] * s.p[3];
                         return -xp * xp * s.p[0] - perp2 * s.p[1] - xp * xdotp;
                       },
                       [](const PhaseSpaceState& s) {
                         const double xp = s.q[0];
                         const double perp2 = s.q[2] * s.q[2] + s.q[3] * s.q[3];
                         const double xdotp = s.q[2] * s.p[2] + s.q[3] * s.p[3];
                         return Grad{-2 * xp * s.p[0] - xdotp,
                                     0.0,
                                     -2 * s.q[2] * s.p[1] - xp * s.p[2],
                                     -2 * s.q[3] * s.p[1] - xp * s.p[3],
                                     -xp * xp,
                                     -perp2,
                                     -xp * s.q[2],
                                     -xp * s.q[3]};
                       },
                       ConformalGenerator::special_conformal_minus()};
  ConservedQuantity q4{"Q4",
                       [ext](const PhaseSpaceState& s) {
                         ext(s);
                         return s.q[2] * s.p[3] - s.q[3] * s.p[2];
                       },
                       [](const PhaseSpaceState& s) {
                         return Grad{0, 0, s.p[3], -s.p[2], 0, 0, -s.q[3], s.q[2]};
                       },
                       ConformalGenerator::rotation_z()};
  ConservedQuantity q5 = hamiltonian_quantity(Form::extended_front, bg);
  q5.label = "Q5";
  return {null_rot("Q1", 1), null_rot("Q2", 2), q3, q4, q5};
}

std::vector<ConservedQuantity> poincare_quantities(const ScalarBackground& bg) {
  std::vector<ConservedQuantity> out;
  for (const auto& [label, g] : poincare_generators()) out.push_back(quantity_from_generator(label, g, bg));
  return out;
}

std::vector<ConservedQuantity> quantities_by_name(const std::string& name, Form form,
                                                  const ScalarBackground& bg) {
  if (name == "spacelike") return spacelike_quantities(bg);
  if (name == "planewave") return planewave_quantities_set(bg);
  if (name == "conformal") return conformal_quantities(bg);
  if (name == "timelike") return timelike_quantities();
  if (name == "poincare") return poincare_quantities(bg);
  if (name == "H") return {hamiltonian_quantity(form, bg)};
  if (name == "Hnr") return {nonrel_hamiltonian_quantity(bg)};
  if (name == "p1" || name == "p2" || name == "p3") {
    if (form != Form::instant) throw std::invalid_argument("'" + name + "' is an instant-form quantity");
    return {instant_momentum(name[1] - '0')};
  }
  if (name == "Lx" || name == "Ly" || name == "Lz") {
    if (form == Form::instant) return {angular_momentum(name == "Lx" ? 1 : name == "Ly" ? 2 : 3)};
  }
  if (name == "Qtilde3") return {spacelike_qtilde3(bg.family().B)};
  for (const auto& [label, g] : poincare_generators())
    if (label == name) return {quantity_from_generator(label, g, bg)};
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

}  // namespace scalardyn
