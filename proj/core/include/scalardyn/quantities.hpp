#pragma once

#include <string>
#include <vector>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/conformal.hpp"
#include "scalardyn/phase_space.hpp"

namespace scalardyn {

// Hard-coded first integrals of the example systems, each with a closed-form
// gradient in the canonical order of its form.

/// Form Hamiltonian as a phase-space function: H (instant), p+ (front),
/// K = H - p+ (extended).
ConservedQuantity hamiltonian_quantity(Form form, const ScalarBackground& bg);
/// p^2/(2m) + m in the instant-form phase space.
ConservedQuantity nonrel_hamiltonian_quantity(const ScalarBackground& bg);

/// Instant form: p_j (j = 1..3).
ConservedQuantity instant_momentum(int j);
/// Instant form: L_x = y p3 - z p2, L_y = z p1 - x p3, L_z = x p2 - y p1.
ConservedQuantity angular_momentum(int axis);

/// Instant form, m^2 = m0^2 + B z:
/// Q1 = p1, Q2 = p2, Q3 = 2 p1 p3 + B x, Q4 = 2 p2 p3 + B y, Q5 = H.
std::vector<ConservedQuantity> spacelike_quantities(const ScalarBackground& bg);
/// Q3 Q2 - Q4 Q1 (= B L_z).
ConservedQuantity spacelike_qtilde3(double B);

/// Instant form, m^2 = m0^2 + E(t): p1, p2, p3, Lx, Ly, Lz.
std::vector<ConservedQuantity> timelike_quantities();

/// Extended front form, m^2 = m^2(x+):
/// Q1 = p1, Q2 = p2, Q3 = p-, Q4 = 2 x p- + x+ p1, Q5 = 2 y p- + x+ p2,
/// Q6 = 4 p+ p- - p_perp^2 - m^2(x+), Q7 = 4 p-^2 x- - p_perp^2 x+ - \int_0^{x+} m^2.
std::vector<ConservedQuantity> planewave_quantities_set(const ScalarBackground& bg);

/// Extended front form, m^2 = f(u)/x+^2:
/// Q1 = T1, Q2 = T2, Q3 = xi_c.p (c^- = 1), Q4 = x p2 - y p1, Q5 = K.
std::vector<ConservedQuantity> conformal_quantities(const ScalarBackground& bg);

/// The ten Poincare quantities xi.p of `poincare_generators()` for any form.
std::vector<ConservedQuantity> poincare_quantities(const ScalarBackground& bg);

/// Resolves a comma-free name used by configuration files: a set name
/// ("spacelike", "planewave", "conformal", "timelike", "poincare") or a single
/// quantity ("H", "Hnr", "p1", "p2", "p3", "Lx", "Ly", "Lz", "Qtilde3", or a
/// Poincare label such as "T1"). Throws std::invalid_argument for unknown names.
std::vector<ConservedQuantity> quantities_by_name(const std::string& name, Form form,
                                                  const ScalarBackground& bg);

}  // namespace scalardyn
