#pragma once

#include <functional>
#include <span>
#include <vector>

namespace scalardyn::ode {

/// dy/dt = f(t, y), written into `dydt`.
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// One Dormand-Prince 5(4) step. Writes the fifth-order solution into `y_out`
/// and the embedded error estimate (y5 - y4) into `err`.
void dopri5_step(const Rhs& f, double t, std::span<const double> y, double h, std::span<double> y_out,
                 std::span<double> err);

/// One classical fourth-order Runge-Kutta step.
void rk4_step(const Rhs& f, double t, std::span<const double> y, double h, std::span<double> y_out);

/// max_i |err_i| / (atol + rtol * max(|y0_i|, |y1_i|)); a step is acceptable when <= 1.
double error_norm(std::span<const double> y0, std::span<const double> y1, std::span<const double> err,
                  double atol, double rtol);

}  // namespace scalardyn::ode
