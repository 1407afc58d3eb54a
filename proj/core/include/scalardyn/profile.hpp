#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace scalardyn {

/// A real function of one variable together with its derivative and its
/// antiderivative from 0. Used for E(t), plane-wave profiles m^2(x+) and the
/// conformal profile f(u).
///
/// Missing pieces are filled in automatically: the derivative by a 5-point
/// O(h^4) central difference with h = 1e-3 * max(1, |s|), the antiderivative
/// by adaptive Gauss-Kronrod quadrature (relative tolerance 1e-13).
class Profile {
 public:
  using Fn = std::function<double(double)>;

  Profile() = default;
  Profile(std::string name, Fn value, Fn derivative = {}, Fn antiderivative = {});

  static Profile constant(double c);
  /// offset + slope * s
  static Profile linear(double offset, double slope);
  /// base * (1 + amplitude * sin^2(s))
  static Profile sin2(double base, double amplitude);
  /// amplitude * exp(-k^2 s^2)
  static Profile gaussian(double amplitude, double k);
  /// Natural cubic spline through the samples. Abscissae must be strictly
  /// increasing; values outside the table extend the end cubics.
  static Profile tabulated(std::vector<double> xs, std::vector<double> ys);

  double operator()(double s) const { return value_(s); }
  double value(double s) const { return value_(s); }
  double derivative(double s) const;
  /// \int_0^s value
  double antiderivative(double s) const;
  /// \int_a^b value
  double integral(double a, double b) const;

  bool has_analytic_derivative() const { return static_cast<bool>(derivative_); }
  bool has_analytic_antiderivative() const { return static_cast<bool>(antiderivative_); }
  bool empty() const { return !value_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn value_;
  Fn derivative_;
  Fn antiderivative_;
};

}  // namespace scalardyn
