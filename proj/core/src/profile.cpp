#include "scalardyn/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace scalardyn {

namespace {

struct CubicSpline {
  std::vector<double> x, a, b, c, d;  // a + b dx + c dx^2 + d dx^3 on [x_i, x_{i+1}]

  CubicSpline(std::vector<double> xs, const std::vector<double>& ys) : x(std::move(xs)) {
    const std::size_t n = x.size();
    if (n < 2 || ys.size() != n) throw std::invalid_argument("tabulated profile needs >= 2 matching samples");
    for (std::size_t i = 1; i < n; ++i)
      if (!(x[i] > x[i - 1])) throw std::invalid_argument("tabulated abscissae must be strictly increasing");

    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

    // Natural spline: second derivatives M_0 = M_{n-1} = 0, tridiagonal solve.
    std::vector<double> m(n, 0.0);
    if (n > 2) {
      std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
      for (std::size_t i = 1; i + 1 < n; ++i) {
        diag[i - 1] = 2.0 * (h[i - 1] + h[i]);
        upper[i - 1] = h[i];
        rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
      }
      for (std::size_t i = 1; i < n - 2; ++i) {
        const double w = h[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
      for (std::size_t i = n - 2; i-- > 0;) {
        m[i + 1] = (rhs[i] - (i + 1 < n - 2 ? upper[i] * m[i + 2] : 0.0)) / diag[i];
      }
    }
    a.resize(n - 1);
    b.resize(n - 1);
    c.resize(n - 1);
    d.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      a[i] = ys[i];
      b[i] = (ys[i + 1] - ys[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
      c[i] = 0.5 * m[i];
      d[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
  }

  std::size_t segment(double s) const {
    if (s <= x.front()) return 0;
    if (s >= x.back()) return x.size() - 2;
    return static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), s) - x.begin()) - 1;
  }
  double value(double s) const {
    const auto i = segment(s);
    const double t = s - x[i];
    return a[i] + t * (b[i] + t * (c[i] + t * d[i]));
  }
  double derivative(double s) const {
    const auto i = segment(s);
    const double t = s - x[i];
    return b[i] + t * (2.0 * c[i] + 3.0 * t * d[i]);
  }
  // Integral of segment i from x_i to x_i + t.
  double partial(std::size_t i, double t) const {
    return t * (a[i] + t * (b[i] / 2.0 + t * (c[i] / 3.0 + t * d[i] / 4.0)));
  }
  double primitive(double s) const {  // from x.front()
    const auto i = segment(s);
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += partial(j, x[j + 1] - x[j]);
    return acc + partial(i, s - x[i]);
  }
};

}  // namespace

Profile::Profile(std::string name, Fn value, Fn derivative, Fn antiderivative)
    : name_(std::move(name)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      antiderivative_(std::move(antiderivative)) {
  if (!value_) throw std::invalid_argument("profile needs a value function");
}

Profile Profile::constant(double c) {
  return Profile("constant", [c](double) { return c; }, [](double) { return 0.0; },
                 [c](double s) { return c * s; });
}

Profile Profile::linear(double offset, double slope) {
  return Profile(
      "linear", [=](double s) { return offset + slope * s; }, [=](double) { return slope; },
      [=](double s) { return offset * s + 0.5 * slope * s * s; });
}

Profile Profile::sin2(double base, double amplitude) {
  return Profile(
      "sin2",
      [=](double s) {
        const double sn = std::sin(s);
        return base * (1.0 + amplitude * sn * sn);
      },
      [=](double s) { return base * amplitude * std::sin(2.0 * s); },
      [=](double s) { return base * (s + amplitude * (0.5 * s - 0.25 * std::sin(2.0 * s))); });
}

Profile Profile::gaussian(double amplitude, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("gaussian profile needs k > 0");
  return Profile(
      "gaussian", [=](double s) { return amplitude * std::exp(-k * k * s * s); },
      [=](double s) { return -2.0 * k * k * s * amplitude * std::exp(-k * k * s * s); },
      [=](double s) {
        return amplitude * std::sqrt(std::numbers::pi) / (2.0 * k) * std::erf(k * s);
      });
}

Profile Profile::tabulated(std::vector<double> xs, std::vector<double> ys) {
  auto spline = std::make_shared<const CubicSpline>(std::move(xs), ys);
  const double origin = spline->primitive(0.0);
  return Profile(
      "tabulated", [spline](double s) { return spline->value(s); },
      [spline](double s) { return spline->derivative(s); },
      [spline, origin](double s) { return spline->primitive(s) - origin; });
}

double Profile::derivative(double s) const {
  if (derivative_) return derivative_(s);
  const double h = 1e-3 * std::max(1.0, std::abs(s));
  return (value_(s - 2 * h) - 8.0 * value_(s - h) + 8.0 * value_(s + h) - value_(s + 2 * h)) /
         (12.0 * h);
}

double Profile::integral(double a, double b) const {
  if (antiderivative_) return antiderivative_(b) - antiderivative_(a);
  if (a == b) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(value_, a, b, 15, 1e-13,
                                                                       &error);
}

double Profile::antiderivative(double s) const {
  if (antiderivative_) return antiderivative_(s) - antiderivative_(0.0);
  return integral(0.0, s);
}

}  // namespace scalardyn
