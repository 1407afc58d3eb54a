#include "scalardyn/bessel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "scalardyn/errors.hpp"

namespace scalardyn::bessel {

namespace {

constexpr double kPi = std::numbers::pi;

void check_argument(double z, const char* what) {
  if (!(z > 0.0)) throw DomainError(std::string(what) + ": argument must be positive");
  if (z > kMaxArgument) {
    std::ostringstream os;
    os << what << ": argument " << z << " exceeds " << kMaxArgument;
    throw OverflowError(os.str());
  }
}

}  // namespace

cplx gamma(cplx z) {
  static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  z -= 1.0;
  cplx x = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) x += c[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx bessel_i(cplx a, double z) {
  check_argument(z, "bessel_i");
  if (a.real() < 0.0) throw std::invalid_argument("bessel_i: Re(order) must be >= 0");
  const double h = 0.5 * z;
  const double h2 = h * h;
  cplx term = std::exp(a * std::log(h)) / gamma(a + 1.0);
  cplx sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= h2 / (static_cast<double>(k) * (static_cast<double>(k) + a));
    sum += term;
    if (k > h && std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

cplx bessel_k(cplx a, double z) {
  check_argument(z, "bessel_k");
  const double ar = std::abs(a.real());
  // nodes resolve the exp(-z t^2/2) core for large z
  const double step = std::min(0.1, 0.4 / std::sqrt(z));
  // integrand below exp(-45) relative to its value at t = 0 beyond T
  double T = 1.0;
  while (z * (std::cosh(T) - 1.0) - ar * T < 45.0) T += 0.5;
  const int n = static_cast<int>(std::ceil(T / step));
  cplx sum = 0.5 * std::exp(-z);
  for (int i = 1; i <= n; ++i) {
    const double t = i * step;
    sum += std::exp(-z * std::cosh(t)) * std::cosh(a * t);
  }
  return step * sum;
}

cplx bessel_j_neg_imag(cplx a, double z) {
  const cplx i(0.0, 1.0);
  return std::exp(-i * kPi * a / 2.0) * bessel_i(a, z);
}

cplx bessel_y_neg_imag(cplx a, double z) {
  const cplx i(0.0, 1.0);
  return -i * std::exp(-i * kPi * a / 2.0) * bessel_i(a, z) - (2.0 / kPi) * std::exp(i * kPi * a / 2.0) * bessel_k(a, z);
}

}  // namespace scalardyn::bessel
