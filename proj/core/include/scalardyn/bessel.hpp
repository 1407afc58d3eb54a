#pragma once

#include <complex>

namespace scalardyn::bessel {

using cplx = std::complex<double>;

/// Gamma function for complex argument (Lanczos, g = 7).
cplx gamma(cplx z);

/// Modified Bessel function of the first kind I_a(z), z > 0, Re a >= 0, by
/// its power series.
cplx bessel_i(cplx a, double z);

/// Modified Bessel function of the second kind K_a(z), z > 0, from
/// \int_0^inf exp(-z cosh t) cosh(a t) dt by the trapezoidal rule.
cplx bessel_k(cplx a, double z);

/// J_a(-i z) = exp(-i pi a / 2) I_a(z), z > 0.
cplx bessel_j_neg_imag(cplx a, double z);

/// Y_a(-i z) = -i exp(-i pi a / 2) I_a(z) - (2/pi) exp(i pi a / 2) K_a(z), z > 0.
cplx bessel_y_neg_imag(cplx a, double z);

/// Largest argument accepted before OverflowError.
inline constexpr double kMaxArgument = 700.0;

}  // namespace scalardyn::bessel
