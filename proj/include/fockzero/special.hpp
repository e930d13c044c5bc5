#pragma once

// Special functions used by the product evaluators. Every function here
// returns a complex logarithm: real part log|f|, imaginary part an argument
// (not necessarily wrapped). A zero is reported as real part -inf.

#include "fockzero/numeric.hpp"

namespace fockzero::special
{

/// log sin(w), accurate when |Im w| is large (no overflow).
cplx log_sin(cplx w);

/// log(sin(x) / x), regular at x = 0.
cplx log_sinc(cplx x);

/// log Gamma(w) (Lanczos, reflection for Re w < 1/2).
cplx log_gamma(cplx w);

/// Hurwitz zeta: sum_{m>=0} (m + a)^{-s}, s > 1, a > 0.
double hurwitz_zeta(double s, double a);

/// sum_{m>=1} [(m + nu)^{-k} - m^{-k}], k >= 1, nu >= 0.
double shifted_row_sum(int k, double nu);

/// sum_{m>=m0} [(m + nu)^{-k} - m^{-k}]
double shifted_row_tail(int k, double nu, long m0);

/// Eisenstein sum over the Gaussian integers: sum' gamma^{-k}, k >= 3.
/// Zero unless k is a multiple of 4.
double gaussian_eisenstein(int k);
long double gaussian_eisenstein_ld(int k);

/// log sigma(z) for the Weierstrass sigma function of Z + iZ, evaluated by
/// reduction to the central cell with the quasi-periodicity relations.
cplx log_sigma(cplx z);

/// log(sigma(z) / sin(pi z)); finite at the real integers.
cplx log_sigma_over_sin(cplx z);

} // namespace fockzero::special
