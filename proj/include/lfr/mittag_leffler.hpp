#pragma once

#include <complex>

#include "lfr/gamma.hpp"

namespace lfr {

using Complex = std::complex<double>;

// E_zeta(lambda mu^zeta) = sum_{k>=0} lambda^k mu^(k zeta) / Gamma(1 + k zeta).
// Adaptive truncation: stops once two consecutive terms fall below
// tol * |partial sum|, capped at 512 terms. Alternating sums with
// |lambda| mu^zeta beyond 30 are rejected with PrecisionLossError instead
// of returning a fully cancelled value.
Complex ml_eval(FractalOrder zeta, Complex lambda, double mu, double tol = 1e-14);

// Term-wise lambda-derivative of the series above:
//   sum_{k>=1} k lambda^(k-1) mu^(k zeta) / Gamma(1 + k zeta).
// Same truncation policy and cancellation guard.
Complex ml_dlambda_eval(FractalOrder zeta, Complex lambda, double mu, double tol = 1e-14);

}  // namespace lfr
