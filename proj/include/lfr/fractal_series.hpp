#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "lfr/gamma.hpp"
#include "lfr/mittag_leffler.hpp"

namespace lfr {

// Structure constants of pointwise multiplication in the basis
// e_k(mu) = mu^(k zeta) / Gamma(1 + k zeta):
//   B(j, k) = Gamma(1 + (j+k) zeta) / (Gamma(1 + j zeta) Gamma(1 + k zeta)),
// so that e_j e_k = B(j, k) e_{j+k}. At zeta = 1 these are the binomial
// coefficients C(j+k, j).
class GammaBinomial {
public:
    GammaBinomial(FractalOrder zeta, int max_sum);

    double operator()(int j, int k) const {
        return ladder_[j + k] / (ladder_[j] * ladder_[k]);
    }
    int max_sum() const { return ladder_.order(); }

private:
    GammaLadder ladder_;
};

// Truncated expansion sum_{k=0..N} c_k e_k(mu). Immutable; operations on
// series of different truncation orders align to the shorter one
// (zero-padding would manufacture spurious exact high-order coefficients).
class FractalSeries {
public:
    FractalSeries(FractalOrder zeta, std::vector<Complex> coeffs);

    static FractalSeries constant(FractalOrder zeta, Complex value, int order);
    static FractalSeries basis(FractalOrder zeta, int k, int order);  // e_k

    const FractalOrder& zeta() const { return zeta_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

private:
    FractalOrder zeta_;
    std::vector<Complex> coeffs_;
};

// a*f + b*g.
FractalSeries fs_add(const FractalSeries& f, const FractalSeries& g,
                     Complex a = Complex(1.0, 0.0), Complex b = Complex(1.0, 0.0));

// s*f.
FractalSeries fs_scale(const FractalSeries& f, Complex s);

// Pointwise product: (f g)_n = sum_j B(j, n-j) f_j g_{n-j}.
FractalSeries fs_mul(const FractalSeries& f, const FractalSeries& g);

// f / h by forward substitution; |h_0| < 1e-12 is treated as a pole (this
// is exactly the blow-up condition of the Riccati solution).
FractalSeries fs_div(const FractalSeries& f, const FractalSeries& h);

// Local fractional derivative, defined on the basis by index shift:
// D e_k = e_{k-1}, D e_0 = 0. The unique rule under which the
// Mittag-Leffler eigen-identity and the transform table hold together.
FractalSeries fs_lfd(const FractalSeries& f);

// Series embedding of E_zeta(lambda mu^zeta): coefficients lambda^k.
FractalSeries fs_from_ml(FractalOrder zeta, Complex lambda, int order);

struct SeriesEval {
    Complex value;
    double remainder;  // magnitude estimate of the truncated tail
};

SeriesEval fs_eval_detail(const FractalSeries& f, double mu);

// Evaluate at mu >= 0; exact c_0 at mu = 0. Throws TruncationError when
// the remainder estimate exceeds tol * max(1, |value|).
Complex fs_eval(const FractalSeries& f, double mu, double tol = 1e-9);

// Raw difference quotient Gamma(1+zeta) [f(mu0 + h) - f(mu0)] / h^zeta,
// no limit taken. Diagnostic only: at interior points mu0 > 0 it drifts to
// zero as h -> 0 for the basis functions, unlike the operational rule.
double fs_finite_diff_lfd(const std::function<double(double)>& f, double mu0,
                          double h, FractalOrder zeta);

}  // namespace lfr
