#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "lfr/fractal_series.hpp"
#include "lfr/mittag_leffler.hpp"

namespace lfr {

enum class Branch { DistinctReal, ComplexPair, DoubleRoot };

std::string_view branch_name(Branch b);

// Proper rational function in z = s^zeta with a monic quadratic
// denominator: (num[1] z + num[0]) / (z^2 + den[1] z + den[0]).
struct RationalZ {
    std::array<Complex, 2> num;
    std::array<Complex, 3> den;  // den[2] == 1
};

// Transform of the constant-coefficient initial value problem
//   D^{2 zeta} psi - w1 D^zeta psi + q psi = 0,
//   D^zeta psi(0) = alpha, psi(0) = beta.
// The derivative rules L{D psi} = z Psi - beta and
// L{D^2 psi} = z^2 Psi - z beta - alpha give
//   Psi(z) = (beta z + alpha - w1 beta) / (z^2 - w1 z + q).
// Pure z-domain algebra; zeta does not enter.
RationalZ lflt_ivp(double w1, double q, double alpha, double beta);

struct PfTerm {
    Complex residue;
    Complex pole;
    int multiplicity;  // 1 or 2
};

struct PartialFractions {
    std::vector<PfTerm> terms;
    double sigma;  // w1^2 - 4q
    Branch branch;
};

// Pole/residue decomposition of a RationalZ. |sigma| <= tol selects the
// double-root branch; complex poles come in conjugate pairs with conjugate
// residues for real input.
PartialFractions decompose(const RationalZ& r, double tol);

// Expand the terms back over the common denominator (reconstruction
// check used by the property tests).
RationalZ pf_reconstruct(const PartialFractions& pf);

struct ExpTerm {
    Complex coeff;
    Complex rate;
    int order;  // 0: coeff * E_zeta(rate mu^zeta); 1: coeff * d/drate of it
};

// Finite combination of Mittag-Leffler terms, the time-domain closed form.
// With real_valued set, terms close under conjugation and evaluations are
// real up to rounding residue.
struct ExpSum {
    FractalOrder zeta;
    std::vector<ExpTerm> terms;
    bool real_valued;
};

// Inverse transform, table pair A/(z - p) -> A E_zeta(p mu^zeta) and
// A/(z - p)^2 -> A dE_zeta/dp. The pole itself is the rate.
ExpSum invert(const PartialFractions& pf, FractalOrder zeta);

// Term-wise local fractional derivative: coefficient shift in the
// expansion, so an order-1 term contributes E_zeta + rate * dE_zeta/drate.
ExpSum expsum_lfd(const ExpSum& e);

// Coefficients c_k = sum over terms of A rate^k (order 0) and
// A k rate^(k-1) (order 1).
FractalSeries expsum_to_series(const ExpSum& e, int order);

// Pointwise evaluation; requires the real_valued flag and checks that the
// imaginary residue is below 1e-12 of the magnitude.
double expsum_eval(const ExpSum& e, double mu);

// Evaluation without the realness requirement.
Complex expsum_eval_complex(const ExpSum& e, double mu);

}  // namespace lfr
