#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "lfr/errors.hpp"
#include "lfr/gamma.hpp"
#include "lfr/mittag_leffler.hpp"

using lfr::Complex;
using lfr::FractalOrder;

namespace {

const double kCantor = std::log(2.0) / std::log(3.0);

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Independent reference: libm's log-gamma.
double gamma_oracle(double x) {
    return std::exp(std::lgamma(x));
}

}  // namespace

TEST_CASE("fractal order accepts (0,1] only") {
    CHECK_NOTHROW((void)FractalOrder(1.0));
    CHECK_NOTHROW((void)FractalOrder(0.1));
    CHECK_NOTHROW((void)FractalOrder(kCantor));
    CHECK_THROWS_AS(FractalOrder(0.0), std::domain_error);
    CHECK_THROWS_AS(FractalOrder(-0.5), std::domain_error);
    CHECK_THROWS_AS(FractalOrder(1.0 + 1e-12), std::domain_error);
}

TEST_CASE("gamma_real identities") {
    CHECK(rel_err(lfr::gamma_real(1.0), 1.0) < 1e-13);
    CHECK(rel_err(lfr::gamma_real(5.0), 24.0) < 1e-13);
    CHECK(rel_err(lfr::gamma_real(1.5), std::sqrt(std::numbers::pi) / 2.0) < 1e-13);
    CHECK_THROWS_AS(lfr::gamma_real(0.0), std::domain_error);
    CHECK_THROWS_AS(lfr::gamma_real(-3.2), std::domain_error);
}

TEST_CASE("gamma_real against log-gamma on (0, 50]") {
    for (double x = 0.05; x <= 50.0; x += 0.35)
        CHECK(rel_err(lfr::gamma_real(x), gamma_oracle(x)) < 1e-13);
}

TEST_CASE("gamma ladder values and invariants") {
    const lfr::GammaLadder factorials(FractalOrder(1.0), 4);
    CHECK(factorials[0] == 1.0);  // exact by construction
    CHECK(rel_err(factorials[1], 1.0) < 1e-13);
    CHECK(rel_err(factorials[2], 2.0) < 1e-13);
    CHECK(rel_err(factorials[3], 6.0) < 1e-13);
    CHECK(rel_err(factorials[4], 24.0) < 1e-13);

    const double sq_pi = std::sqrt(std::numbers::pi);
    const lfr::GammaLadder halves(FractalOrder(0.5), 4);
    CHECK(rel_err(halves[1], sq_pi / 2.0) < 1e-13);
    CHECK(rel_err(halves[2], 1.0) < 1e-13);
    CHECK(rel_err(halves[3], 3.0 * sq_pi / 4.0) < 1e-13);
    CHECK(rel_err(halves[4], 2.0) < 1e-13);

    const lfr::GammaLadder cantor = lfr::gamma_ladder(FractalOrder(kCantor), 8);
    for (int k = 0; k <= 8; ++k)
        CHECK(rel_err(cantor[k], gamma_oracle(1.0 + k * kCantor)) < 1e-13);

    CHECK_THROWS_AS(lfr::GammaLadder(FractalOrder(0.5), 0), std::invalid_argument);
}

TEST_CASE("gamma ladder is log-convex for k >= 1") {
    for (double z : {0.3, 0.5, kCantor, 0.9, 1.0}) {
        const lfr::GammaLadder g(FractalOrder(z), 24);
        for (int k = 1; k + 1 <= 24; ++k)
            CHECK(g[k + 1] * g[k - 1] >= g[k] * g[k] * (1.0 - 1e-12));
    }
}

TEST_CASE("gamma_ratio_step agrees with direct ratios") {
    for (double z : {0.3, kCantor, 1.0})
        for (int k : {1, 2, 7, 40})
            CHECK(rel_err(lfr::gamma_ratio_step(FractalOrder(z), k),
                          gamma_oracle(1.0 + (k - 1) * z) / gamma_oracle(1.0 + k * z)) < 1e-12);
}

TEST_CASE("ml_eval is one at mu = 0") {
    for (double z : {0.3, 0.5, kCantor, 1.0})
        for (Complex lam : {Complex(3.0, 0.0), Complex(-2.0, 1.5), Complex(0.0, 0.0)}) {
            const Complex v = lfr::ml_eval(FractalOrder(z), lam, 0.0);
            CHECK(v.real() == 1.0);
            CHECK(v.imag() == 0.0);
        }
}

TEST_CASE("ml_eval reduces to exp at zeta = 1") {
    const FractalOrder one(1.0);
    // Positive axis: full relative accuracy over |lambda mu| <= 20.
    for (double lm : {0.1, 1.0, 2.0, 5.0, 12.0, 20.0}) {
        const Complex v = lfr::ml_eval(one, Complex(lm, 0.0), 1.0);
        CHECK(rel_err(v.real(), std::exp(lm)) < 1e-12);
        CHECK(std::abs(v.imag()) == 0.0);
    }
    // E_1(2) with lambda 1, mu 2.
    CHECK(rel_err(lfr::ml_eval(one, Complex(1.0, 0.0), 2.0).real(), std::exp(2.0)) < 1e-12);
    // Negative axis: the alternating sum carries an absolute noise floor
    // around eps * exp(|lambda mu|); full 1e-12 relative accuracy holds for
    // small arguments only, so the check adds that floor explicitly.
    for (double lm : {-0.5, -2.0, -5.0, -12.0, -20.0}) {
        const Complex v = lfr::ml_eval(one, Complex(lm, 0.0), 1.0);
        const double floor = 4.0 * 2.2e-16 * std::exp(std::abs(lm));
        CHECK(std::abs(v.real() - std::exp(lm)) <
              1e-12 * std::abs(std::exp(lm)) + floor);
    }
}

TEST_CASE("ml_eval half-order identity against exp/erf") {
    // sum_k x^k / Gamma(1 + k/2) = e^{x^2} (1 + erf x), with mu = x^2.
    const FractalOrder half(0.5);
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
        const double expected = std::exp(x * x) * (1.0 + std::erf(x));
        const Complex got = lfr::ml_eval(half, Complex(1.0, 0.0), x * x);
        CHECK(rel_err(got.real(), expected) < 1e-11);
    }
    // Frozen oracle value e (1 + erf 1) at x = 1.
    CHECK(rel_err(lfr::ml_eval(half, Complex(1.0, 0.0), 1.0).real(), 5.008980080762283) < 1e-11);
}

TEST_CASE("ml_eval conjugate symmetry") {
    for (Complex lam : {Complex(0.4, 1.1), Complex(-0.7, 0.3), Complex(1.3, -2.0)})
        for (double mu : {0.25, 1.0, 2.0}) {
            const Complex a = lfr::ml_eval(FractalOrder(kCantor), std::conj(lam), mu);
            const Complex b = std::conj(lfr::ml_eval(FractalOrder(kCantor), lam, mu));
            CHECK(std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(b)));
        }
}

TEST_CASE("ml_eval cancellation guard") {
    CHECK_THROWS_AS(lfr::ml_eval(FractalOrder(1.0), Complex(-40.0, 0.0), 1.0),
                    lfr::PrecisionLossError);
    CHECK_THROWS_AS(lfr::ml_eval(FractalOrder(0.8), Complex(0.0, 35.0), 1.0),
                    lfr::PrecisionLossError);
    // Positive real rates have no cancellation and are not guarded.
    CHECK_NOTHROW(lfr::ml_eval(FractalOrder(1.0), Complex(40.0, 0.0), 1.0));
    CHECK_THROWS_AS(lfr::ml_eval(FractalOrder(1.0), Complex(1.0, 0.0), -0.5),
                    std::domain_error);
    CHECK_THROWS_AS(lfr::ml_eval(FractalOrder(1.0), Complex(1.0, 0.0), 1.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("ml_dlambda_eval basics") {
    for (double z : {0.5, kCantor, 1.0}) {
        const Complex v = lfr::ml_dlambda_eval(FractalOrder(z), Complex(2.0, 0.0), 0.0);
        CHECK(v == Complex(0.0, 0.0));
    }
    // d/dlambda e^{lambda mu} = mu at lambda = 0.
    CHECK(rel_err(lfr::ml_dlambda_eval(FractalOrder(1.0), Complex(0.0, 0.0), 3.0).real(), 3.0) <
          1e-13);
    CHECK_THROWS_AS(lfr::ml_dlambda_eval(FractalOrder(1.0), Complex(-50.0, 0.0), 1.0),
                    lfr::PrecisionLossError);
}

TEST_CASE("ml_dlambda_eval matches a central difference of ml_eval") {
    const double h = 1e-5;
    for (double z : {0.5, kCantor, 1.0})
        for (double lam : {-1.0, -0.3, 0.8})
            for (double mu : {0.25, 0.5, 1.0}) {
                const FractalOrder zeta(z);
                const Complex up = lfr::ml_eval(zeta, Complex(lam + h, 0.0), mu);
                const Complex dn = lfr::ml_eval(zeta, Complex(lam - h, 0.0), mu);
                const double fd = (up.real() - dn.real()) / (2.0 * h);
                const double got = lfr::ml_dlambda_eval(zeta, Complex(lam, 0.0), mu).real();
                CHECK(std::abs(got - fd) < 1e-7);
            }
}
