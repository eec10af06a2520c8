#include "lfr/mittag_leffler.hpp"

#include <cmath>
#include <stdexcept>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

constexpr int kMaxTerms = 512;
constexpr double kCancellationThreshold = 30.0;

void check_arguments(double mu, double tol) {
    if (mu < 0.0)
        throw std::domain_error("mittag_leffler: mu must be nonnegative");
    if (!(tol > 0.0))
        throw std::invalid_argument("mittag_leffler: tol must be positive");
}

// Alternating-sign sums lose roughly e^{2|lambda| x} of their precision;
// past the threshold nothing of the value survives in double.
void check_cancellation(const Complex& lambda, double x, const char* who) {
    const bool sign_varying = lambda.imag() != 0.0 || lambda.real() < 0.0;
    if (sign_varying && std::abs(lambda) * x > kCancellationThreshold)
        throw PrecisionLossError(std::string(who) +
                                 ": |lambda| mu^zeta exceeds the cancellation threshold");
}

bool small_enough(const Complex& term, const Complex& sum, double tol) {
    return std::abs(term) <= tol * (std::abs(sum) + 1e-300);
}

}  // namespace

Complex ml_eval(FractalOrder zeta, Complex lambda, double mu, double tol) {
    check_arguments(mu, tol);
    const double x = std::pow(mu, zeta.value());
    check_cancellation(lambda, x, "ml_eval");

    Complex sum(1.0, 0.0);  // k = 0
    Complex term(1.0, 0.0);
    int quiet = 0;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term *= lambda * x * gamma_ratio_step(zeta, k);
        sum += term;
        if (small_enough(term, sum, tol)) {
            if (++quiet >= 2)
                return sum;
        } else {
            quiet = 0;
        }
    }
    throw PrecisionLossError("ml_eval: series did not settle within 512 terms");
}

Complex ml_dlambda_eval(FractalOrder zeta, Complex lambda, double mu, double tol) {
    check_arguments(mu, tol);
    const double x = std::pow(mu, zeta.value());
    check_cancellation(lambda, x, "ml_dlambda_eval");
    if (x == 0.0)
        return Complex(0.0, 0.0);  // every term carries mu^(k zeta), k >= 1

    Complex term = x / gamma_real(1.0 + zeta.value());  // k = 1
    Complex sum = term;
    int quiet = 0;
    for (int k = 2; k <= kMaxTerms; ++k) {
        const double k_over_km1 = static_cast<double>(k) / static_cast<double>(k - 1);
        term *= lambda * x * k_over_km1 * gamma_ratio_step(zeta, k);
        sum += term;
        if (small_enough(term, sum, tol)) {
            if (++quiet >= 2)
                return sum;
        } else {
            quiet = 0;
        }
    }
    throw PrecisionLossError("ml_dlambda_eval: series did not settle within 512 terms");
}

}  // namespace lfr
