#include "lfr/fractal_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

constexpr double kDivisionPoleTol = 1e-12;

void require_same_zeta(const FractalSeries& f, const FractalSeries& g, const char* who) {
    if (!(f.zeta() == g.zeta()))
        throw std::invalid_argument(std::string(who) + ": mismatched fractal order");
}

}  // namespace

GammaBinomial::GammaBinomial(FractalOrder zeta, int max_sum)
    : ladder_(zeta, std::max(1, max_sum)) {}

FractalSeries::FractalSeries(FractalOrder zeta, std::vector<Complex> coeffs)
    : zeta_(zeta), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("FractalSeries: at least one coefficient required");
}

FractalSeries FractalSeries::constant(FractalOrder zeta, Complex value, int order) {
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0, 0.0));
    c[0] = value;
    return FractalSeries(zeta, std::move(c));
}

FractalSeries FractalSeries::basis(FractalOrder zeta, int k, int order) {
    if (k < 0 || k > order)
        throw std::invalid_argument("FractalSeries::basis: index outside truncation");
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0, 0.0));
    c[static_cast<std::size_t>(k)] = Complex(1.0, 0.0);
    return FractalSeries(zeta, std::move(c));
}

FractalSeries fs_add(const FractalSeries& f, const FractalSeries& g, Complex a, Complex b) {
    require_same_zeta(f, g, "fs_add");
    const int n = std::min(f.order(), g.order());
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        c[static_cast<std::size_t>(k)] = a * f.coeff(k) + b * g.coeff(k);
    return FractalSeries(f.zeta(), std::move(c));
}

FractalSeries fs_scale(const FractalSeries& f, Complex s) {
    std::vector<Complex> c(f.coeffs());
    for (auto& v : c)
        v *= s;
    return FractalSeries(f.zeta(), std::move(c));
}

FractalSeries fs_mul(const FractalSeries& f, const FractalSeries& g) {
    require_same_zeta(f, g, "fs_mul");
    const int n = std::min(f.order(), g.order());
    const GammaBinomial bin(f.zeta(), n);
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j <= m; ++j)
            acc += bin(j, m - j) * f.coeff(j) * g.coeff(m - j);
        c[static_cast<std::size_t>(m)] = acc;
    }
    return FractalSeries(f.zeta(), std::move(c));
}

FractalSeries fs_div(const FractalSeries& f, const FractalSeries& h) {
    require_same_zeta(f, h, "fs_div");
    if (std::abs(h.coeff(0)) < kDivisionPoleTol)
        throw PoleError("fs_div: division by series with zero constant term");
    const int n = std::min(f.order(), h.order());
    const GammaBinomial bin(f.zeta(), n);
    std::vector<Complex> g(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        Complex acc = f.coeff(m);
        for (int j = 0; j < m; ++j)
            acc -= bin(j, m - j) * g[static_cast<std::size_t>(j)] * h.coeff(m - j);
        g[static_cast<std::size_t>(m)] = acc / h.coeff(0);  // B(m, 0) = 1
    }
    return FractalSeries(f.zeta(), std::move(g));
}

FractalSeries fs_lfd(const FractalSeries& f) {
    if (f.order() < 1)
        throw std::invalid_argument("fs_lfd: truncation order must be >= 1");
    std::vector<Complex> c(f.coeffs().begin() + 1, f.coeffs().end());
    return FractalSeries(f.zeta(), std::move(c));
}

FractalSeries fs_from_ml(FractalOrder zeta, Complex lambda, int order) {
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    Complex p(1.0, 0.0);
    for (int k = 0; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = p;
        p *= lambda;
    }
    return FractalSeries(zeta, std::move(c));
}

SeriesEval fs_eval_detail(const FractalSeries& f, double mu) {
    if (mu < 0.0)
        throw std::domain_error("fs_eval: mu must be nonnegative");
    const int n = f.order();
    const GammaLadder ladder(f.zeta(), std::max(1, n));
    const double x = std::pow(mu, f.zeta().value());
    Complex sum(0.0, 0.0);
    double xk = 1.0;
    double tail0 = 0.0, tail1 = 0.0;  // |term| at orders n-1 and n
    for (int k = 0; k <= n; ++k) {
        const Complex term = f.coeff(k) * (xk / ladder[k]);
        sum += term;
        if (k == n - 1) tail0 = std::abs(term);
        if (k == n) tail1 = std::abs(term);
        xk *= x;
    }
    // Last two terms stand in for the (unknown) tail; a single-coefficient
    // series carries no tail information and is taken at face value.
    const double remainder = (n == 0) ? 0.0 : 2.0 * std::max(tail0, tail1);
    return SeriesEval{sum, remainder};
}

Complex fs_eval(const FractalSeries& f, double mu, double tol) {
    const SeriesEval r = fs_eval_detail(f, mu);
    if (r.remainder > tol * std::max(1.0, std::abs(r.value)))
        throw TruncationError("fs_eval: insufficient truncation order at this mu");
    return r.value;
}

double fs_finite_diff_lfd(const std::function<double(double)>& f, double mu0,
                          double h, FractalOrder zeta) {
    if (!(h > 0.0))
        throw std::invalid_argument("fs_finite_diff_lfd: h must be positive");
    const double scale = gamma_real(1.0 + zeta.value());
    return scale * (f(mu0 + h) - f(mu0)) / std::pow(h, zeta.value());
}

}  // namespace lfr
