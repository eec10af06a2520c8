#include "lfr/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

constexpr double kZeroTol = 1e-12;

void validate_coefficient(const Coefficient& c, const FractalOrder& zeta,
                          const char* name, bool must_be_nonzero) {
    if (std::holds_alternative<FractalSeries>(c)) {
        const auto& s = std::get<FractalSeries>(c);
        if (!(s.zeta() == zeta))
            throw std::invalid_argument(std::string(name) + ": mismatched fractal order");
    }
    if (must_be_nonzero && std::abs(constant_term(c)) < kZeroTol)
        throw std::invalid_argument(std::string(name) +
                                    " must have a nonzero (constant) term");
}

bool matches(double printed, double computed) {
    return std::abs(printed - computed) <= 1e-9 * std::max(1.0, std::abs(printed));
}

}  // namespace

bool is_constant(const Coefficient& c) {
    return std::holds_alternative<double>(c);
}

double constant_value(const Coefficient& c) {
    if (!is_constant(c))
        throw std::invalid_argument("constant_value: coefficient is a series");
    return std::get<double>(c);
}

Complex constant_term(const Coefficient& c) {
    if (is_constant(c))
        return Complex(std::get<double>(c), 0.0);
    return std::get<FractalSeries>(c).coeff(0);
}

FractalSeries as_series(const Coefficient& c, FractalOrder zeta, int order) {
    if (is_constant(c))
        return FractalSeries::constant(zeta, Complex(std::get<double>(c), 0.0), order);
    const FractalSeries& s = std::get<FractalSeries>(c);
    if (!(s.zeta() == zeta))
        throw std::invalid_argument("as_series: mismatched fractal order");
    if (s.order() < order)
        throw std::invalid_argument("as_series: coefficient series truncated below requested order");
    if (s.order() == order)
        return s;
    std::vector<Complex> trimmed(s.coeffs().begin(), s.coeffs().begin() + order + 1);
    return FractalSeries(zeta, std::move(trimmed));
}

RiccatiProblem::RiccatiProblem(FractalOrder zeta, Coefficient w0, Coefficient w1,
                               Coefficient w2, double phi0)
    : zeta_(zeta), w0_(std::move(w0)), w1_(std::move(w1)), w2_(std::move(w2)), phi0_(phi0) {
    if (!std::isfinite(phi0_))
        throw std::invalid_argument("RiccatiProblem: phi0 must be finite");
    validate_coefficient(w0_, zeta_, "w0", true);
    validate_coefficient(w1_, zeta_, "w1", false);
    validate_coefficient(w2_, zeta_, "w2", true);
}

bool RiccatiProblem::constant_coefficients() const {
    return is_constant(w0_) && is_constant(w1_) && is_constant(w2_);
}

bool LinearOde::constant_coefficients() const {
    return is_constant(omega1) && is_constant(omega2);
}

double ClosedFormSolution::eval_psi(double mu) const {
    return expsum_eval(psi, mu);
}

double ClosedFormSolution::eval_dpsi(double mu) const {
    return expsum_eval(dpsi, mu);
}

double ClosedFormSolution::eval_phi(double mu) const {
    const double ps = eval_psi(mu);
    if (ps == 0.0)
        throw PoleError("eval_phi: psi vanishes at this mu");
    return -eval_dpsi(mu) / (w2 * ps);
}

LinearOde reduce_to_linear(const RiccatiProblem& p) {
    const FractalOrder zeta = p.zeta();

    Coefficient omega1;
    if (is_constant(p.w0()) && is_constant(p.w2())) {
        omega1 = constant_value(p.w2()) * constant_value(p.w0());
    } else {
        const int n = std::min(
            is_constant(p.w0()) ? INT32_MAX : std::get<FractalSeries>(p.w0()).order(),
            is_constant(p.w2()) ? INT32_MAX : std::get<FractalSeries>(p.w2()).order());
        omega1 = fs_mul(as_series(p.w2(), zeta, n), as_series(p.w0(), zeta, n));
    }

    Coefficient omega2;
    if (is_constant(p.w2())) {
        omega2 = p.w1();  // D^zeta of a constant vanishes
    } else {
        const FractalSeries& w2s = std::get<FractalSeries>(p.w2());
        if (w2s.order() < 1)
            throw std::invalid_argument("reduce_to_linear: w2 series needs order >= 1");
        const FractalSeries quotient = fs_div(fs_lfd(w2s), w2s);  // order - 1
        omega2 = fs_add(as_series(p.w1(), zeta, quotient.order()), quotient);
    }

    return LinearOde{zeta, std::move(omega1), std::move(omega2)};
}

InitialData ic_map(const RiccatiProblem& p) {
    const Complex w2c = constant_term(p.w2());
    if (std::abs(w2c.imag()) > kZeroTol * std::max(1.0, std::abs(w2c)))
        throw std::invalid_argument("ic_map: complex w2(0) not supported");
    const double alpha = -w2c.real() * p.phi0();
    return InitialData{alpha == 0.0 ? 0.0 : alpha, 1.0};  // normalize -0
}

ClosedFormSolution solve_constant(const RiccatiProblem& p) {
    if (!p.constant_coefficients())
        throw std::invalid_argument("solve_constant: constant coefficients required");
    const double w1 = constant_value(p.w1());
    const double w2 = constant_value(p.w2());
    const double q = w2 * constant_value(p.w0());
    const InitialData ic = ic_map(p);

    const RationalZ transform = lflt_ivp(w1, q, ic.alpha, ic.beta);
    PartialFractions pf = decompose(transform, 1e-9 * std::max(1.0, w1 * w1));
    const Branch branch = pf.branch;
    const double sigma = pf.sigma;

    ExpSum psi = invert(pf, p.zeta());
    ExpSum dpsi = expsum_lfd(psi);
    ClosedFormSolution sol{p.zeta(), std::move(psi), std::move(dpsi),
                           w2, std::move(pf), branch, sigma, ic};

    // Phi(0) = -alpha / (w2 beta) = phi0 by the gauge; tolerate the
    // cancellation residue of nearly coalescing poles.
    double residue_scale = 0.0;
    for (const auto& t : sol.psi.terms)
        residue_scale += std::abs(t.coeff) * (1.0 + std::abs(t.rate));
    const double psi0 = sol.eval_psi(0.0);
    const double phi_at_0 = -sol.eval_dpsi(0.0) / (w2 * psi0);
    const double tol0 = 1e-12 * std::max(1.0, std::abs(p.phi0())) +
                        1e-14 * residue_scale / std::max(1e-300, std::abs(w2 * psi0));
    if (std::abs(phi_at_0 - p.phi0()) > tol0)
        throw std::logic_error("solve_constant: initial condition mismatch");
    return sol;
}

FractalSeries solve_linear_series(const LinearOde& ode, const InitialData& ic, int order) {
    if (!ode.constant_coefficients())
        throw std::invalid_argument("solve_linear_series: constant coefficients required");
    if (order < 1)
        throw std::invalid_argument("solve_linear_series: order must be >= 1");
    if (ic.beta == 0.0)
        throw std::invalid_argument("solve_linear_series: psi(0) must be nonzero");
    const double o1 = constant_value(ode.omega1);
    const double o2 = constant_value(ode.omega2);
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    c[0] = Complex(ic.beta, 0.0);
    c[1] = Complex(ic.alpha, 0.0);
    for (int k = 0; k + 2 <= order; ++k)
        c[static_cast<std::size_t>(k) + 2] =
            o2 * c[static_cast<std::size_t>(k) + 1] - o1 * c[static_cast<std::size_t>(k)];
    return FractalSeries(ode.zeta, std::move(c));
}

FractalSeries solve_series(const RiccatiProblem& p, int order) {
    if (order < 1)
        throw std::invalid_argument("solve_series: order must be >= 1");
    const FractalOrder zeta = p.zeta();
    const std::vector<Complex> w0v = as_series(p.w0(), zeta, order).coeffs();
    const std::vector<Complex> w1v = as_series(p.w1(), zeta, order).coeffs();
    const std::vector<Complex> w2v = as_series(p.w2(), zeta, order).coeffs();
    const GammaBinomial bin(zeta, order);

    std::vector<Complex> phi(static_cast<std::size_t>(order) + 1);
    std::vector<Complex> square(static_cast<std::size_t>(order) + 1);
    phi[0] = Complex(p.phi0(), 0.0);
    for (int n = 0; n < order; ++n) {
        Complex sq(0.0, 0.0);
        for (int j = 0; j <= n; ++j)
            sq += bin(j, n - j) * phi[static_cast<std::size_t>(j)] *
                  phi[static_cast<std::size_t>(n - j)];
        square[static_cast<std::size_t>(n)] = sq;
        Complex lin(0.0, 0.0), quad(0.0, 0.0);
        for (int j = 0; j <= n; ++j) {
            lin += bin(j, n - j) * w1v[static_cast<std::size_t>(j)] *
                   phi[static_cast<std::size_t>(n - j)];
            quad += bin(j, n - j) * w2v[static_cast<std::size_t>(j)] *
                    square[static_cast<std::size_t>(n - j)];
        }
        phi[static_cast<std::size_t>(n) + 1] = w0v[static_cast<std::size_t>(n)] + lin + quad;
    }
    return FractalSeries(zeta, std::move(phi));
}

FractalSeries residual(const RiccatiProblem& p, const FractalSeries& phi) {
    if (!(phi.zeta() == p.zeta()))
        throw std::invalid_argument("residual: mismatched fractal order");
    const int n = phi.order();
    const FractalSeries w0s = as_series(p.w0(), p.zeta(), n);
    const FractalSeries w1s = as_series(p.w1(), p.zeta(), n);
    const FractalSeries w2s = as_series(p.w2(), p.zeta(), n);
    const FractalSeries rhs =
        fs_add(fs_add(w0s, fs_mul(w1s, phi)), fs_mul(w2s, fs_mul(phi, phi)));
    return fs_add(fs_lfd(phi), rhs, Complex(1.0, 0.0), Complex(-1.0, 0.0));
}

double residual_relative_norm(const RiccatiProblem& p, const FractalSeries& phi) {
    const FractalSeries r = residual(p, phi);
    double worst = 0.0;
    for (int k = 0; k <= r.order(); ++k) {
        double scale = std::max(1.0, std::abs(phi.coeff(k)));
        if (k + 1 <= phi.order())
            scale = std::max(scale, std::abs(phi.coeff(k + 1)));
        worst = std::max(worst, std::abs(r.coeff(k)) / scale);
    }
    return worst;
}

FractalSeries recover_phi(const FractalSeries& psi, const Coefficient& w2) {
    if (std::abs(psi.coeff(0)) < kZeroTol)
        throw PoleError("recover_phi: psi vanishes at the origin");
    const FractalSeries w2s = as_series(w2, psi.zeta(), psi.order());
    return fs_scale(fs_div(fs_lfd(psi), fs_mul(w2s, psi)), Complex(-1.0, 0.0));
}

std::optional<double> find_pole(const ClosedFormSolution& sol, double mu_max) {
    if (!(mu_max > 0.0))
        throw std::invalid_argument("find_pole: mu_max must be positive");
    constexpr int kScanPoints = 512;
    constexpr double kBisectTol = 1e-9;

    double lo = 0.0;
    double flo = sol.eval_psi(0.0);
    if (flo == 0.0)
        return 0.0;
    for (int i = 1; i <= kScanPoints; ++i) {
        const double hi = mu_max * i / kScanPoints;
        const double fhi = sol.eval_psi(hi);
        if (fhi == 0.0)
            return hi;
        if ((flo < 0.0) != (fhi < 0.0)) {
            double a = lo, b = hi;
            const bool a_negative = flo < 0.0;
            while (b - a > kBisectTol) {
                const double m = 0.5 * (a + b);
                const double fm = sol.eval_psi(m);
                if (fm == 0.0)
                    return m;
                if ((fm < 0.0) == a_negative)
                    a = m;
                else
                    b = m;
            }
            return 0.5 * (a + b);
        }
        lo = hi;
        flo = fhi;
    }
    return std::nullopt;
}

SeriesOracle::SeriesOracle(const RiccatiProblem& p) : zeta_(p.zeta()) {
    if (!p.constant_coefficients())
        throw std::invalid_argument("SeriesOracle: constant coefficients required");
    w0_ = constant_value(p.w0());
    w1_ = constant_value(p.w1());
    w2_ = constant_value(p.w2());
    scaled_ = {p.phi0()};
}

void SeriesOracle::extend() {
    if (saturated_)
        return;
    const int n = static_cast<int>(scaled_.size()) - 1;
    double sq = 0.0;  // plain convolution in the scaled coordinates
    for (int j = 0; j <= n; ++j)
        sq += scaled_[static_cast<std::size_t>(j)] * scaled_[static_cast<std::size_t>(n - j)];
    const double rho = gamma_ratio_step(zeta_, n + 1);  // Gamma(1+n zeta)/Gamma(1+(n+1) zeta)
    const double next =
        rho * ((n == 0 ? w0_ : 0.0) + w1_ * scaled_[static_cast<std::size_t>(n)] + w2_ * sq);
    if (!std::isfinite(next) || std::abs(next) > 1e290) {
        saturated_ = true;
        return;
    }
    scaled_.push_back(next);
}

double SeriesOracle::eval(double mu, double tol) {
    if (mu < 0.0)
        throw std::domain_error("SeriesOracle: mu must be nonnegative");
    if (!(tol > 0.0))
        throw std::invalid_argument("SeriesOracle: tol must be positive");
    constexpr int kCap = 1024;
    const double x = std::pow(mu, zeta_.value());
    double sum = 0.0;
    double xk = 1.0;
    int quiet = 0;
    for (int k = 0; k <= kCap; ++k) {
        while (static_cast<int>(scaled_.size()) <= k && !saturated_)
            extend();
        if (static_cast<int>(scaled_.size()) <= k)
            throw TruncationError("SeriesOracle: coefficient range exhausted before convergence");
        const double term = scaled_[static_cast<std::size_t>(k)] * xk;
        sum += term;
        if (std::abs(term) <= tol * (std::abs(sum) + 1e-300)) {
            if (++quiet >= 4)
                return sum;
        } else {
            quiet = 0;
        }
        xk *= x;
    }
    throw TruncationError("SeriesOracle: series did not settle within 1024 terms");
}

namespace {

// Worked-example block (w = (1, 3, 1), phi0 = 1): printed constants against
// the formulas they cite and against the corrected pipeline.
ReferenceConstants build_reference_constants(FractalOrder zeta) {
    const RiccatiProblem example(zeta, 1.0, 3.0, 1.0, 1.0);
    const ClosedFormSolution sol = solve_constant(example);
    const double s5 = std::sqrt(5.0);
    const double alpha = sol.ic.alpha;  // -1 under the beta = 1 gauge
    const double beta = sol.ic.beta;
    const double w1 = 3.0;

    ReferenceConstants rc;
    rc.sigma = {5.0, sol.sigma, matches(5.0, sol.sigma)};

    const Complex c0 = sol.fractions.terms[0].pole;
    const Complex d0 = sol.fractions.terms[1].pole;
    rc.c0 = {(3.0 + s5) / 2.0, c0.real(), matches((3.0 + s5) / 2.0, c0.real())};
    rc.d0 = {(3.0 - s5) / 2.0, d0.real(), matches((3.0 - s5) / 2.0, d0.real())};

    const double moment = beta * (1.0 + w1) - alpha * w1 / 2.0;
    const double formula_a0 = alpha / 2.0 + moment / s5;
    const double formula_b0 = alpha / 2.0 - moment / s5;
    const double printed_a0 = (s5 - 11.0) * alpha / (2.0 * s5);
    const double printed_b0 = (s5 - 5.0) * alpha / (2.0 * s5);
    const Complex res_a = sol.fractions.terms[0].residue;
    const Complex res_b = sol.fractions.terms[1].residue;
    rc.a0 = {printed_a0, formula_a0, res_a, matches(printed_a0, formula_a0),
             matches(printed_a0, res_a.real()) && std::abs(res_a.imag()) <= 1e-9};
    rc.b0 = {printed_b0, formula_b0, res_b, matches(printed_b0, formula_b0),
             matches(printed_b0, res_b.real()) && std::abs(res_b.imag()) <= 1e-9};

    // Printed transform numerator alpha z + beta (1 + w1); the derivative
    // rules give beta z + (alpha - w1 beta). The printed version implies
    // psi(0) = alpha, not the required beta.
    rc.numerator = {alpha,
                    beta * (1.0 + w1),
                    beta,
                    alpha - w1 * beta,
                    alpha,
                    beta,
                    matches(alpha, beta)};
    return rc;
}

FractalImaginaryNote build_imaginary_note(FractalOrder zeta) {
    const double mu = 0.5;
    const RiccatiProblem oscillator(zeta, 1.0, 0.0, 1.0, 0.0);
    const ClosedFormSolution sol = solve_constant(oscillator);
    const Complex plain(sol.eval_psi(mu), 0.0);
    // Rotated reading: rates +/- exp(i pi zeta / 2) with residues beta/2,
    // the cover-up values for this sample problem.
    const Complex root = std::exp(Complex(0.0, std::numbers::pi * zeta.value() / 2.0));
    const Complex rotated =
        0.5 * ml_eval(zeta, root, mu) + 0.5 * ml_eval(zeta, -root, mu);
    return FractalImaginaryNote{mu, plain, rotated};
}

}  // namespace

DiscrepancyReport compare_semantics(const RiccatiProblem& p, int order,
                                    const std::vector<double>& grid) {
    if (!p.constant_coefficients())
        throw std::invalid_argument("compare_semantics: constant coefficients required");
    if (grid.empty())
        throw std::invalid_argument("compare_semantics: empty grid");
    if (order < 2)
        throw std::invalid_argument("compare_semantics: order must be >= 2");

    DiscrepancyReport rep;
    rep.zeta = p.zeta().value();
    rep.terms = order;
    rep.grid = grid;

    const ClosedFormSolution sol = solve_constant(p);
    rep.sigma = sol.sigma;
    rep.branch = sol.branch;
    for (const auto& t : sol.fractions.terms) {
        rep.poles.push_back(t.pole);
        rep.residues.push_back(t.residue);
    }

    const double mu_hi = *std::max_element(grid.begin(), grid.end());
    rep.pole = (mu_hi > 0.0) ? find_pole(sol, mu_hi) : std::nullopt;

    SeriesOracle oracle(p);
    double sup = 0.0;
    std::size_t compared = 0;
    for (double mu : grid) {
        if (rep.pole && mu > 0.95 * *rep.pole)
            continue;  // the oracle series stops converging against the pole
        try {
            const double closed = sol.eval_phi(mu);
            const double direct = oracle.eval(mu);
            sup = std::max(sup, std::abs(closed - direct));
            ++compared;
        } catch (const TruncationError&) {
            continue;
        }
    }
    rep.sup_difference = sup;
    rep.points_compared = compared;

    rep.residual_norm_oracle = residual_relative_norm(p, solve_series(p, order));
    const FractalSeries psi_series = expsum_to_series(sol.psi, order);
    rep.residual_norm_closed_form =
        residual_relative_norm(p, recover_phi(psi_series, p.w2()));

    rep.reference = build_reference_constants(p.zeta());

    const double s5 = std::sqrt(5.0);
    rep.boundary_value_printed =
        ((s5 - 11.0) * (3.0 + s5) + (s5 - 5.0) * (3.0 - s5)) /
        (2.0 * (s5 - 11.0) + 2.0 * (s5 - 5.0));
    rep.boundary_value_required = 1.0;
    rep.boundary_match = matches(rep.boundary_value_printed, rep.boundary_value_required);

    rep.imaginary_note = build_imaginary_note(p.zeta());
    return rep;
}

}  // namespace lfr
