#include "lfr/laplace.hpp"

#include <cmath>
#include <stdexcept>

#include "lfr/errors.hpp"

namespace lfr {

namespace {

bool nearly_conjugate(const Complex& a, const Complex& b, double tol) {
    return std::abs(a - std::conj(b)) <= tol * std::max(1.0, std::abs(a));
}

// Terms must pair up under conjugation for the sum to be real-valued.
bool conjugate_closed(const std::vector<ExpTerm>& terms) {
    constexpr double tol = 1e-12;
    std::vector<bool> used(terms.size(), false);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (used[i])
            continue;
        if (std::abs(terms[i].rate.imag()) <= tol &&
            std::abs(terms[i].coeff.imag()) <= tol * std::max(1.0, std::abs(terms[i].coeff))) {
            used[i] = true;
            continue;
        }
        bool paired = false;
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            if (used[j] || terms[j].order != terms[i].order)
                continue;
            if (nearly_conjugate(terms[j].rate, terms[i].rate, tol) &&
                nearly_conjugate(terms[j].coeff, terms[i].coeff, tol)) {
                used[i] = used[j] = true;
                paired = true;
                break;
            }
        }
        if (!paired)
            return false;
    }
    return true;
}

}  // namespace

std::string_view branch_name(Branch b) {
    switch (b) {
    case Branch::DistinctReal: return "distinct-real";
    case Branch::ComplexPair: return "complex-pair";
    case Branch::DoubleRoot: return "double";
    }
    return "unknown";
}

RationalZ lflt_ivp(double w1, double q, double alpha, double beta) {
    RationalZ r;
    r.num = {Complex(alpha - w1 * beta, 0.0), Complex(beta, 0.0)};
    r.den = {Complex(q, 0.0), Complex(-w1, 0.0), Complex(1.0, 0.0)};
    return r;
}

PartialFractions decompose(const RationalZ& r, double tol) {
    if (std::abs(r.den[2] - Complex(1.0, 0.0)) > 1e-12)
        throw std::invalid_argument("decompose: denominator must be monic");
    if (!(tol >= 0.0))
        throw std::invalid_argument("decompose: tol must be nonnegative");
    const double w1 = -r.den[1].real();
    const double q = r.den[0].real();
    const Complex n0 = r.num[0];
    const Complex n1 = r.num[1];

    PartialFractions pf;
    pf.sigma = w1 * w1 - 4.0 * q;
    const double mid = 0.5 * w1;
    const Complex n_mid = n1 * mid + n0;  // numerator at the pole midpoint

    if (std::abs(pf.sigma) <= tol) {
        pf.branch = Branch::DoubleRoot;
        pf.terms = {PfTerm{n1, Complex(mid, 0.0), 1}, PfTerm{n_mid, Complex(mid, 0.0), 2}};
        return pf;
    }

    // Residues in half-sum form A = n1/2 + u, B = n1/2 - u keep A + B = n1
    // exact even when the poles nearly coalesce and |u| blows up.
    if (pf.sigma > 0.0) {
        pf.branch = Branch::DistinctReal;
        const double half_gap = 0.5 * std::sqrt(pf.sigma);
        const Complex u = n_mid / (2.0 * half_gap);
        pf.terms = {PfTerm{0.5 * n1 + u, Complex(mid + half_gap, 0.0), 1},
                    PfTerm{0.5 * n1 - u, Complex(mid - half_gap, 0.0), 1}};
    } else {
        pf.branch = Branch::ComplexPair;
        const double half_gap = 0.5 * std::sqrt(-pf.sigma);
        const Complex u = n_mid / Complex(0.0, 2.0 * half_gap);
        pf.terms = {PfTerm{0.5 * n1 + u, Complex(mid, half_gap), 1},
                    PfTerm{0.5 * n1 - u, Complex(mid, -half_gap), 1}};
    }
    return pf;
}

RationalZ pf_reconstruct(const PartialFractions& pf) {
    // Supported shapes: two simple poles, or the simple+double pair at a
    // repeated root. Everything decompose produces falls in one of the two.
    if (pf.branch == Branch::DoubleRoot) {
        const Complex lam = pf.terms.front().pole;
        Complex a(0.0, 0.0), c(0.0, 0.0);
        for (const auto& t : pf.terms) {
            if (t.multiplicity == 1)
                a += t.residue;
            else
                c += t.residue;
        }
        RationalZ r;
        r.num = {c - a * lam, a};
        r.den = {lam * lam, -2.0 * lam, Complex(1.0, 0.0)};
        return r;
    }
    if (pf.terms.size() != 2)
        throw std::invalid_argument("pf_reconstruct: expected two simple terms");
    const Complex a = pf.terms[0].residue, l1 = pf.terms[0].pole;
    const Complex b = pf.terms[1].residue, l2 = pf.terms[1].pole;
    RationalZ r;
    r.num = {-(a * l2 + b * l1), a + b};
    r.den = {l1 * l2, -(l1 + l2), Complex(1.0, 0.0)};
    return r;
}

ExpSum invert(const PartialFractions& pf, FractalOrder zeta) {
    ExpSum e{zeta, {}, false};
    e.terms.reserve(pf.terms.size());
    for (const auto& t : pf.terms)
        e.terms.push_back(ExpTerm{t.residue, t.pole, t.multiplicity - 1});
    e.real_valued = conjugate_closed(e.terms);
    return e;
}

ExpSum expsum_lfd(const ExpSum& e) {
    ExpSum d{e.zeta, {}, e.real_valued};
    for (const auto& t : e.terms) {
        if (t.order == 0) {
            d.terms.push_back(ExpTerm{t.coeff * t.rate, t.rate, 0});
        } else {
            // coefficients k rate^(k-1) shift to (k+1) rate^k
            d.terms.push_back(ExpTerm{t.coeff, t.rate, 0});
            d.terms.push_back(ExpTerm{t.coeff * t.rate, t.rate, 1});
        }
    }
    return d;
}

FractalSeries expsum_to_series(const ExpSum& e, int order) {
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0, 0.0));
    for (const auto& t : e.terms) {
        if (t.order == 0) {
            Complex p(1.0, 0.0);
            for (int k = 0; k <= order; ++k) {
                c[static_cast<std::size_t>(k)] += t.coeff * p;
                p *= t.rate;
            }
        } else {
            Complex p(1.0, 0.0);  // rate^(k-1), starting at k = 1
            for (int k = 1; k <= order; ++k) {
                c[static_cast<std::size_t>(k)] += t.coeff * static_cast<double>(k) * p;
                p *= t.rate;
            }
        }
    }
    if (e.real_valued) {
        for (const auto& v : c)
            if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)))
                throw std::logic_error("expsum_to_series: realness violation");
    }
    return FractalSeries(e.zeta, std::move(c));
}

Complex expsum_eval_complex(const ExpSum& e, double mu) {
    Complex sum(0.0, 0.0);
    for (const auto& t : e.terms) {
        if (t.order == 0)
            sum += t.coeff * ml_eval(e.zeta, t.rate, mu);
        else
            sum += t.coeff * ml_dlambda_eval(e.zeta, t.rate, mu);
    }
    return sum;
}

double expsum_eval(const ExpSum& e, double mu) {
    if (!e.real_valued)
        throw std::logic_error("expsum_eval: sum is not marked real-valued");
    const Complex v = expsum_eval_complex(e, mu);
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)))
        throw std::logic_error("expsum_eval: imaginary residue above tolerance");
    return v.real();
}

}  // namespace lfr
