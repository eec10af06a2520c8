#include "lfr/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace lfr {

FractalOrder::FractalOrder(double zeta) : zeta_(zeta) {
    if (!(zeta > 0.0) || !(zeta <= 1.0))
        throw std::domain_error("FractalOrder: zeta must lie in (0, 1]");
}

namespace {

// Lanczos coefficients for N=13, g = 6.024680040776729583740234375,
// the standard double-precision set (Godfrey/Pugh); rational part is
// accurate to a few ulp. Arrays are ordered constant term first; the
// denominator is z(z+1)...(z+11).
constexpr double kLanczosG = 6.024680040776729583740234375;

constexpr double kLanczosNum[13] = {
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604981810747937514406,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
};

constexpr double kLanczosDen[13] = {
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
    13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
};

// Largest argument for which gamma_real stays inside double range.
constexpr double kGammaOverflowEdge = 170.0;

}  // namespace

double gamma_real(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_real: argument must be positive");
    double num = kLanczosNum[12];
    double den = kLanczosDen[12];
    for (int i = 11; i >= 0; --i) {
        num = num * x + kLanczosNum[i];
        den = den * x + kLanczosDen[i];
    }
    const double zgh = x + kLanczosG - 0.5;
    return (num / den) * std::pow(zgh, x - 0.5) * std::exp(-zgh);
}

double gamma_ratio_step(FractalOrder zeta, int k) {
    if (k < 1)
        throw std::invalid_argument("gamma_ratio_step: k must be >= 1");
    const double z = zeta.value();
    if (z == 1.0)
        return 1.0 / static_cast<double>(k);
    const double hi = 1.0 + k * z;
    if (hi <= kGammaOverflowEdge)
        return gamma_real(hi - z) / gamma_real(hi);
    return std::exp(std::lgamma(hi - z) - std::lgamma(hi));
}

GammaLadder::GammaLadder(FractalOrder zeta, int order) : zeta_(zeta) {
    if (order < 1)
        throw std::invalid_argument("GammaLadder: order must be >= 1");
    values_.resize(static_cast<std::size_t>(order) + 1);
    values_[0] = 1.0;  // Gamma(1)
    for (int k = 1; k <= order; ++k)
        values_[static_cast<std::size_t>(k)] = gamma_real(1.0 + k * zeta.value());
}

GammaLadder gamma_ladder(FractalOrder zeta, int order) {
    return GammaLadder(zeta, order);
}

}  // namespace lfr
