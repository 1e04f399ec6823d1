#include "fragrisk/growth.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fragrisk {

namespace {

constexpr std::array<double, 5> kA{3.1611237438705656, 113.864154151050156, 377.485237685302021,
                                   3209.37758913846947, 0.185777706184603153};
constexpr std::array<double, 4> kB{23.6012909523441209, 244.024637934444173, 1282.61652607737228,
                                   2844.23683343917062};
constexpr std::array<double, 9> kC{0.564188496988670089, 8.88314979438837594,
                                   66.1191906371416295,  298.635138197400131,
                                   881.95222124176909,   1712.04761263407058,
                                   2051.07837782607147,  1230.33935479799725,
                                   2.15311535474403846e-8};
constexpr std::array<double, 8> kD{15.7449261107098347, 117.693950891312499, 537.181101862009858,
                                   1621.38957456669019, 3290.79923573345963, 4362.61909014324716,
                                   3439.36767414372164, 1230.33935480374942};
constexpr std::array<double, 6> kP{0.305326634961232344, 0.360344899949804439,
                                   0.125781726111229246, 0.0160837851487422766,
                                   6.58749161529837803e-4, 0.0163153871373020978};
constexpr std::array<double, 5> kQ{2.56852019228982242, 1.87295284992346047,
                                   0.527905102951428412, 0.0605183413124413191,
                                   0.00233520497626869185};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kSmall = 1.11e-16;
constexpr double kBig = 26.543;

// exp(-y^2) * r, splitting y^2 to limit cancellation.
double scaled_by_gaussian(double y, double r) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del) * r;
}

// erf(y) for y >= 0.
double erf_nonnegative(double y) {
    if (y <= 0.46875) {
        const double ysq = y > kSmall ? y * y : 0.0;
        double num = kA[4] * ysq;
        double den = ysq;
        for (int i = 0; i < 3; ++i) {
            num = (num + kA[i]) * ysq;
            den = (den + kB[i]) * ysq;
        }
        return y * (num + kA[3]) / (den + kB[3]);
    }
    double erfc = 0.0;
    if (y <= 4.0) {
        double num = kC[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kC[i]) * y;
            den = (den + kD[i]) * y;
        }
        erfc = scaled_by_gaussian(y, (num + kC[7]) / (den + kD[7]));
    } else if (y < kBig) {
        const double ysq = 1.0 / (y * y);
        double num = kP[5] * ysq;
        double den = ysq;
        for (int i = 0; i < 4; ++i) {
            num = (num + kP[i]) * ysq;
            den = (den + kQ[i]) * ysq;
        }
        const double r = ysq * (num + kP[4]) / (den + kQ[4]);
        erfc = scaled_by_gaussian(y, (kInvSqrtPi - r) / y);
    }
    return (0.5 - erfc) + 0.5;
}

}  // namespace

double erf_value(double x) {
    if (std::isnan(x)) return x;
    const double y = erf_nonnegative(std::abs(x));
    return x < 0.0 ? -y : y;
}

void validate(const GrowthSpec& g) {
    if (const auto* s = std::get_if<SigmoidGrowth>(&g)) {
        if (!(s->saturation_capacity > 0.0) || !std::isfinite(s->saturation_capacity)) {
            throw std::invalid_argument("saturation capacity must be positive");
        }
    } else if (std::get<LinearGrowth>(g).ports_per_switch < 1) {
        throw std::invalid_argument("ports per switch must be >= 1");
    }
}

double capacity_at(const GrowthSpec& g, double units) {
    validate(g);
    if (!(units >= 0.0)) {
        throw std::domain_error("installed units must be >= 0");
    }
    if (const auto* s = std::get_if<SigmoidGrowth>(&g)) {
        return s->saturation_capacity * erf_value(units);
    }
    return static_cast<double>(std::get<LinearGrowth>(g).ports_per_switch) * units;
}

double crossover(const SigmoidGrowth& sig, const LinearGrowth& lin) {
    validate(sig);
    validate(lin);
    const GrowthSpec s = sig;
    const GrowthSpec l = lin;
    // gap(u) = linear - sigmoid is convex on u >= 0 with gap(0) = 0, so it is
    // either nonnegative everywhere or negative on (0, u*) and >= 0 after.
    auto gap = [&](double u) { return capacity_at(l, u) - capacity_at(s, u); };

    const double slope_at_zero = static_cast<double>(lin.ports_per_switch) -
                                 sig.saturation_capacity * 2.0 * kInvSqrtPi;
    if (slope_at_zero >= 0.0) return 0.0;

    double lo = 0.0;
    double hi = 1.0;
    while (gap(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace fragrisk
