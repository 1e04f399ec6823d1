#include "fragrisk/harm_model.hpp"

#include "fragrisk/pareto_risk.hpp"
#include "fragrisk/rng.hpp"
#include "fragrisk/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fragrisk {

HarmParams::HarmParams(double k, double beta) : k_(k), beta_(beta) {
    if (!std::isfinite(k) || k <= 0.0) {
        throw std::invalid_argument("harm scale k must be a finite positive number, got " +
                                    std::to_string(k));
    }
    if (!std::isfinite(beta) || beta < 0.0) {
        throw std::invalid_argument("harm exponent beta must be finite and >= 0, got " +
                                    std::to_string(beta));
    }
}

FragmentWeights::FragmentWeights(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) {
        throw std::invalid_argument("fragment weights must contain at least one share");
    }
    double sum = 0.0;
    for (double wi : w_) {
        if (!(wi >= 0.0 && wi <= 1.0)) {
            throw std::invalid_argument("fragment weight outside [0,1]: " + std::to_string(wi));
        }
        sum += wi;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw std::invalid_argument("fragment weights must sum to 1, got " + std::to_string(sum));
    }
}

FragmentWeights FragmentWeights::equal(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("fragment count must be >= 1");
    }
    return FragmentWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double harm(const HarmParams& params, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("harm is defined for finite x >= 0, got " + std::to_string(x));
    }
    // std::pow(0, 0) == 1, which is the convention we want.
    return -params.k() * std::pow(x, params.beta());
}

double fragmented_harm(const HarmParams& params, const FragmentWeights& weights, double x) {
    if (params.beta() == 1.0) {
        // Linear harm is additive; the shares only sum to 1 up to tolerance.
        return harm(params, x);
    }
    double total = 0.0;
    for (double wi : weights.values()) {
        total += harm(params, wi * x);
    }
    return total;
}

double jensen_gap(const HarmParams& params, const FragmentWeights& weights, double x) {
    const double whole = harm(params, x);
    return fragmented_harm(params, weights, x) - whole;
}

SurvivalComparison survival_comparison(const HarmParams& params, double unit_value,
                                       const FragmentWeights& weights,
                                       const ParetoParams& error_model,
                                       std::uint64_t trials, std::uint64_t seed) {
    if (error_model.alpha() <= params.beta()) {
        throw std::domain_error("harm mean diverges");
    }
    if (trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (!std::isfinite(unit_value) || unit_value <= 0.0) {
        throw std::invalid_argument("unit value B must be positive");
    }

    UniformStream stream(seed);
    double sum_central = 0.0;
    double sum_decentral = 0.0;
    RunningStats diff_stats;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double x = pareto_quantile(error_model, stream.next());
        const double central = unit_value + harm(params, x);
        // sum_i w_i B == B for normalized shares.
        const double decentral = unit_value + fragmented_harm(params, weights, x);
        sum_central += central;
        sum_decentral += decentral;
        diff_stats.add(decentral - central);
    }

    const double n = static_cast<double>(trials);
    SurvivalComparison out;
    out.trials = trials;
    out.centralized_mean = sum_central / n;
    out.decentralized_mean = sum_decentral / n;
    out.difference_std_error = diff_stats.std_error();
    return out;
}

}  // namespace fragrisk
