#include "fragrisk/pareto_risk.hpp"

#include "fragrisk/rng.hpp"
#include "fragrisk/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fragrisk {

namespace {

void require_finite_tail_mean(const ParetoParams& p, const HarmParams& h) {
    if (h.beta() <= 0.0) {
        throw std::invalid_argument("tail mean requires beta > 0");
    }
    if (p.alpha() <= h.beta()) {
        throw std::domain_error("tail mean diverges");
    }
}

}  // namespace

ParetoParams::ParetoParams(double alpha, double scale) : alpha_(alpha), scale_(scale) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw std::invalid_argument("tail index alpha must be positive, got " +
                                    std::to_string(alpha));
    }
    if (!std::isfinite(scale) || scale <= 0.0) {
        throw std::invalid_argument("Pareto scale L must be positive, got " +
                                    std::to_string(scale));
    }
}

FragmentCount::FragmentCount(std::int64_t n) : n_(n) {
    if (n < 1) {
        throw std::invalid_argument("fragment count N must be >= 1, got " + std::to_string(n));
    }
}

double pareto_density(const ParetoParams& p, double x) {
    if (!(x >= p.scale())) {
        return 0.0;
    }
    // alpha L^alpha / x^(alpha+1), arranged to avoid overflow for large alpha.
    return p.alpha() / x * std::pow(p.scale() / x, p.alpha());
}

double pareto_survival(const ParetoParams& p, double x) {
    if (!(x > p.scale())) {
        return 1.0;
    }
    return std::pow(p.scale() / x, p.alpha());
}

double pareto_quantile(const ParetoParams& p, double u) {
    if (!(u >= 0.0 && u < 1.0)) {
        throw std::domain_error("Pareto quantile requires u in [0,1)");
    }
    return p.scale() * std::pow(1.0 - u, -1.0 / p.alpha());
}

std::vector<double> pareto_sample(const ParetoParams& p, std::size_t count, std::uint64_t seed) {
    UniformStream stream(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(pareto_quantile(p, stream.next()));
    }
    return out;
}

double fragment_harm(const HarmParams& h, FragmentCount frag, double x) {
    return harm(h, x / static_cast<double>(frag.value()));
}

double fragment_harm_support_bound(const ParetoParams& p, const HarmParams& h,
                                   FragmentCount frag) {
    return -h.k() * std::pow(p.scale() / static_cast<double>(frag.value()), h.beta());
}

double fragment_harm_density(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                             double xi) {
    if (h.beta() <= 0.0) {
        throw std::invalid_argument("fragment harm density requires beta > 0");
    }
    if (!(xi < 0.0) || xi > fragment_harm_support_bound(p, h, frag)) {
        return 0.0;
    }
    const double alpha = p.alpha();
    const double beta = h.beta();
    const double n = static_cast<double>(frag.value());
    const double t = -xi / h.k();
    // alpha L^alpha N^-alpha t^(-alpha/beta) / (-beta xi), with L/N grouped.
    return alpha * std::pow(p.scale() / n, alpha) * std::pow(t, -alpha / beta) / (-beta * xi);
}

double tail_threshold(const ParetoParams& p, const HarmParams& h, FragmentCount frag) {
    return -h.k() * std::pow(p.scale(), h.beta()) / static_cast<double>(frag.value());
}

double tail_mean(const ParetoParams& p, const HarmParams& h, FragmentCount frag) {
    require_finite_tail_mean(p, h);
    const double alpha = p.alpha();
    const double beta = h.beta();
    const double n = static_cast<double>(frag.value());
    const double exponent = alpha * (1.0 / beta - 1.0) - 1.0;
    return -(alpha * h.k() * std::pow(p.scale(), beta) * std::pow(n, exponent)) / (alpha - beta);
}

bool tail_mean_margin_warning(const ParetoParams& p, const HarmParams& h) {
    return p.alpha() > h.beta() && p.alpha() <= 1.0 + h.beta();
}

MonteCarloEstimate mc_tail_mean_estimate(const ParetoParams& p, const HarmParams& h,
                                         FragmentCount frag, std::uint64_t trials,
                                         std::uint64_t seed) {
    require_finite_tail_mean(p, h);
    if (trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    const double threshold = tail_threshold(p, h, frag);
    UniformStream stream(seed);
    RunningStats stats;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double xi = fragment_harm(h, frag, pareto_quantile(p, stream.next()));
        stats.add(xi <= threshold ? xi : 0.0);
    }
    return {stats.mean(), stats.std_error(), trials};
}

double mc_tail_mean(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                    std::uint64_t trials, std::uint64_t seed) {
    return mc_tail_mean_estimate(p, h, frag, trials, seed).mean;
}

double degradation_ratio(const ParetoParams& p, const HarmParams& h, double multiplier,
                         FragmentCount frag) {
    require_finite_tail_mean(p, h);
    if (!std::isfinite(multiplier) || multiplier <= 0.0) {
        throw std::invalid_argument("multiplier K must be positive");
    }
    if (multiplier * static_cast<double>(frag.value()) < 1.0) {
        throw std::invalid_argument("K * N must be >= 1");
    }
    return std::pow(multiplier, p.alpha() * (1.0 / h.beta() - 1.0));
}

std::vector<DegradationPoint> degradation_curve(const ParetoParams& p, const HarmParams& h,
                                                std::span<const double> multipliers) {
    std::vector<DegradationPoint> rows;
    rows.reserve(multipliers.size());
    for (double K : multipliers) {
        rows.push_back({K, degradation_ratio(p, h, K)});
    }
    return rows;
}

}  // namespace fragrisk
