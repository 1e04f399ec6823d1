#pragma once

// Pareto error model and the distribution of the harm it induces on N equal
// fragments: pushforward density, truncated tail mean, and the degradation
// ratio between a concentrated and a fragmented exposure.

#include "fragrisk/harm_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fragrisk {

class ParetoParams {
public:
    /// Throws std::invalid_argument unless alpha > 0 and scale > 0.
    ParetoParams(double alpha, double scale);

    double alpha() const noexcept { return alpha_; }
    /// Minimum error magnitude L.
    double scale() const noexcept { return scale_; }

    friend bool operator==(const ParetoParams&, const ParetoParams&) = default;

private:
    double alpha_;
    double scale_;
};

class FragmentCount {
public:
    /// Throws std::invalid_argument when n < 1.
    explicit FragmentCount(std::int64_t n);

    std::int64_t value() const noexcept { return n_; }

private:
    std::int64_t n_;
};

/// alpha L^alpha / x^(alpha+1) on x >= L, zero below.
double pareto_density(const ParetoParams& p, double x);

/// Survival function P(X > x).
double pareto_survival(const ParetoParams& p, double x);

/// Inverse CDF at u in [0,1): L (1-u)^(-1/alpha).
double pareto_quantile(const ParetoParams& p, double u);

std::vector<double> pareto_sample(const ParetoParams& p, std::size_t count, std::uint64_t seed);

/// Harm of one of N equal fragments for error x: -k (x/N)^beta.
double fragment_harm(const HarmParams& h, FragmentCount frag, double x);

/// Upper end of the support of the fragment harm: -k (L/N)^beta.
double fragment_harm_support_bound(const ParetoParams& p, const HarmParams& h, FragmentCount frag);

/// Density of xi = -k (X/N)^beta for X ~ Pareto(alpha, L):
///   alpha L^alpha N^-alpha (-xi/k)^(-alpha/beta) / (-beta xi)
/// on xi <= -k (L/N)^beta and zero elsewhere (including xi >= 0).
/// Throws std::invalid_argument when beta == 0.
double fragment_harm_density(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                             double xi);

/// Truncation threshold -k L^beta / N used by the tail mean.
double tail_threshold(const ParetoParams& p, const HarmParams& h, FragmentCount frag);

/// Closed-form truncated mean E[xi 1{xi <= -k L^beta / N}]:
///   -(alpha k L^beta N^(alpha(1/beta - 1) - 1)) / (alpha - beta).
/// The threshold lies inside the support when beta >= 1 (or N == 1); for
/// beta < 1 and N > 1 the expression is the analytic continuation of the
/// integral, not a truncated mean over the support.
/// Throws std::domain_error("tail mean diverges") when alpha <= beta.
double tail_mean(const ParetoParams& p, const HarmParams& h, FragmentCount frag);

/// True when beta < alpha <= 1 + beta: the tail mean is finite but the
/// stricter convergence margin alpha > 1 + beta is not met.
bool tail_mean_margin_warning(const ParetoParams& p, const HarmParams& h);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// Sample average of xi 1{xi <= threshold} with xi built from pareto_sample.
MonteCarloEstimate mc_tail_mean_estimate(const ParetoParams& p, const HarmParams& h,
                                         FragmentCount frag, std::uint64_t trials,
                                         std::uint64_t seed);

double mc_tail_mean(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                    std::uint64_t trials, std::uint64_t seed);

/// K M(KN) / M(N) = K^(alpha (1/beta - 1)); independent of N, k and L.
/// Throws std::domain_error when alpha <= beta and std::invalid_argument
/// when K <= 0 or K N < 1.
double degradation_ratio(const ParetoParams& p, const HarmParams& h, double multiplier,
                         FragmentCount frag = FragmentCount{1});

struct DegradationPoint {
    double multiplier;
    double ratio;
};

std::vector<DegradationPoint> degradation_curve(const ParetoParams& p, const HarmParams& h,
                                                std::span<const double> multipliers);

}  // namespace fragrisk
