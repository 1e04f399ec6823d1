#pragma once

// Reference computations that check the analytic routines by a different
// route: series, quadrature, sampling histograms, per-pair BFS and
// exhaustive enumeration. None of them call the routine they check.

#include "fragrisk/harm_model.hpp"
#include "fragrisk/pareto_risk.hpp"
#include "fragrisk/topology.hpp"

#include <cstdint>
#include <vector>

namespace fragrisk::oracles {

/// erf(x) = 2x/sqrt(pi) exp(-x^2) sum_n (2x^2)^n / (1*3*...*(2n+1)), summed in
/// long double. Every term is positive, so there is no cancellation.
double erf_series(double x);

struct Integral {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod integral of fragment_harm_density over [lo, hi];
/// lo may be -infinity.
Integral density_integral(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                          double lo, double hi);

/// Integral of the density over its whole support.
Integral density_normalization(const ParetoParams& p, const HarmParams& h, FragmentCount frag);

/// Integral of xi * density over (-infinity, hi].
Integral first_moment(const ParetoParams& p, const HarmParams& h, FragmentCount frag, double hi);

struct HistogramCheck {
    double l1_distance = 0.0;
    /// Largest |bin probability by quadrature - 1/bins|.
    double max_bin_mass_error = 0.0;
};

/// Draws `samples` errors, maps them to fragment harm and compares bin
/// frequencies with the density integrated over `bins` equal-probability
/// bins (edges from the closed-form CDF of the Pareto error).
HistogramCheck histogram_check(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                               std::size_t samples, std::size_t bins, std::uint64_t seed);

/// Affected fraction by a fresh BFS per host pair on the surviving graph.
double brute_force_affected_fraction(const Topology& t, const std::vector<bool>& failed_mask);

struct ExactMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Exact mean and variance of harm(h, affected_fraction) over all 2^n
/// failure patterns. Throws std::invalid_argument for more than 20 devices.
ExactMoments exhaustive_failure_harm(const Topology& t, const FailureModel& fm,
                                     const HarmParams& h);

/// Random 3-tier or spine-leaf fabric with at most `max_devices` devices,
/// drawn deterministically from `seed`. Used by property checks.
Topology random_fabric(std::uint64_t seed, std::size_t max_devices);

/// Random subset of the devices of `t`, each included with probability p.
std::vector<bool> random_failure_mask(const Topology& t, double p, std::uint64_t seed);

}  // namespace fragrisk::oracles
