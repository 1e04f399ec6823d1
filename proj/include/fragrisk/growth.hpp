#pragma once

// Capacity growth of a modular chassis (bounded, erf-shaped in installed
// modules) versus fixed-port scale-out (linear in installed switches).

#include <variant>

namespace fragrisk {

/// Gauss error function via W. J. Cody's rational Chebyshev approximations
/// (three intervals: |x| <= 0.46875, <= 4, > 4). Odd by construction.
double erf_value(double x);

struct SigmoidGrowth {
    /// Port capacity of a fully populated chassis.
    double saturation_capacity;
};

struct LinearGrowth {
    int ports_per_switch;
};

using GrowthSpec = std::variant<SigmoidGrowth, LinearGrowth>;

/// Throws std::invalid_argument for non-positive parameters.
void validate(const GrowthSpec& g);

/// saturation * erf(units) or ports_per_switch * units.
/// Throws std::domain_error for negative units.
double capacity_at(const GrowthSpec& g, double units);

/// Smallest u >= 0 past which linear capacity is never below sigmoid
/// capacity, to 1e-9 absolute. Always finite: the linear side is unbounded.
double crossover(const SigmoidGrowth& sig, const LinearGrowth& lin);

}  // namespace fragrisk
