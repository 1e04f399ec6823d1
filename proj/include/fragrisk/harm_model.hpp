#pragma once

// Nonlinear harm transform H(x) = -k x^beta and the fragmentation
// inequalities built on it.
//
// Sign convention: harm values are nonpositive. A "larger" harm is a more
// negative number; comparisons in this header speak in magnitudes.

#include <cstdint>
#include <span>
#include <vector>

namespace fragrisk {

class ParetoParams;

class HarmParams {
public:
    /// Throws std::invalid_argument unless k > 0 and beta >= 0 (both finite).
    HarmParams(double k, double beta);

    double k() const noexcept { return k_; }
    double beta() const noexcept { return beta_; }

    /// True iff beta >= 1, the regime where splitting an exposure never
    /// increases total harm magnitude.
    bool guarantees_fragmentation_benefit() const noexcept { return beta_ >= 1.0; }

    friend bool operator==(const HarmParams&, const HarmParams&) = default;

private:
    double k_;
    double beta_;
};

/// Shares w_i of a single exposure. Each share lies in [0,1] and the shares
/// sum to 1 within kWeightSumTolerance.
class FragmentWeights {
public:
    static constexpr double kWeightSumTolerance = 1e-9;

    explicit FragmentWeights(std::vector<double> w);

    /// N equal shares of 1/N.
    static FragmentWeights equal(std::size_t n);

    std::span<const double> values() const noexcept { return w_; }
    std::size_t size() const noexcept { return w_.size(); }

private:
    std::vector<double> w_;
};

/// -k * x^beta. 0^0 is taken as 1, so harm(k, 0, 0) == -k.
/// Throws std::domain_error for negative or non-finite x.
double harm(const HarmParams& params, double x);

/// Sum of harm(params, w_i * x). For beta == 1 the linear identity
/// sum_i H(w_i x) = H(x) is applied exactly.
double fragmented_harm(const HarmParams& params, const FragmentWeights& weights, double x);

/// fragmented_harm - harm. Nonnegative for beta >= 1, nonpositive for beta <= 1.
double jensen_gap(const HarmParams& params, const FragmentWeights& weights, double x);

struct SurvivalComparison {
    double centralized_mean = 0.0;
    double decentralized_mean = 0.0;
    /// Standard error of the paired per-draw difference (decentralized - centralized).
    double difference_std_error = 0.0;
    std::uint64_t trials = 0;

    double difference() const noexcept { return decentralized_mean - centralized_mean; }
};

/// Paired Monte Carlo comparison of one unit B exposed to a Pareto error X
/// (outcome B + H(X)) against the same unit split by `weights`, where each
/// fragment sees the same draw scaled by its share (outcome
/// sum_i w_i B + H(w_i X)).
///
/// Throws std::domain_error("harm mean diverges") when alpha <= beta and
/// std::invalid_argument when trials == 0 or unit_value <= 0.
SurvivalComparison survival_comparison(const HarmParams& params, double unit_value,
                                       const FragmentWeights& weights,
                                       const ParetoParams& error_model,
                                       std::uint64_t trials, std::uint64_t seed);

}  // namespace fragrisk
