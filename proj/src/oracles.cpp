#include "fragrisk/oracles.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>

#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace fragrisk::oracles {

double erf_series(double x) {
    const long double y = std::abs(static_cast<long double>(x));
    const long double two_y2 = 2.0L * y * y;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int n = 1; n < 2000; ++n) {
        term *= two_y2 / static_cast<long double>(2 * n + 1);
        sum += term;
        if (term < sum * 1e-21L) break;
    }
    const long double value =
        2.0L * y / std::sqrt(std::numbers::pi_v<long double>) * std::exp(-y * y) * sum;
    return static_cast<double>(x < 0 ? -value : value);
}

namespace {

// Double-exponential rules: exp-sinh for a half-infinite range, tanh-sinh
// for a finite one. Both tolerate the power-law endpoint behaviour here.
template <class F>
Integral integrate(F f, double lo, double hi) {
    double error = 0.0;
    double value = 0.0;
    if (std::isinf(lo) || std::isinf(hi)) {
        boost::math::quadrature::exp_sinh<double> rule;
        value = rule.integrate(f, lo, hi, 1e-12, &error);
    } else {
        boost::math::quadrature::tanh_sinh<double> rule;
        value = rule.integrate(f, lo, hi, 1e-12, &error);
    }
    return {value, error};
}

}  // namespace

Integral density_integral(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                          double lo, double hi) {
    return integrate([&](double xi) { return fragment_harm_density(p, h, frag, xi); }, lo, hi);
}

Integral density_normalization(const ParetoParams& p, const HarmParams& h, FragmentCount frag) {
    const double bound = -h.k() * std::pow(p.scale() / static_cast<double>(frag.value()), h.beta());
    return density_integral(p, h, frag, -std::numeric_limits<double>::infinity(), bound);
}

Integral first_moment(const ParetoParams& p, const HarmParams& h, FragmentCount frag, double hi) {
    return integrate([&](double xi) { return xi * fragment_harm_density(p, h, frag, xi); },
                     -std::numeric_limits<double>::infinity(), hi);
}

HistogramCheck histogram_check(const ParetoParams& p, const HarmParams& h, FragmentCount frag,
                               std::size_t samples, std::size_t bins, std::uint64_t seed) {
    if (samples == 0 || bins == 0) {
        throw std::invalid_argument("histogram needs samples and bins");
    }
    const double n = static_cast<double>(frag.value());
    // P(xi <= z) = (L / x)^alpha with x = N (-z/k)^(1/beta); invert at q.
    auto edge = [&](double q) {
        const double x = p.scale() * std::pow(q, -1.0 / p.alpha());
        return -h.k() * std::pow(x / n, h.beta());
    };
    std::vector<double> edges(bins + 1);
    edges.front() = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < bins; ++j) {
        edges[j] = edge(static_cast<double>(j) / static_cast<double>(bins));
    }
    edges.back() = edge(1.0);

    std::vector<double> expected(bins);
    HistogramCheck out;
    for (std::size_t j = 0; j < bins; ++j) {
        expected[j] = density_integral(p, h, frag, edges[j], edges[j + 1]).value;
        out.max_bin_mass_error = std::max(out.max_bin_mass_error,
                                          std::abs(expected[j] - 1.0 / static_cast<double>(bins)));
    }

    std::vector<std::size_t> counts(bins, 0);
    for (double x : pareto_sample(p, samples, seed)) {
        const double xi = -h.k() * std::pow(x / n, h.beta());
        const auto it = std::upper_bound(edges.begin() + 1, edges.end() - 1, xi);
        ++counts[static_cast<std::size_t>(it - (edges.begin() + 1))];
    }
    for (std::size_t j = 0; j < bins; ++j) {
        out.l1_distance +=
            std::abs(static_cast<double>(counts[j]) / static_cast<double>(samples) - expected[j]);
    }
    return out;
}

double brute_force_affected_fraction(const Topology& t, const std::vector<bool>& failed_mask) {
    const auto& devices = t.devices();
    std::vector<std::vector<std::size_t>> adjacency(devices.size());
    for (const auto& [a, b] : t.links()) {
        if (failed_mask[a] || failed_mask[b]) continue;
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }
    auto reachable = [&](std::size_t from, std::size_t to) {
        std::vector<bool> seen(devices.size(), false);
        std::deque<std::size_t> queue{from};
        seen[from] = true;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            if (u == to) return true;
            for (std::size_t v : adjacency[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        return false;
    };

    const auto& hosts = t.hosts();
    std::uint64_t pairs = 0;
    std::uint64_t broken = 0;
    for (std::size_t i = 0; i < hosts.size(); ++i) {
        for (std::size_t j = i + 1; j < hosts.size(); ++j) {
            ++pairs;
            const auto& a = hosts[i].device;
            const auto& b = hosts[j].device;
            if (!a || !b || failed_mask[*a] || failed_mask[*b] || !reachable(*a, *b)) ++broken;
        }
    }
    return pairs == 0 ? 0.0 : static_cast<double>(broken) / static_cast<double>(pairs);
}

ExactMoments exhaustive_failure_harm(const Topology& t, const FailureModel& fm,
                                     const HarmParams& h) {
    const std::size_t n = t.devices().size();
    if (n > 20) {
        throw std::invalid_argument("exhaustive enumeration limited to 20 devices");
    }
    std::vector<double> prob(n);
    for (std::size_t i = 0; i < n; ++i) prob[i] = fm.probability(t.devices()[i].role);

    double mean = 0.0;
    double second = 0.0;
    std::vector<bool> mask(n);
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n); ++pattern) {
        double weight = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            mask[i] = (pattern >> i) & 1U;
            weight *= mask[i] ? prob[i] : 1.0 - prob[i];
        }
        if (weight == 0.0) continue;
        const double x = brute_force_affected_fraction(t, mask);
        const double value = -h.k() * std::pow(x, h.beta());
        mean += weight * value;
        second += weight * value * value;
    }
    return {mean, std::max(0.0, second - mean * mean)};
}

Topology random_fabric(std::uint64_t seed, std::size_t max_devices) {
    if (max_devices < 2) {
        throw std::invalid_argument("random fabric needs room for at least 2 devices");
    }
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    const int cap = static_cast<int>(max_devices);
    for (;;) {
        if (rng() % 2 == 0) {
            SpineLeafSpec spec;
            spec.spines = pick(1, std::min(6, cap - 1));
            spec.leaves = pick(1, std::min(30, cap - spec.spines));
            spec.hosts_per_leaf = pick(1, 3);
            return build_spine_leaf(spec);
        }
        ThreeTierSpec spec;
        spec.cores = pick(1, 2);
        spec.distributions = pick(1, 6);
        spec.access_per_distribution = pick(1, 6);
        spec.hosts_per_access = pick(1, 3);
        spec.dual_homed = rng() % 3 == 0;
        const int devices =
            spec.cores + spec.distributions + spec.distributions * spec.access_per_distribution;
        if (devices <= cap) return build_three_tier(spec);
    }
}

std::vector<bool> random_failure_mask(const Topology& t, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<bool> mask(t.devices().size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
    }
    return mask;
}

}  // namespace fragrisk::oracles
