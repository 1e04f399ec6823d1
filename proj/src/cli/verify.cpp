#include "fragrisk/cli/verify.hpp"

#include "fragrisk/cli/commands.hpp"
#include "fragrisk/costing.hpp"
#include "fragrisk/growth.hpp"
#include "fragrisk/harm_model.hpp"
#include "fragrisk/oracles.hpp"
#include "fragrisk/pareto_risk.hpp"
#include "fragrisk/report.hpp"
#include "fragrisk/topology.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fragrisk::cli {

namespace {

double relative_error(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

CheckResult at_most(std::string name, double measured, double tolerance, std::string detail = {}) {
    return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

struct GridPoint {
    double alpha;
    double beta;
    std::int64_t n;
};

std::vector<GridPoint> density_grid() {
    std::vector<GridPoint> grid;
    for (double alpha : {1.5, 2.0, 4.0}) {
        for (double beta : {1.0, 1.5, 2.0, 3.0}) {
            if (!(alpha > beta)) continue;
            for (std::int64_t n : {1, 2, 5}) grid.push_back({alpha, beta, n});
        }
    }
    return grid;
}

void tail_mean_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    const ParetoParams p(4.0, 1.0);
    const HarmParams h(1.0, 1.5);
    for (std::int64_t n : {1, 2, 5}) {
        const FragmentCount frag(n);
        const double closed = tail_mean(p, h, frag);
        const double mc = mc_tail_mean(p, h, frag, 1000000, seed + static_cast<std::uint64_t>(n));
        out.push_back(at_most("tail mean closed form vs monte carlo (N=" + std::to_string(n) + ")",
                              relative_error(mc, closed), 0.02,
                              "closed=" + format_number(closed, 8) + " mc=" + format_number(mc, 8)));
    }
}

void density_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    double worst_norm = 0.0;
    double worst_l1 = 0.0;
    double worst_moment = 0.0;
    std::uint64_t stream = seed;
    for (const auto& g : density_grid()) {
        const ParetoParams p(g.alpha, 1.0);
        const HarmParams h(1.0, g.beta);
        const FragmentCount frag(g.n);
        worst_norm = std::max(worst_norm,
                              std::abs(oracles::density_normalization(p, h, frag).value - 1.0));
        worst_l1 = std::max(worst_l1,
                            oracles::histogram_check(p, h, frag, 100000, 50, ++stream).l1_distance);
        const double moment = oracles::first_moment(p, h, frag, tail_threshold(p, h, frag)).value;
        worst_moment = std::max(worst_moment, relative_error(moment, tail_mean(p, h, frag)));
    }
    const std::string grid = std::to_string(density_grid().size()) + " (alpha,beta,N) points";
    out.push_back(at_most("fragment harm density integrates to 1", worst_norm, 1e-6, grid));
    out.push_back(at_most("fragment harm histogram L1 distance (1e5 samples, 50 bins)", worst_l1,
                          0.05, grid));
    out.push_back(at_most("tail mean closed form vs quadrature", worst_moment, 1e-6, grid));
}

void ratio_checks(std::vector<CheckResult>& out) {
    const ParetoParams p(2.0, 1.0);
    const HarmParams h(1.0, 1.5);
    double worst = 0.0;
    for (double K : {2.0, 3.0, 4.0}) {
        for (std::int64_t n : {1, 2}) {
            const FragmentCount frag(n);
            const double identity = K * tail_mean(p, h, FragmentCount(static_cast<std::int64_t>(K) * n)) /
                                    tail_mean(p, h, frag);
            worst = std::max(worst, relative_error(identity, degradation_ratio(p, h, K, frag)));
        }
    }
    out.push_back(at_most("degradation ratio identity K M(KN)/M(N)", worst, 1e-12));

    std::vector<double> ks;
    for (int k = 1; k <= 16; ++k) ks.push_back(k);
    const auto curve = degradation_curve(p, h, ks);
    bool decreasing = true;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        decreasing = decreasing && curve[i].ratio < curve[i - 1].ratio;
    }
    const double at_two = curve[1].ratio;
    const double err = std::abs(at_two - std::pow(2.0, -2.0 / 3.0));
    out.push_back({"degradation curve beta=1.5 alpha=2 decreasing, ~0.63 at K=2",
                   decreasing && err <= 1e-6 && std::abs(at_two - 0.63) < 0.005, err, 1e-6,
                   "ratio(2)=" + format_number(at_two, 8)});
}

void jensen_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    auto simplex = [&]() {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> w(n);
        double total = 0.0;
        for (double& wi : w) {
            wi = -std::log(1.0 - uniform(0.0, 1.0));
            total += wi;
        }
        for (double& wi : w) wi /= total;
        return FragmentWeights(std::move(w));
    };
    int convex_violations = 0;
    double worst_convex = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const HarmParams h(10.0 - uniform(0.0, 10.0), uniform(1.0, 4.0));
        const double gap = jensen_gap(h, simplex(), 100.0 - uniform(0.0, 100.0));
        worst_convex = std::min(worst_convex, gap);
        if (gap < -1e-12) ++convex_violations;
    }
    out.push_back({"jensen gap >= 0 for beta in [1,4] (1000 draws)", convex_violations == 0,
                   -worst_convex, 1e-12, std::to_string(convex_violations) + " violations"});

    int concave_violations = 0;
    double worst_concave = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double beta = uniform(0.0, 1.0);
        if (beta == 0.0) beta = 0.5;
        const HarmParams h(10.0 - uniform(0.0, 10.0), beta);
        const double gap = jensen_gap(h, simplex(), 100.0 - uniform(0.0, 100.0));
        worst_concave = std::max(worst_concave, gap);
        if (gap > 1e-12) ++concave_violations;
    }
    out.push_back({"jensen gap <= 0 for beta in (0,1) (1000 draws)", concave_violations == 0,
                   worst_concave, 1e-12, std::to_string(concave_violations) + " violations"});
}

void survival_check(std::vector<CheckResult>& out, std::uint64_t seed) {
    const auto result = survival_comparison(HarmParams(1.0, 2.0), 10.0,
                                            FragmentWeights({0.5, 0.5}), ParetoParams(4.0, 1.0),
                                            1000000, seed);
    const double deviation = std::abs(result.difference() - 1.0);
    out.push_back({"survival comparison difference vs analytic 1.0 (3 standard errors)",
                   deviation <= 3.0 * result.difference_std_error, deviation,
                   3.0 * result.difference_std_error,
                   "difference=" + format_number(result.difference(), 8)});
}

void topology_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Topology t = oracles::random_fabric(seed + i, 50);
        for (double p : {0.0, 0.1, 0.3, 0.6}) {
            const auto mask = oracles::random_failure_mask(t, p, seed * 31 + i);
            worst = std::max(worst, std::abs(affected_fraction(t, mask) -
                                             oracles::brute_force_affected_fraction(t, mask)));
        }
    }
    out.push_back(at_most("affected fraction vs per-pair BFS (200 random fabrics)", worst, 1e-12));

    const HarmParams h(1.0, 1.5);
    const FailureModel fm = FailureModel::uniform(0.05);
    const Topology sl = build_spine_leaf({2, 4, 1, {}});
    const Topology tt = build_three_tier({2, 2, 2, 1, false});
    double harms[2] = {0.0, 0.0};
    int idx = 0;
    for (const auto* entry : {&sl, &tt}) {
        const auto exact = oracles::exhaustive_failure_harm(*entry, fm, h);
        const auto mc = failure_harm_mc(*entry, fm, h, 100000, seed + 7);
        const double se = std::sqrt(exact.variance / 100000.0);
        const double deviation = std::abs(mc.expected_harm - exact.mean);
        out.push_back({std::string("failure harm monte carlo vs exhaustive (") +
                           (idx == 0 ? "spine_leaf(2,4,1)" : "three_tier(2,2,2,1)") + ")",
                       deviation <= 3.0 * se, deviation, 3.0 * se,
                       "exact=" + format_number(exact.mean, 8) +
                           " mc=" + format_number(mc.expected_harm, 8)});
        harms[idx++] = exact.mean;
    }
    out.push_back({"spine-leaf expected harm magnitude below 3-tier", std::abs(harms[0]) < std::abs(harms[1]),
                   std::abs(harms[0]), std::abs(harms[1]), ""});

    const HopHistogram sl_hops = hop_histogram(build_spine_leaf({2, 4, 1, {}}));
    out.push_back({"spine-leaf inter-leaf pairs at exactly 2 hops",
                   sl_hops.pairs_by_hops == std::map<int, std::uint64_t>{{2, 6}} &&
                       sl_hops.unreachable == 0,
                   0.0, 0.0, ""});
    const HopHistogram tt_hops = hop_histogram(tt);
    out.push_back({"3-tier cross-distribution pairs at 4 hops",
                   tt_hops.pairs_by_hops == std::map<int, std::uint64_t>{{2, 2}, {4, 4}}, 0.0, 0.0,
                   ""});
    const double spine_loss = affected_fraction(sl, FailureSet{"spine1"});
    out.push_back(at_most("single spine failure leaves every pair connected", spine_loss, 0.0));
    const HopHistogram no_core = hop_histogram(inject_failures(tt, FailureSet{"core1", "core2"}));
    out.push_back({"dual core failure disconnects every cross-distribution pair",
                   no_core.unreachable == 4 &&
                       no_core.pairs_by_hops == std::map<int, std::uint64_t>{{2, 2}},
                   static_cast<double>(no_core.unreachable), 4.0, ""});
}

void growth_checks(std::vector<CheckResult>& out, std::uint64_t seed) {
    double oracle_err = 0.0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -6.0 + 12.0 * (i + 0.5) / 1000.0;
        const double reference = oracles::erf_series(x);
        oracle_err = std::max(oracle_err, relative_error(reference, std::erf(x)));
        worst = std::max(worst, relative_error(erf_value(x), reference));
    }
    out.push_back(at_most("erf series oracle agrees with libm", oracle_err, 1e-12));
    out.push_back(at_most("erf relative error on [-6,6] (1000 points)", worst, 1e-7));

    std::mt19937_64 rng(seed);
    const GrowthSpec sig = SigmoidGrowth{100.0};
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        const double u = 20.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double c = capacity_at(sig, u);
        if (c > 100.0 || c < 0.0 || capacity_at(sig, u + 0.01) < c) ++violations;
    }
    out.push_back({"sigmoid capacity bounded and nondecreasing (1e4 inputs)", violations == 0,
                   static_cast<double>(violations), 0.0, ""});

    const double u = crossover(SigmoidGrowth{100.0}, LinearGrowth{1});
    out.push_back({"crossover for saturation 100, 1 port per switch in [99,101]",
                   u >= 99.0 && u <= 101.0, u, 101.0, ""});
}

void costing_check(std::vector<CheckResult>& out) {
    PortsByRole ports;
    for (Role r : kAllRoles) ports[r] = 48;
    const auto report = compare_designs(build_three_tier({2, 2, 2, 1, false}),
                                        build_spine_leaf({2, 4, 1, {}}), CostAssumptions{}, ports);
    const double price = report.number_at("price_per_port", "b_over_a");
    const double watts = report.number_at("watts_per_port", "b_over_a");
    out.push_back({"fixed-port price and watts per port at 0.25 of modular",
                   price == 0.25 && watts == 0.25, std::max(std::abs(price - 0.25), std::abs(watts - 0.25)),
                   0.0, "price=" + format_number(price, 8) + " watts=" + format_number(watts, 8)});
}

void determinism_check(std::vector<CheckResult>& out, std::uint64_t seed) {
    const std::string s = std::to_string(seed);
    const std::vector<std::vector<std::string>> invocations = {
        {"harm-curve"},
        {"jensen", "--trials", "20000", "--seed", s},
        {"risk", "density", "--xi", "-1"},
        {"risk", "tail-mean", "--mc", "--trials", "20000", "--seed", s},
        {"risk", "ratio", "--alpha", "2", "--beta", "1.5", "--K", "2"},
        {"risk", "curve"},
        {"topo", "build", "--kind", "spine-leaf"},
        {"topo", "hops", "--kind", "three-tier"},
        {"topo", "fail", "--kind", "spine-leaf", "--fail", "leaf1"},
        {"topo", "harm", "--trials", "5000", "--seed", s, "--p", "0.05"},
        {"growth"},
        {"compare"},
    };
    int mismatches = 0;
    std::string failed;
    for (const auto& args : invocations) {
        std::ostringstream a, b, ea, eb;
        const int ra = run(args, a, ea);
        const int rb = run(args, b, eb);
        if (ra != 0 || rb != 0 || a.str() != b.str() || a.str().empty()) {
            ++mismatches;
            failed += args.front() + (args.size() > 1 ? " " + args[1] : "") + "; ";
        }
    }
    out.push_back({"subcommand output is byte-identical across runs", mismatches == 0,
                   static_cast<double>(mismatches), 0.0, failed});
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    const std::uint64_t seed = options.seed;
    tail_mean_checks(out, seed);
    density_checks(out, seed);
    ratio_checks(out);
    jensen_checks(out, seed);
    survival_check(out, seed);
    topology_checks(out, seed);
    growth_checks(out, seed);
    costing_check(out);
    if (options.cli_determinism) determinism_check(out, seed);
    return out;
}

}  // namespace fragrisk::cli
