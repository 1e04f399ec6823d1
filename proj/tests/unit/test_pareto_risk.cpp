#include "fragrisk/oracles.hpp"
#include "fragrisk/pareto_risk.hpp"
#include "fragrisk/stats.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>

using namespace fragrisk;

TEST_CASE("pareto density") {
    CHECK(pareto_density(ParetoParams(2, 1), 1.0) == 2.0);
    CHECK(pareto_density(ParetoParams(2, 1), 0.5) == 0.0);
    CHECK(pareto_density(ParetoParams(1, 1), 2.0) == 0.25);
    CHECK_THROWS_AS(ParetoParams(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ParetoParams(1, -1), std::invalid_argument);
}

TEST_CASE("pareto sampler") {
    CHECK(pareto_quantile(ParetoParams(3, 2), 0.0) == 2.0);
    CHECK(pareto_sample(ParetoParams(2, 1), 100, 5) == pareto_sample(ParetoParams(2, 1), 100, 5));

    SUBCASE("mean of alpha=2 sample within 3 standard errors of 2") {
        RunningStats stats;
        for (double x : pareto_sample(ParetoParams(2, 1), 1000000, 17)) {
            CHECK_FALSE(x < 1.0);
            stats.add(x);
        }
        // Infinite variance at alpha=2 makes the sample standard error an
        // underestimate; it is still the stated yardstick.
        CHECK(std::abs(stats.mean() - 2.0) <= 3.0 * stats.std_error());
    }
    SUBCASE("survival at 4 for alpha=3, L=2") {
        RunningStats stats;
        for (double x : pareto_sample(ParetoParams(3, 2), 1000000, 23)) stats.add(x > 4.0 ? 1.0 : 0.0);
        CHECK(std::abs(stats.mean() - 0.125) <= 3.0 * stats.std_error());
    }
}

TEST_CASE("fragment harm density") {
    const HarmParams h(1, 2);
    CHECK(fragment_harm_density(ParetoParams(2, 1), h, FragmentCount(1), -1.0) == doctest::Approx(1.0));

    const ParetoParams p(4, 1.5);
    const HarmParams h2(2, 1.5);
    const FragmentCount frag(3);
    const double bound = fragment_harm_support_bound(p, h2, frag);
    CHECK(fragment_harm_density(p, h2, frag, bound / 2) == 0.0);
    CHECK(fragment_harm_density(p, h2, frag, 0.0) == 0.0);
    CHECK(fragment_harm_density(p, h2, frag, 1.0) == 0.0);
    CHECK(fragment_harm_density(p, h2, frag, bound) > 0.0);
    CHECK_THROWS_AS(fragment_harm_density(p, HarmParams(1, 0), frag, -1.0), std::invalid_argument);

    SUBCASE("change of variables matches the Pareto density") {
        // g(xi) = rho(x) |dx/dxi| with x = N (-xi/k)^(1/beta), by finite differences.
        for (double x : {1.5, 2.0, 5.0, 40.0}) {
            const double n = 3.0;
            const auto xi_of = [&](double e) { return -2.0 * std::pow(e / n, 1.5); };
            const double step = 1e-6 * x;
            const double dxi = xi_of(x + step) - xi_of(x - step);
            const double expected = pareto_density(p, x) * 2.0 * step / std::abs(dxi);
            CHECK(fragment_harm_density(p, h2, frag, xi_of(x)) == doctest::Approx(expected).epsilon(1e-6));
        }
    }
    SUBCASE("normalization example alpha=4 beta=1.5 N=2") {
        const auto integral = oracles::density_normalization(ParetoParams(4, 1), HarmParams(1, 1.5), FragmentCount(2));
        CHECK(std::abs(integral.value - 1.0) <= 1e-6);
    }
    SUBCASE("normalization holds with a non-unit scale") {
        const auto integral = oracles::density_normalization(ParetoParams(2.5, 3.0), HarmParams(0.7, 2.0), FragmentCount(4));
        CHECK(std::abs(integral.value - 1.0) <= 1e-6);
    }
}

TEST_CASE("tail mean closed form") {
    CHECK(tail_mean(ParetoParams(3, 1), HarmParams(1, 1.5), FragmentCount(1)) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(tail_mean(ParetoParams(4, 1), HarmParams(1, 1.5), FragmentCount(2)) ==
          doctest::Approx(-0.31748021039363991).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(tail_mean(ParetoParams(1.5, 1), HarmParams(1, 1.5), FragmentCount(1)),
                         "tail mean diverges", std::domain_error);

    SUBCASE("linear harm: N * M(N) is constant") {
        const ParetoParams p(2.5, 1.3);
        const HarmParams h(0.8, 1.0);
        const double base = tail_mean(p, h, FragmentCount(1));
        for (int n : {2, 3, 10}) {
            CHECK(n * tail_mean(p, h, FragmentCount(n)) == doctest::Approx(base).epsilon(1e-14));
        }
    }
    SUBCASE("margin warning between beta and 1 + beta") {
        CHECK(tail_mean_margin_warning(ParetoParams(2, 1), HarmParams(1, 1.5)));
        CHECK_FALSE(tail_mean_margin_warning(ParetoParams(3, 1), HarmParams(1, 1.5)));
        CHECK_FALSE(tail_mean_margin_warning(ParetoParams(1, 1), HarmParams(1, 1.5)));
    }
}

TEST_CASE("monte carlo tail mean") {
    const ParetoParams p(4, 1);
    const HarmParams h(1, 1.5);
    for (int n : {1, 2}) {
        const double closed = tail_mean(p, h, FragmentCount(n));
        const double mc = mc_tail_mean(p, h, FragmentCount(n), 1000000, 41);
        CHECK(std::abs(mc - closed) / std::abs(closed) <= 0.02);
    }
    SUBCASE("single trial is the clipped draw") {
        const FragmentCount frag(1);
        const double x = pareto_sample(p, 1, 77).front();
        const double xi = -std::pow(x, 1.5);
        const double expected = xi <= tail_threshold(p, h, frag) ? xi : 0.0;
        CHECK(mc_tail_mean(p, h, frag, 1, 77) == expected);
    }
    CHECK_THROWS_AS(mc_tail_mean(p, h, FragmentCount(1), 0, 1), std::invalid_argument);
}

TEST_CASE("degradation ratio") {
    const ParetoParams p(2, 1);
    CHECK(degradation_ratio(p, HarmParams(1, 1.5), 1.0) == 1.0);
    CHECK(degradation_ratio(ParetoParams(3.3, 1), HarmParams(1, 1.0), 7.0) == 1.0);
    CHECK(degradation_ratio(p, HarmParams(1, 1.5), 2.0) == doctest::Approx(0.62996052494743658).epsilon(1e-14));
    CHECK_THROWS_AS(degradation_ratio(p, HarmParams(1, 2.5), 2.0), std::domain_error);
    CHECK_THROWS_AS(degradation_ratio(p, HarmParams(1, 1.5), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(degradation_ratio(p, HarmParams(1, 1.5), 0.5), std::invalid_argument);

    SUBCASE("identity with the tail mean for integral K N") {
        const HarmParams h(1, 1.5);
        for (int K : {2, 3, 4}) {
            for (int n : {1, 2}) {
                const double identity = K * tail_mean(p, h, FragmentCount(K * n)) / tail_mean(p, h, FragmentCount(n));
                CHECK(std::abs(identity / degradation_ratio(p, h, K, FragmentCount(n)) - 1.0) <= 1e-12);
            }
        }
    }
    SUBCASE("property: independent of k and L") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.01, 50.0);
        const double reference = degradation_ratio(ParetoParams(3, 1), HarmParams(1, 2), 3.0);
        for (int i = 0; i < 200; ++i) {
            CHECK(degradation_ratio(ParetoParams(3, u(rng)), HarmParams(u(rng), 2), 3.0) == reference);
        }
    }
    SUBCASE("curve for beta=3/2, alpha=2") {
        const std::vector<double> ks{1, 2, 4, 8};
        const auto rows = degradation_curve(p, HarmParams(1, 1.5), ks);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].ratio == 1.0);
        CHECK(rows[1].ratio == doctest::Approx(0.629960524947437).epsilon(1e-14));
        CHECK(rows[2].ratio == doctest::Approx(0.396850262992050).epsilon(1e-14));
        CHECK(rows[3].ratio == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(std::is_sorted(rows.rbegin(), rows.rend(),
                             [](const auto& a, const auto& b) { return a.ratio < b.ratio; }));
        for (const auto& r : degradation_curve(p, HarmParams(1, 1), ks)) CHECK(r.ratio == 1.0);
    }
}

TEST_CASE("histogram of sampled harm matches the density") {
    const auto check = oracles::histogram_check(ParetoParams(4, 1), HarmParams(1, 1.5), FragmentCount(2),
                                                100000, 50, 3);
    CHECK(check.l1_distance <= 0.05);
    CHECK(check.max_bin_mass_error <= 1e-9);
}

TEST_CASE("closed form departs from the truncated mean below linear harm") {
    // The threshold -k L^beta / N lies above the support for beta < 1, so every
    // draw counts and the truncated mean is the full mean of xi.
    const ParetoParams p(4.0, 1.0);
    const HarmParams h(1.0, 0.5);
    const double full_mean = -std::pow(2.0, -0.5) * 4.0 / 3.5;
    const auto mc = mc_tail_mean_estimate(p, h, FragmentCount(2), 1000000, 5);
    CHECK(std::abs(mc.mean - full_mean) <= 4.0 * mc.std_error);
    CHECK(tail_mean(p, h, FragmentCount(2)) == doctest::Approx(-4.0 * 8.0 / 3.5));
    CHECK(tail_mean(p, h, FragmentCount(1)) == doctest::Approx(-4.0 / 3.5));
}
