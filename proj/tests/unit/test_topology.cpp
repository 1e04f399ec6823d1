#include "fragrisk/oracles.hpp"
#include "fragrisk/topology.hpp"
#include "fragrisk/topology_format.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <random>

using namespace fragrisk;

namespace {

std::size_t count_links(const Topology& t, Role a, Role b) {
    std::size_t n = 0;
    for (const auto& [x, y] : t.links()) {
        const Role rx = t.devices()[x].role;
        const Role ry = t.devices()[y].role;
        if ((rx == a && ry == b) || (rx == b && ry == a)) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("three-tier construction") {
    const Topology t = build_three_tier({2, 2, 2, 1, false});
    CHECK(t.form() == TopologyForm::three_tier);
    CHECK(t.count_role(Role::core) == 2);
    CHECK(t.count_role(Role::distribution) == 2);
    CHECK(t.count_role(Role::access) == 4);
    CHECK(count_links(t, Role::core, Role::core) == 1);
    CHECK(count_links(t, Role::core, Role::distribution) == 4);
    CHECK(count_links(t, Role::distribution, Role::access) == 4);
    CHECK(t.links().size() == 9);
    CHECK(t.hosts().size() == 4);

    const Topology minimal = build_three_tier({1, 1, 1, 1, false});
    CHECK(minimal.devices().size() == 3);
    CHECK(minimal.links().size() == 2);
    CHECK(count_links(minimal, Role::core, Role::core) == 0);

    CHECK_THROWS_WITH_AS(build_three_tier({3, 1, 1, 1, false}),
                         doctest::Contains("more than 2 core"), std::invalid_argument);
    CHECK_THROWS_AS(build_three_tier({0, 1, 1, 1, false}), std::invalid_argument);
    CHECK_THROWS_AS(build_three_tier({1, 1, 0, 1, false}), std::invalid_argument);

    const Topology dual = build_three_tier({2, 3, 2, 1, true});
    CHECK(count_links(dual, Role::distribution, Role::access) == 12);
}

TEST_CASE("spine-leaf construction") {
    const Topology t = build_spine_leaf({2, 4, 10, {}});
    CHECK(t.form() == TopologyForm::spine_leaf);
    CHECK(t.devices().size() == 6);
    CHECK(t.links().size() == 8);
    CHECK(t.hosts().size() == 40);
    CHECK(count_links(t, Role::spine, Role::spine) == 0);
    CHECK(count_links(t, Role::leaf, Role::leaf) == 0);

    const Topology one = build_spine_leaf({1, 1, 1, {}});
    CHECK(one.links().size() == 1);
    CHECK(one.hosts().size() == 1);

    const Topology tagged = build_spine_leaf({1, 3, 1, {LeafFunction::border, LeafFunction::dmz}});
    CHECK(tagged.devices()[1].function == LeafFunction::border);
    CHECK(tagged.devices()[3].function == LeafFunction::border);
}

TEST_CASE("assemble rejects form violations") {
    using D = Device;
    auto spine = [](const char* id) { return D{id, Role::spine, std::nullopt}; };
    auto leaf = [](const char* id) { return D{id, Role::leaf, std::nullopt}; };
    CHECK_THROWS_AS(Topology::assemble({spine("s1"), spine("s2")}, {{"s1", "s2"}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({leaf("l1"), leaf("l2")}, {{"l1", "l2"}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({spine("s1"), leaf("l1")}, {{"s1", "s1"}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({spine("s1"), leaf("l1")}, {{"s1", "l1"}, {"l1", "s1"}}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({spine("s1"), spine("s1")}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({spine("s1"), leaf("l1")}, {}, {{"h", std::string("s1")}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({spine("s1"), D{"c", Role::core, std::nullopt}}, {}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({D{"s", Role::spine, LeafFunction::dmz}}, {}, {}), std::invalid_argument);

    const D c1{"c1", Role::core, std::nullopt}, c2{"c2", Role::core, std::nullopt};
    const D c3{"c3", Role::core, std::nullopt}, a1{"a1", Role::access, std::nullopt};
    CHECK_THROWS_AS(Topology::assemble({c1, c2}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({c1, c2, c3}, {{"c1", "c2"}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(Topology::assemble({c1, a1}, {{"c1", "a1"}}, {}), std::invalid_argument);
}

TEST_CASE("hop histogram") {
    SUBCASE("spine-leaf inter-leaf pairs are 2 hops") {
        const HopHistogram h = hop_histogram(build_spine_leaf({2, 4, 1, {}}));
        CHECK(h.pairs_by_hops == std::map<int, std::uint64_t>{{2, 6}});
        CHECK(h.unreachable == 0);
    }
    SUBCASE("3-tier cross-distribution pairs are 4 hops") {
        const HopHistogram h = hop_histogram(build_three_tier({2, 2, 2, 1, false}));
        CHECK(h.pairs_by_hops == std::map<int, std::uint64_t>{{2, 2}, {4, 4}});
    }
    SUBCASE("same device pairs are 0 hops") {
        const HopHistogram h = hop_histogram(build_spine_leaf({1, 1, 3, {}}));
        CHECK(h.pairs_by_hops == std::map<int, std::uint64_t>{{0, 3}});
    }
    SUBCASE("detached and disconnected pairs are unreachable") {
        const Topology t = build_spine_leaf({1, 3, 1, {}});
        const HopHistogram h = hop_histogram(inject_failures(t, {"spine1"}));
        CHECK(h.unreachable == 3);
        const HopHistogram d = hop_histogram(inject_failures(t, {"leaf1"}));
        CHECK(d.unreachable == 2);
        CHECK(d.pairs_by_hops == std::map<int, std::uint64_t>{{2, 1}});
    }
    SUBCASE("property: spine-leaf never above 2 hops") {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const Topology t = build_spine_leaf({1 + static_cast<int>(s % 4), 1 + static_cast<int>(s % 9), 2, {}});
            for (const auto& [hops, count] : hop_histogram(t).pairs_by_hops) CHECK(hops <= 2);
        }
    }
}

TEST_CASE("failure injection and affected fraction") {
    const Topology sl = build_spine_leaf({2, 4, 1, {}});
    const Topology tt = build_three_tier({2, 2, 2, 1, false});

    CHECK(inject_failures(sl, {}) == sl);
    CHECK(affected_fraction(sl, FailureSet{}) == 0.0);
    CHECK(affected_fraction(sl, FailureSet{"leaf2"}) == 0.5);
    CHECK(affected_fraction(sl, FailureSet{"spine1"}) == 0.0);
    CHECK(affected_fraction(sl, FailureSet{"spine1", "spine2"}) == 1.0);
    CHECK_THROWS_AS(inject_failures(sl, {"nope"}), std::invalid_argument);
    CHECK_THROWS_AS(affected_fraction(sl, FailureSet{"nope"}), std::invalid_argument);

    const Topology damaged = inject_failures(sl, {"spine1"});
    CHECK(damaged.devices().size() == 5);
    CHECK(damaged.links().size() == 4);
    const Topology no_leaf = inject_failures(sl, {"leaf1"});
    CHECK_FALSE(no_leaf.hosts()[0].device.has_value());

    // Dual core failure: the four cross-distribution pairs are cut.
    CHECK(affected_fraction(tt, FailureSet{"core1", "core2"}) == doctest::Approx(4.0 / 6.0));
    CHECK(affected_fraction(tt, FailureSet{"dist1"}) == doctest::Approx(5.0 / 6.0));
    CHECK(affected_fraction(build_spine_leaf({1, 1, 1, {}}), FailureSet{"leaf1"}) == 0.0);

    SUBCASE("property: agrees with per-pair BFS and is monotone") {
        std::mt19937_64 rng(1234);
        for (std::uint64_t i = 0; i < 200; ++i) {
            const Topology t = oracles::random_fabric(i, 50);
            CHECK(t.devices().size() <= 50);
            std::vector<bool> mask(t.devices().size(), false);
            double previous = 0.0;
            std::vector<std::size_t> order(mask.size());
            for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t j = 0; j < order.size(); j += 1 + order.size() / 6) {
                mask[order[j]] = true;
                const double f = affected_fraction(t, mask);
                CHECK(f == oracles::brute_force_affected_fraction(t, mask));
                CHECK(f >= previous);
                previous = f;
            }
        }
    }
}

TEST_CASE("failure harm monte carlo") {
    const HarmParams h(1, 1.5);
    const Topology sl = build_spine_leaf({2, 4, 1, {}});
    const Topology tt = build_three_tier({2, 2, 2, 1, false});

    CHECK(failure_harm_mc(sl, FailureModel::uniform(0.0), h, 100, 1).expected_harm == 0.0);
    const auto all = failure_harm_mc(tt, FailureModel::uniform(1.0), HarmParams(2.5, 1.5), 100, 1);
    CHECK(all.expected_harm == -2.5);
    CHECK(all.p50 == -2.5);
    CHECK_THROWS_AS(FailureModel().set(Role::leaf, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(failure_harm_mc(sl, FailureModel::uniform(0.1), h, 0, 1), std::invalid_argument);

    SUBCASE("matches exhaustive enumeration within 3 standard errors") {
        const FailureModel fm = FailureModel::uniform(0.05);
        // Frozen from an independent enumeration over all 2^n failure patterns.
        const double exact_sl = -0.07372662996468596;
        const double exact_tt = -0.1425911042039032;
        CHECK(oracles::exhaustive_failure_harm(sl, fm, h).mean == doctest::Approx(exact_sl).epsilon(1e-12));
        CHECK(oracles::exhaustive_failure_harm(tt, fm, h).mean == doctest::Approx(exact_tt).epsilon(1e-12));

        for (const auto& [t, exact] : {std::pair{&sl, exact_sl}, std::pair{&tt, exact_tt}}) {
            const auto mc = failure_harm_mc(*t, fm, h, 100000, 2024);
            const double se = std::sqrt(oracles::exhaustive_failure_harm(*t, fm, h).variance / 1e5);
            CHECK(std::abs(mc.expected_harm - exact) <= 3.0 * se);
            CHECK(mc.p50 >= mc.p90);
            CHECK(mc.p90 >= mc.p99);
        }
        CHECK(std::abs(exact_sl) < std::abs(exact_tt));
    }
    SUBCASE("deterministic per seed") {
        const auto a = failure_harm_mc(tt, FailureModel::uniform(0.2), h, 2000, 9);
        const auto b = failure_harm_mc(tt, FailureModel::uniform(0.2), h, 2000, 9);
        CHECK(a.expected_harm == b.expected_harm);
        CHECK(a.p99 == b.p99);
    }
}

TEST_CASE("topology text format") {
    const Topology sl = build_spine_leaf({2, 2, 1, {LeafFunction::border}});
    const std::string text = emit_topology(sl);
    CHECK(text ==
          "fragrisk-topology v1\n"
          "spine1 spine\n"
          "spine2 spine\n"
          "leaf1 leaf border\n"
          "leaf2 leaf border\n"
          "spine1 -- leaf1\n"
          "spine2 -- leaf1\n"
          "spine1 -- leaf2\n"
          "spine2 -- leaf2\n"
          "host h1 @ leaf1\n"
          "host h2 @ leaf2\n");

    SUBCASE("property: parse after emit is the identity") {
        for (std::uint64_t i = 0; i < 100; ++i) {
            const Topology t = oracles::random_fabric(1000 + i, 40);
            const auto mask = oracles::random_failure_mask(t, 0.2, i);
            FailureSet failed;
            for (std::size_t j = 0; j < mask.size(); ++j) {
                if (mask[j]) failed.insert(t.devices()[j].id);
            }
            const Topology damaged = inject_failures(t, failed);
            CHECK(parse_topology(emit_topology(t)) == t);
            CHECK(parse_topology(emit_topology(damaged)) == damaged);
            CHECK(emit_topology(parse_topology(emit_topology(damaged))) == emit_topology(damaged));
        }
    }
    SUBCASE("comments, blanks and tabs") {
        const Topology t = parse_topology("# fabric\n\nfragrisk-topology v1\r\nc1\tcore\n  d1 distribution\n"
                                          "a1 access\nc1 -- d1\nd1 -- a1\nhost x @ a1\nhost y @ -\n");
        CHECK(t.form() == TopologyForm::three_tier);
        CHECK(t.hosts().size() == 2);
        CHECK_FALSE(t.hosts()[1].device.has_value());
    }
    SUBCASE("errors carry line numbers") {
        CHECK_THROWS_AS(parse_topology("spine1 spine\n"), TopologyParseError);
        CHECK_THROWS_AS(parse_topology("fragrisk-topology v2\n"), TopologyParseError);
        CHECK_THROWS_AS(parse_topology(""), TopologyParseError);
        try {
            parse_topology("fragrisk-topology v1\ns1 spine\nl1 router\n");
            FAIL("expected a parse error");
        } catch (const TopologyParseError& e) {
            CHECK(e.line() == 3);
        }
        CHECK_THROWS_AS(parse_topology("fragrisk-topology v1\ns1 spine\ns2 spine\ns1 -- s2\n"), TopologyParseError);
        CHECK_THROWS_AS(parse_topology("fragrisk-topology v1\nl1 leaf nowhere\n"), TopologyParseError);
        CHECK_THROWS_AS(parse_topology("fragrisk-topology v1\nhost h1 leaf1\n"), TopologyParseError);
        CHECK_THROWS_AS(parse_topology("fragrisk-topology v1\na b c d e\n"), TopologyParseError);
    }
}
