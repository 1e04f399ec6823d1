// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include "fragrisk/costing.hpp"
#include "fragrisk/growth.hpp"
#include "fragrisk/harm_model.hpp"
#include "fragrisk/oracles.hpp"
#include "fragrisk/pareto_risk.hpp"
#include "fragrisk/rng.hpp"
#include "fragrisk/topology.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef FRAGRISK_BINARY
#error "FRAGRISK_BINARY must point at the built fragrisk executable"
#endif

using namespace fragrisk;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& what) {
    std::printf("[%s] %s %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void ac1() {
    const ParetoParams p(4.0, 1.0);
    const HarmParams h(1.0, 1.5);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (std::int64_t n : {1, 2, 5}) {
        const FragmentCount frag(n);
        const double mc = mc_tail_mean(p, h, frag, 1000000, kDefaultSeed + static_cast<std::uint64_t>(n));
        worst = std::max(worst, rel(mc, tail_mean(p, h, frag)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report("AC1", worst <= 0.02 && secs <= 10.0,
           "tail mean closed form vs 1e6-trial MC, N in {1,2,5}: worst rel err " + fmt("%.2e", worst) +
               " (<= 0.02), " + fmt("%.2f", secs) + " s (<= 10)");
}

void ac2() {
    double worst_norm = 0.0;
    double worst_l1 = 0.0;
    int points = 0;
    std::uint64_t seed = kDefaultSeed;
    for (double alpha : {1.5, 2.0, 4.0}) {
        for (double beta : {1.0, 1.5, 2.0, 3.0}) {
            if (!(alpha > beta)) continue;
            for (std::int64_t n : {1, 2, 5}) {
                const ParetoParams p(alpha, 1.0);
                const HarmParams h(1.0, beta);
                const FragmentCount frag(n);
                worst_norm = std::max(worst_norm, std::abs(oracles::density_normalization(p, h, frag).value - 1.0));
                worst_l1 = std::max(worst_l1, oracles::histogram_check(p, h, frag, 100000, 50, ++seed).l1_distance);
                ++points;
            }
        }
    }
    report("AC2", worst_norm <= 1e-6 && worst_l1 <= 0.05,
           "density over " + std::to_string(points) + " grid points: |integral-1| " + fmt("%.2e", worst_norm) +
               " (<= 1e-6), histogram L1 " + fmt("%.4f", worst_l1) + " (<= 0.05)");
}

void ac3() {
    const ParetoParams p(4.0, 1.0);
    double worst = 0.0;
    for (double beta : {1.5, 2.0, 3.0}) {
        const HarmParams h(1.0, beta);
        for (int k : {2, 3, 4}) {
            for (std::int64_t n : {1, 2}) {
                const double lhs = k * tail_mean(p, h, FragmentCount(k * n)) / tail_mean(p, h, FragmentCount(n));
                worst = std::max(worst, rel(lhs, std::pow(k, 4.0 * (1.0 / beta - 1.0))));
            }
        }
    }
    const ParetoParams fig(2.0, 1.0);
    const HarmParams h(1.0, 1.5);
    std::vector<double> ks;
    for (int k = 1; k <= 16; ++k) ks.push_back(k);
    const auto curve = degradation_curve(fig, h, ks);
    bool decreasing = true;
    for (std::size_t i = 1; i < curve.size(); ++i) decreasing = decreasing && curve[i].ratio < curve[i - 1].ratio;
    const double at2 = curve[1].ratio;
    const bool ok = worst <= 1e-12 && decreasing && std::abs(at2 - std::pow(2.0, -2.0 / 3.0)) <= 1e-6 &&
                    std::abs(at2 - 0.63) < 0.005;
    report("AC3", ok,
           "ratio identity worst rel err " + fmt("%.2e", worst) + " (<= 1e-12); alpha=2 curve " +
               (decreasing ? "decreasing" : "NOT decreasing") + ", value at K=2 " + fmt("%.9f", at2));
}

FragmentWeights random_simplex(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(1, 8);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> w(static_cast<std::size_t>(len(rng)));
    double sum = 0.0;
    for (double& v : w) sum += (v = e(rng));
    for (double& v : w) v /= sum;
    return FragmentWeights(w);
}

void ac4() {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto open01 = [&] { return 1.0 - u01(rng); };  // (0, 1]
    int convex_violations = 0;
    int concave_violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const HarmParams h(10.0 * open01(), 1.0 + 3.0 * u01(rng));
        const FragmentWeights w = random_simplex(rng);
        if (jensen_gap(h, w, 100.0 * open01()) < -1e-12) ++convex_violations;
    }
    for (int i = 0; i < 1000; ++i) {
        double beta = 0.0;
        while (beta <= 0.0 || beta >= 1.0) beta = u01(rng);
        const HarmParams h(10.0 * open01(), beta);
        const FragmentWeights w = random_simplex(rng);
        if (jensen_gap(h, w, 100.0 * open01()) > 1e-12) ++concave_violations;
    }
    report("AC4", convex_violations == 0 && concave_violations == 0,
           "jensen gap sign: " + std::to_string(convex_violations) + " violations for beta in [1,4], " +
               std::to_string(concave_violations) + " reversed-direction violations for beta in (0,1)");
}

void ac5() {
    const auto s = survival_comparison(HarmParams(1.0, 2.0), 10.0, FragmentWeights({0.5, 0.5}),
                                       ParetoParams(4.0, 1.0), 1000000, kDefaultSeed);
    const double diff = s.difference();
    report("AC5", std::abs(diff - 1.0) <= 3.0 * s.difference_std_error,
           "decentralized - centralized = " + fmt("%.5f", diff) + ", |diff-1| <= 3 SE = " +
               fmt("%.5f", 3.0 * s.difference_std_error));
}

void ac6() {
    int mismatches = 0;
    std::size_t largest = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Topology t = oracles::random_fabric(kDefaultSeed + i, 50);
        largest = std::max(largest, t.devices().size());
        for (double p : {0.1, 0.3}) {
            const auto mask = oracles::random_failure_mask(t, p, i);
            if (affected_fraction(t, mask) != oracles::brute_force_affected_fraction(t, mask)) ++mismatches;
        }
    }
    const HarmParams h(1.0, 1.5);
    const FailureModel fm = FailureModel::uniform(0.05);
    bool mc_ok = true;
    std::string detail;
    for (const auto& [name, t] : {std::pair<const char*, Topology>{"spine_leaf(2,4,1)", build_spine_leaf({2, 4, 1, {}})},
                                  std::pair<const char*, Topology>{"three_tier(2,2,2,1)",
                                                                   build_three_tier({2, 2, 2, 1, false})}}) {
        const auto exact = oracles::exhaustive_failure_harm(t, fm, h);
        const auto mc = failure_harm_mc(t, fm, h, 100000, kDefaultSeed);
        const double se = std::sqrt(exact.variance / 100000.0);
        const bool ok = std::abs(mc.expected_harm - exact.mean) <= 3.0 * se;
        mc_ok = mc_ok && ok;
        detail += std::string(", ") + name + " z=" + fmt("%.2f", (mc.expected_harm - exact.mean) / se);
    }
    report("AC6", mismatches == 0 && largest <= 50 && mc_ok,
           "affected fraction vs per-pair BFS on 200 fabrics: " + std::to_string(mismatches) + " mismatches" + detail);
}

void ac7() {
    const Topology sl = build_spine_leaf({2, 4, 1, {}});
    const Topology tt = build_three_tier({2, 2, 2, 1, false});
    const auto sl_hops = hop_histogram(sl);
    const auto tt_hops = hop_histogram(tt);
    const bool sl_ok = sl_hops.pairs_by_hops == std::map<int, std::uint64_t>{{2, 6}} && sl_hops.unreachable == 0;
    // Hosts h1,h2 sit under dist1; h3,h4 under dist2.
    bool tt_ok = tt_hops.unreachable == 0 && tt_hops.pairs_by_hops.count(4) && tt_hops.pairs_by_hops.at(4) == 4;
    const auto& hosts = tt.hosts();
    for (std::size_t a = 0; a < 2; ++a) {
        const auto dist = bfs_distances(tt, *hosts[a].device);
        for (std::size_t b = 2; b < 4; ++b) tt_ok = tt_ok && dist[*hosts[b].device] == 4;
    }
    const double spine_fail = affected_fraction(sl, FailureSet{"spine1"});
    const double core_fail = affected_fraction(tt, FailureSet{"core1", "core2"});
    const Topology cut = inject_failures(tt, {"core1", "core2"});
    bool cross_cut = true;
    for (std::size_t a = 0; a < 2; ++a) {
        const auto dist = bfs_distances(cut, *cut.hosts()[a].device);
        for (std::size_t b = 2; b < 4; ++b) cross_cut = cross_cut && dist[*cut.hosts()[b].device] < 0;
    }
    report("AC7", sl_ok && tt_ok && spine_fail == 0.0 && cross_cut && std::abs(core_fail - 4.0 / 6.0) < 1e-15,
           std::string("spine-leaf inter-leaf at 2 hops: ") + (sl_ok ? "yes" : "no") +
               "; 3-tier cross-distribution at 4 hops: " + (tt_ok ? "yes" : "no") + "; spine failure affects " +
               fmt("%g", spine_fail) + "; dual-core failure cuts all cross pairs: " + (cross_cut ? "yes" : "no"));
}

void ac8() {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -6.0 + 12.0 * (i + 0.5) / 1000.0;
        worst = std::max(worst, rel(erf_value(x), oracles::erf_series(x)));
    }
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> units(0.0, 1000.0);
    std::uniform_real_distribution<double> sats(1.0, 1e6);
    int above = 0;
    for (int i = 0; i < 10000; ++i) {
        const double sat = sats(rng);
        if (capacity_at(SigmoidGrowth{sat}, units(rng)) > sat) ++above;
    }
    const double u = crossover({100.0}, {1});
    report("AC8", worst <= 1e-7 && above == 0 && u >= 99.0 && u <= 101.0,
           "erf worst rel err " + fmt("%.2e", worst) + " (<= 1e-7); " + std::to_string(above) +
               " capacities above saturation; crossover(sat=100, ports=1) = " + fmt("%.6f", u));
}

void ac9() {
    PortsByRole ports;
    for (Role r : kAllRoles) ports[r] = 48;
    const auto r = compare_designs(build_three_tier({2, 2, 2, 1, false}), build_spine_leaf({2, 4, 1, {}}),
                                   CostAssumptions{}, ports);
    const double price = r.number_at("price_per_port", "b_over_a");
    const double watts = r.number_at("watts_per_port", "b_over_a");
    report("AC9", price == 0.25 && watts == 0.25,
           "spine-leaf over 3-tier price/port " + fmt("%.17g", price) + ", watts/port " + fmt("%.17g", watts));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

int shell(const std::string& cmd) {
    const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void ac10() {
    const std::string bin = FRAGRISK_BINARY;
    const fs::path dir = fs::temp_directory_path() / "fragrisk_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string topo = (dir / "fabric.topo").string();
    const std::string quick = " --trials 20000 --seed 7";

    struct Case {
        std::string name;
        std::string args;
        bool svg;
    };
    const std::vector<Case> cases = {
        {"harm-curve", "harm-curve", true},
        {"jensen", "jensen" + quick, false},
        {"risk-density", "risk density --xi=-0.5", false},
        {"risk-tail-mean", "risk tail-mean --mc" + quick, false},
        {"risk-ratio", "risk ratio --K 3", false},
        {"risk-curve", "risk curve --alpha 2", true},
        {"topo-build", "topo build --kind three-tier", false},
        {"topo-hops", "topo hops --topology " + topo, false},
        {"topo-fail", "topo fail --topology " + topo + " --fail leaf1", false},
        {"topo-harm", "topo harm --topology " + topo + " --p 0.05" + quick, false},
        {"growth", "growth", true},
        {"compare", "compare --format json", false},
    };

    int mismatched = 0;
    int errors = shell(bin + " topo build --out " + topo) == 0 ? 0 : 1;
    for (const auto& c : cases) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / (c.name + "." + std::to_string(run) + ".out");
            const fs::path svg = dir / (c.name + "." + std::to_string(run) + ".svg");
            std::string cmd = bin + " " + c.args + " --out " + out.string();
            if (c.svg) cmd += " --svg " + svg.string();
            if (shell(cmd) != 0 || !fs::exists(out)) {
                ++errors;
                continue;
            }
            outputs[run] = slurp(out) + (c.svg ? slurp(svg) : std::string());
        }
        if (outputs[0].empty() || outputs[0] != outputs[1]) ++mismatched;
    }
    const fs::path v0 = dir / "verify.0.csv";
    const fs::path v1 = dir / "verify.1.csv";
    const int verify_code = shell(bin + " verify --skip-determinism --out " + v0.string());
    shell(bin + " verify --skip-determinism --out " + v1.string());
    if (slurp(v0).empty() || slurp(v0) != slurp(v1)) ++mismatched;
    const bool ok = errors == 0 && mismatched == 0 && verify_code == 0;
    report("AC10", ok,
           std::to_string(cases.size() + 1) + " subcommands run twice: " + std::to_string(mismatched) +
               " byte mismatches, " + std::to_string(errors) + " failed runs; verify exit code " +
               std::to_string(verify_code));
    if (ok) fs::remove_all(dir);
}

}  // namespace

int main() {
    ac1();
    ac2();
    ac3();
    ac4();
    ac5();
    ac6();
    ac7();
    ac8();
    ac9();
    ac10();
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
