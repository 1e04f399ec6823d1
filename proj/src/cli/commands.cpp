#include "fragrisk/cli/commands.hpp"

#include "fragrisk/cli/config.hpp"
#include "fragrisk/cli/svg.hpp"
#include "fragrisk/cli/verify.hpp"
#include "fragrisk/costing.hpp"
#include "fragrisk/growth.hpp"
#include "fragrisk/harm_model.hpp"
#include "fragrisk/oracles.hpp"
#include "fragrisk/pareto_risk.hpp"
#include "fragrisk/report.hpp"
#include "fragrisk/topology.hpp"
#include "fragrisk/topology_format.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

namespace fragrisk::cli {

namespace {

// Flags that override a config key one-to-one.
struct KeyFlag {
    const char* flag;
    const char* key;
    const char* help;
};

constexpr KeyFlag kKeyFlags[] = {
    {"--k", "harm.k", "harm scale k > 0"},
    {"--beta", "harm.beta", "harm exponent beta >= 0"},
    {"--alpha", "pareto.alpha", "Pareto tail index alpha > 0"},
    {"--L", "pareto.L", "Pareto scale L > 0"},
    {"--N", "fragments.N", "number of equal fragments"},
    {"--weights", "fragments.weights", "comma-separated fragment shares summing to 1"},
    {"--B", "survival.B", "unit value B subject to harm"},
    {"--x", "jensen.x", "error magnitude x >= 0"},
    {"--kind", "topology.kind", "spine-leaf or three-tier"},
    {"--cores", "topology.cores", "3-tier core switches (1 or 2)"},
    {"--distributions", "topology.distributions", "3-tier distribution switches"},
    {"--access-per-distribution", "topology.access_per_distribution",
     "access switches per distribution"},
    {"--hosts-per-access", "topology.hosts_per_access", "hosts per access switch"},
    {"--spines", "topology.spines", "spine switches"},
    {"--leaves", "topology.leaves", "leaf switches"},
    {"--hosts-per-leaf", "topology.hosts_per_leaf", "hosts per leaf switch"},
    {"--core-drop-prob", "failure.core_drop_probability",
     "silent drop probability annotated on core devices"},
    {"--price-per-port", "cost.modular_price_per_port", "modular price per port"},
    {"--watts-per-port", "cost.modular_watts_per_port", "modular watts per port"},
    {"--fixed-price-ratio", "cost.fixed_price_ratio", "fixed-port price as a fraction of modular"},
    {"--fixed-watts-ratio", "cost.fixed_watts_ratio", "fixed-port watts as a fraction of modular"},
    {"--sat", "growth.saturation", "chassis saturation capacity (ports)"},
    {"--ports-per-switch", "growth.ports_per_switch", "ports per fixed switch"},
    {"--trials", "run.trials", "Monte Carlo trials"},
    {"--seed", "run.seed", "random seed"},
    {"--format", "output.format", "csv or json"},
    {"--digits", "output.digits", "significant digits for numbers"},
};

class Invocation {
public:
    /// Registers the named key flags plus the common output flags on `sub`.
    void bind(CLI::App* sub, std::initializer_list<const char*> flags) {
        for (const char* name : flags) add_key_flag(sub, name);
        add_key_flag(sub, "--format");
        add_key_flag(sub, "--digits");
        if (sub->get_option_no_throw("--out") == nullptr) {
            sub->add_option("--out", out_path, "write the result to this file instead of stdout");
        }
    }

    void bind_failure(CLI::App* sub) {
        options_.push_back({sub->add_option("--p", uniform_failure,
                                            "failure probability for every role"),
                            ""});
        sub->add_option("--failure", role_failures, "role=probability (repeatable)");
    }

    void bind_ports(CLI::App* sub) {
        sub->add_option("--ports", role_ports, "role=ports per device (repeatable)");
    }

    ScenarioConfig resolve() const {
        ScenarioConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (!uniform_failure.empty()) {
            for (Role r : kAllRoles) cfg.set("failure." + std::string(to_string(r)), uniform_failure);
        }
        for (const auto& [opt, key] : options_) {
            if (opt->count() > 0 && !key.empty()) cfg.set(key, values_.at(key));
        }
        apply_pairs(cfg, role_failures, "failure.");
        apply_pairs(cfg, role_ports, "ports.");
        if (dual_homed) cfg.set("topology.dual_homed", "true");
        return cfg;
    }

    std::string config_path;
    std::string out_path;
    std::string svg_path;
    std::string uniform_failure;
    std::vector<std::string> role_failures;
    std::vector<std::string> role_ports;
    bool dual_homed = false;

private:
    void add_key_flag(CLI::App* sub, std::string_view name) {
        if (sub->get_option_no_throw(std::string(name)) != nullptr) return;
        const auto* it = std::find_if(std::begin(kKeyFlags), std::end(kKeyFlags),
                                      [&](const KeyFlag& f) { return f.flag == name; });
        if (it == std::end(kKeyFlags)) {
            throw std::logic_error("unknown flag " + std::string(name));
        }
        options_.push_back({sub->add_option(it->flag, values_[it->key], it->help), it->key});
    }

    static void apply_pairs(ScenarioConfig& cfg, const std::vector<std::string>& pairs,
                            const std::string& section) {
        for (const std::string& item : pairs) {
            const auto eq = item.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("expected role=value, got '" + item + "'");
            }
            const std::string role = item.substr(0, eq);
            if (!parse_role(role)) throw ConfigError("unknown role '" + role + "'");
            cfg.set(section + role, item.substr(eq + 1));
        }
    }

    std::map<std::string, std::string> values_;
    std::vector<std::pair<CLI::Option*, std::string>> options_;
};

struct Outputs {
    std::string stdout_text;
    std::vector<std::pair<std::string, std::string>> files;
};

std::string resolve_output_path(const std::string& path) {
    const char* dir = std::getenv(kOutputDirEnv);
    std::filesystem::path p(path);
    if (dir != nullptr && *dir != '\0' && p.is_relative()) {
        p = std::filesystem::path(dir) / p;
    }
    return p.string();
}

void write_file(const std::string& path, const std::string& bytes) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + target.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("cannot write '" + target.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

ScenarioReport new_report(const std::string& command, const ScenarioConfig& cfg) {
    ScenarioReport report;
    report.add_metadata("command", command);
    report.add_metadata("config_hash", fnv1a_hex(cfg.canonical()));
    report.add_metadata("seed", std::to_string(cfg.seed));
    report.add_metadata("version", FRAGRISK_VERSION);
    return report;
}

std::string render(const ScenarioReport& report, const ScenarioConfig& cfg) {
    return cfg.format == OutputFormat::json ? to_json(report, cfg.digits)
                                            : to_csv(report, cfg.digits);
}

std::string scalar_text(double value, const ScenarioConfig& cfg) {
    if (cfg.digits) return format_number(value, *cfg.digits);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

/// The report goes to --out when given, otherwise to stdout.
void emit_report(Outputs& outputs, const Invocation& inv, const ScenarioReport& report,
                 const ScenarioConfig& cfg) {
    const std::string text = render(report, cfg);
    if (inv.out_path.empty()) {
        outputs.stdout_text += text;
    } else {
        outputs.files.emplace_back(resolve_output_path(inv.out_path), text);
    }
}

/// Scalar commands print the value; the full report only goes to --out.
void emit_scalar(Outputs& outputs, const Invocation& inv, const ScenarioReport& report,
                 const ScenarioConfig& cfg, double value) {
    outputs.stdout_text += scalar_text(value, cfg) + "\n";
    if (!inv.out_path.empty()) {
        outputs.files.emplace_back(resolve_output_path(inv.out_path), render(report, cfg));
    }
}

void emit_svg(Outputs& outputs, const Invocation& inv, const LineChart& chart) {
    if (!inv.svg_path.empty()) {
        outputs.files.emplace_back(resolve_output_path(inv.svg_path), render_svg(chart));
    }
}

void add_metric(ScenarioReport& report, const std::string& name, double value) {
    report.add_row({name, value});
}

Topology topology_from(const ScenarioConfig& cfg, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read topology file '" + file + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_topology(buffer.str());
    }
    if (cfg.topology_kind == "three-tier") return build_three_tier(cfg.three_tier);
    return build_spine_leaf(cfg.spine_leaf);
}

FailureModel failure_model_from(const ScenarioConfig& cfg) {
    FailureModel fm;
    for (const auto& [role, p] : cfg.failure) fm.set(role, p);
    return fm;
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
    std::vector<std::string> out;
    for (const std::string& item : items) {
        std::stringstream in(item);
        std::string part;
        while (std::getline(in, part, ',')) {
            if (!part.empty()) out.push_back(part);
        }
    }
    return out;
}

std::string beta_label(double beta) { return "harm_beta_" + format_number(beta, 6); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fragrisk: fragmentation, heavy-tail harm and data-center fault domains", "fragrisk"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", FRAGRISK_VERSION);

    Invocation inv;
    app.add_option("--config", inv.config_path, "scenario config file (key = value lines)");

    std::function<void(Outputs&, const ScenarioConfig&)> action;

    // harm-curve
    std::string betas = "1.5,2,3";
    double x_max = 5.0;
    int points = 101;
    auto* harm_curve = app.add_subcommand("harm-curve", "harm H(x) = -k x^beta samples");
    inv.bind(harm_curve, {"--k"});
    harm_curve->add_option("--betas", betas, "comma-separated exponents");
    harm_curve->add_option("--x-max", x_max, "largest x");
    harm_curve->add_option("--points", points, "number of samples")->check(CLI::Range(2, 100000));
    harm_curve->add_option("--svg", inv.svg_path, "also write an SVG chart");
    harm_curve->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const auto beta_values = parse_number_list(betas);
            if (!(x_max > 0.0)) throw std::invalid_argument("--x-max must be positive");
            ScenarioReport report = new_report("harm-curve", cfg);
            report.add_metadata("k", format_number(cfg.harm_k));
            report.columns = {"x"};
            std::vector<HarmParams> params;
            LineChart chart{"Harm function H(x) = -k x^beta", "x", "H(x)", {}};
            for (double b : beta_values) {
                params.emplace_back(cfg.harm_k, b);
                report.columns.push_back(beta_label(b));
                chart.series.push_back({"beta = " + format_number(b, 6), {}});
            }
            for (int i = 0; i < points; ++i) {
                const double x = x_max * i / (points - 1);
                std::vector<ReportCell> row{x};
                for (std::size_t j = 0; j < params.size(); ++j) {
                    const double value = harm(params[j], x);
                    row.emplace_back(value);
                    chart.series[j].points.emplace_back(x, value);
                }
                report.add_row(std::move(row));
            }
            emit_report(o, inv, report, cfg);
            emit_svg(o, inv, chart);
        };
    });

    // jensen
    bool skip_survival = false;
    auto* jensen = app.add_subcommand("jensen", "fragmented vs whole harm and paired survival means");
    inv.bind(jensen, {"--k", "--beta", "--weights", "--x", "--B", "--alpha", "--L", "--trials", "--seed"});
    jensen->add_flag("--no-survival", skip_survival, "skip the Monte Carlo survival comparison");
    jensen->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const HarmParams h(cfg.harm_k, cfg.harm_beta);
            const FragmentWeights w(cfg.weights);
            ScenarioReport report = new_report("jensen", cfg);
            report.columns = {"metric", "value"};
            add_metric(report, "beta", h.beta());
            add_metric(report, "guarantees_fragmentation_benefit",
                       h.guarantees_fragmentation_benefit() ? 1.0 : 0.0);
            add_metric(report, "harm_whole", harm(h, cfg.error));
            add_metric(report, "harm_fragmented", fragmented_harm(h, w, cfg.error));
            add_metric(report, "jensen_gap", jensen_gap(h, w, cfg.error));
            if (!skip_survival) {
                const auto s = survival_comparison(h, cfg.unit_value, w,
                                                   ParetoParams(cfg.pareto_alpha, cfg.pareto_scale),
                                                   cfg.trials, cfg.seed);
                add_metric(report, "centralized_mean", s.centralized_mean);
                add_metric(report, "decentralized_mean", s.decentralized_mean);
                add_metric(report, "mean_difference", s.difference());
                add_metric(report, "difference_std_error", s.difference_std_error);
                add_metric(report, "trials", static_cast<double>(s.trials));
            }
            emit_report(o, inv, report, cfg);
        };
    });

    // risk
    auto* risk = app.add_subcommand("risk", "Pareto error model and fragment harm");
    risk->require_subcommand(1);

    std::string xi_text;
    std::string x_text;
    auto* density = risk->add_subcommand("density", "fragment harm density g(xi), or Pareto density with --at-x");
    inv.bind(density, {"--k", "--beta", "--alpha", "--L", "--N"});
    density->add_option("--xi", xi_text, "harm value xi (negative)");
    density->add_option("--at-x", x_text, "evaluate the Pareto error density at x instead");
    density->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const ParetoParams p(cfg.pareto_alpha, cfg.pareto_scale);
            ScenarioReport report = new_report("risk density", cfg);
            report.columns = {"metric", "value"};
            double value = 0.0;
            if (!x_text.empty()) {
                const double x = std::stod(x_text);
                value = pareto_density(p, x);
                add_metric(report, "x", x);
                add_metric(report, "pareto_density", value);
            } else {
                if (xi_text.empty()) throw ConfigError("risk density needs --xi or --at-x");
                const double xi = std::stod(xi_text);
                const HarmParams h(cfg.harm_k, cfg.harm_beta);
                const FragmentCount frag(cfg.fragments);
                value = fragment_harm_density(p, h, frag, xi);
                add_metric(report, "xi", xi);
                add_metric(report, "support_bound", fragment_harm_support_bound(p, h, frag));
                add_metric(report, "fragment_harm_density", value);
            }
            emit_scalar(o, inv, report, cfg, value);
        };
    });

    bool with_mc = false;
    auto* tail = risk->add_subcommand("tail-mean", "closed-form truncated tail mean of fragment harm");
    inv.bind(tail, {"--k", "--beta", "--alpha", "--L", "--N", "--trials", "--seed"});
    tail->add_flag("--mc", with_mc, "also estimate it by Monte Carlo");
    std::string warning_text;
    tail->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const ParetoParams p(cfg.pareto_alpha, cfg.pareto_scale);
            const HarmParams h(cfg.harm_k, cfg.harm_beta);
            const FragmentCount frag(cfg.fragments);
            const double closed = tail_mean(p, h, frag);
            if (tail_mean_margin_warning(p, h)) {
                warning_text = "warning: alpha <= 1 + beta; the tail mean is finite but heavy\n";
            }
            // Below beta = 1 the threshold sits outside the support, so the
            // closed form no longer equals the truncated mean.
            if (h.beta() < 1.0 && frag.value() > 1) {
                warning_text += "warning: beta < 1 with N > 1; the closed form is not the truncated mean\n";
            }
            ScenarioReport report = new_report("risk tail-mean", cfg);
            report.columns = {"metric", "value"};
            add_metric(report, "threshold", tail_threshold(p, h, frag));
            add_metric(report, "closed_form", closed);
            if (with_mc) {
                const auto mc = mc_tail_mean_estimate(p, h, frag, cfg.trials, cfg.seed);
                add_metric(report, "monte_carlo", mc.mean);
                add_metric(report, "monte_carlo_std_error", mc.std_error);
                add_metric(report, "relative_error", std::abs(mc.mean - closed) / std::abs(closed));
                add_metric(report, "trials", static_cast<double>(mc.trials));
            }
            emit_scalar(o, inv, report, cfg, closed);
            if (with_mc) {
                o.stdout_text += "monte-carlo " + scalar_text(report.number_at("monte_carlo", "value"), cfg) +
                                 " (standard error " +
                                 scalar_text(report.number_at("monte_carlo_std_error", "value"), cfg) +
                                 ")\n";
            }
        };
    });

    double multiplier = 2.0;
    auto* ratio = risk->add_subcommand("ratio", "degradation ratio K M(KN) / M(N)");
    inv.bind(ratio, {"--k", "--beta", "--alpha", "--L", "--N"});
    ratio->add_option("--K", multiplier, "concentration multiplier K > 0");
    ratio->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const ParetoParams p(cfg.pareto_alpha, cfg.pareto_scale);
            const HarmParams h(cfg.harm_k, cfg.harm_beta);
            const double value = degradation_ratio(p, h, multiplier, FragmentCount(cfg.fragments));
            ScenarioReport report = new_report("risk ratio", cfg);
            report.columns = {"metric", "value"};
            add_metric(report, "K", multiplier);
            add_metric(report, "ratio", value);
            emit_scalar(o, inv, report, cfg, value);
        };
    });

    std::string k_values = "1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16";
    auto* curve = risk->add_subcommand("curve", "degradation ratio over a list of K");
    inv.bind(curve, {"--k", "--beta", "--alpha", "--L"});
    curve->add_option("--K", k_values, "comma-separated multipliers");
    curve->add_option("--svg", inv.svg_path, "also write an SVG chart");
    curve->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const ParetoParams p(cfg.pareto_alpha, cfg.pareto_scale);
            const HarmParams h(cfg.harm_k, cfg.harm_beta);
            const auto ks = parse_number_list(k_values);
            ScenarioReport report = new_report("risk curve", cfg);
            report.add_metadata("alpha", format_number(p.alpha()));
            report.add_metadata("beta", format_number(h.beta()));
            report.columns = {"K", "ratio"};
            LineChart chart{"Degradation of the mean harm, beta = " + format_number(h.beta(), 6) +
                                ", alpha = " + format_number(p.alpha(), 6),
                            "K", "K M(KN) / M(N)", {{"ratio", {}}}};
            for (const auto& point : degradation_curve(p, h, ks)) {
                report.add_row({point.multiplier, point.ratio});
                chart.series[0].points.emplace_back(point.multiplier, point.ratio);
            }
            emit_report(o, inv, report, cfg);
            emit_svg(o, inv, chart);
        };
    });

    // topo
    auto* topo = app.add_subcommand("topo", "data-center topologies and fault domains");
    topo->require_subcommand(1);
    std::string topology_file;
    std::string leaf_functions;
    const auto bind_topology = [&](CLI::App* sub) {
        inv.bind(sub, {"--kind", "--cores", "--distributions", "--access-per-distribution",
                       "--hosts-per-access", "--spines", "--leaves", "--hosts-per-leaf"});
        sub->add_flag("--dual-homed", inv.dual_homed, "3-tier access switches uplink to two distributions");
        sub->add_option("--leaf-functions", leaf_functions,
                        "comma-separated leaf tags (data-center,border,dmz,sdn,campus)");
        sub->add_option("--topology", topology_file, "read the topology from a file instead");
    };
    const auto load_topology = [&](const ScenarioConfig& cfg) {
        ScenarioConfig local = cfg;
        for (const std::string& tag : split_list({leaf_functions})) {
            const auto fn = parse_leaf_function(tag);
            if (!fn) throw ConfigError("unknown leaf function '" + tag + "'");
            local.spine_leaf.leaf_functions.push_back(*fn);
        }
        return topology_from(local, topology_file);
    };

    auto* build = topo->add_subcommand("build", "emit a topology in the text format");
    bind_topology(build);
    build->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const std::string text = emit_topology(load_topology(cfg));
            if (inv.out_path.empty()) {
                o.stdout_text += text;
            } else {
                o.files.emplace_back(resolve_output_path(inv.out_path), text);
            }
        };
    });

    auto* hops = topo->add_subcommand("hops", "histogram of host-pair hop counts");
    bind_topology(hops);
    hops->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const Topology t = load_topology(cfg);
            const HopHistogram hist = hop_histogram(t);
            ScenarioReport report = new_report("topo hops", cfg);
            report.add_metadata("form", std::string(to_string(t.form())));
            report.columns = {"hops", "pairs"};
            for (const auto& [h, count] : hist.pairs_by_hops) {
                report.add_row({std::to_string(h), static_cast<double>(count)});
            }
            report.add_row({std::string("unreachable"), static_cast<double>(hist.unreachable)});
            emit_report(o, inv, report, cfg);
        };
    });

    std::vector<std::string> failed_ids;
    std::string damaged_out;
    auto* fail = topo->add_subcommand("fail", "fail devices and measure the affected host pairs");
    bind_topology(fail);
    fail->add_option("--fail", failed_ids, "device ids to fail (comma-separated or repeated)");
    fail->add_option("--emit-topology", damaged_out, "write the damaged topology to this file");
    fail->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const Topology t = load_topology(cfg);
            const auto ids = split_list(failed_ids);
            const FailureSet failed(ids.begin(), ids.end());
            const Topology damaged = inject_failures(t, failed);
            const HopHistogram hist = hop_histogram(damaged);
            std::uint64_t detached = 0;
            for (const Host& h : damaged.hosts()) detached += h.device ? 0 : 1;

            ScenarioReport report = new_report("topo fail", cfg);
            std::string failed_list;
            for (const auto& id : failed) failed_list += (failed_list.empty() ? "" : ",") + id;
            report.add_metadata("failed", failed_list);
            report.columns = {"metric", "value"};
            add_metric(report, "failed_devices", static_cast<double>(failed.size()));
            add_metric(report, "detached_hosts", static_cast<double>(detached));
            add_metric(report, "disconnected_pairs", static_cast<double>(hist.unreachable));
            add_metric(report, "total_pairs", static_cast<double>(hist.total_pairs()));
            add_metric(report, "affected_fraction", affected_fraction(t, failed));
            emit_report(o, inv, report, cfg);
            if (!damaged_out.empty()) {
                o.files.emplace_back(resolve_output_path(damaged_out), emit_topology(damaged));
            }
        };
    });

    bool exact = false;
    auto* topo_harm = topo->add_subcommand("harm", "Monte Carlo harm of random device failures");
    bind_topology(topo_harm);
    inv.bind(topo_harm, {"--k", "--beta", "--trials", "--seed", "--core-drop-prob"});
    inv.bind_failure(topo_harm);
    topo_harm->add_flag("--exact", exact, "add the exact value by enumerating all failure patterns");
    topo_harm->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const Topology t = load_topology(cfg);
            const HarmParams h(cfg.harm_k, cfg.harm_beta);
            const FailureModel fm = failure_model_from(cfg);
            const auto summary = failure_harm_mc(t, fm, h, cfg.trials, cfg.seed);
            ScenarioReport report = new_report("topo harm", cfg);
            report.add_metadata("form", std::string(to_string(t.form())));
            if (cfg.core_drop_probability) {
                report.add_metadata("core_silent_drop_probability",
                                    format_number(*cfg.core_drop_probability));
            }
            report.columns = {"metric", "value"};
            add_metric(report, "expected_harm", summary.expected_harm);
            add_metric(report, "std_error", summary.std_error);
            add_metric(report, "p50", summary.p50);
            add_metric(report, "p90", summary.p90);
            add_metric(report, "p99", summary.p99);
            add_metric(report, "trials", static_cast<double>(summary.trials));
            if (exact) {
                add_metric(report, "exact_expected_harm",
                           oracles::exhaustive_failure_harm(t, fm, h).mean);
            }
            emit_report(o, inv, report, cfg);
        };
    });

    // growth
    double units_max = 0.0;
    int growth_points = 101;
    auto* growth = app.add_subcommand("growth", "modular (erf) vs fixed-port (linear) capacity");
    inv.bind(growth, {"--sat", "--ports-per-switch"});
    growth->add_option("--units-max", units_max, "largest unit count (default: past the crossover)");
    growth->add_option("--points", growth_points, "number of samples")->check(CLI::Range(2, 100000));
    growth->add_option("--svg", inv.svg_path, "also write an SVG chart");
    growth->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const SigmoidGrowth sig{cfg.growth_saturation};
            const LinearGrowth lin{cfg.growth_ports_per_switch};
            const double cross = crossover(sig, lin);
            const double top = units_max > 0.0 ? units_max : std::max(5.0, std::ceil(2.0 * cross));
            ScenarioReport report = new_report("growth", cfg);
            report.add_metadata("crossover_units", format_number(cross));
            report.columns = {"units", "sigmoid_capacity", "linear_capacity"};
            LineChart chart{"Capacity vs installed units", "units", "ports",
                            {{"modular (erf)", {}}, {"fixed-port (linear)", {}}}};
            for (int i = 0; i < growth_points; ++i) {
                const double u = top * i / (growth_points - 1);
                const double s = capacity_at(sig, u);
                const double l = capacity_at(lin, u);
                report.add_row({u, s, l});
                chart.series[0].points.emplace_back(u, s);
                chart.series[1].points.emplace_back(u, l);
            }
            emit_report(o, inv, report, cfg);
            emit_svg(o, inv, chart);
        };
    });

    // compare
    std::string a_file;
    std::string b_file;
    auto* compare = app.add_subcommand("compare", "price, power and fault-domain comparison");
    inv.bind(compare, {"--cores", "--distributions", "--access-per-distribution", "--hosts-per-access",
                       "--spines", "--leaves", "--hosts-per-leaf", "--price-per-port",
                       "--watts-per-port", "--fixed-price-ratio", "--fixed-watts-ratio"});
    inv.bind_ports(compare);
    compare->add_option("--a", a_file, "topology file for design a (default: 3-tier from config)");
    compare->add_option("--b", b_file, "topology file for design b (default: spine-leaf from config)");
    compare->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            ScenarioConfig a_cfg = cfg;
            a_cfg.topology_kind = "three-tier";
            ScenarioConfig b_cfg = cfg;
            b_cfg.topology_kind = "spine-leaf";
            const Topology a = topology_from(a_cfg, a_file);
            const Topology b = topology_from(b_cfg, b_file);
            const ScenarioReport body = compare_designs(a, b, cfg.cost, cfg.ports);
            ScenarioReport report = new_report("compare", cfg);
            report.add_metadata("a", std::string(to_string(a.form())));
            report.add_metadata("b", std::string(to_string(b.form())));
            report.columns = body.columns;
            report.rows = body.rows;
            emit_report(o, inv, report, cfg);
        };
    });

    // verify
    bool verify_quick = false;
    auto* verify = app.add_subcommand("verify", "run every analytic-vs-oracle check");
    inv.bind(verify, {"--seed"});
    verify->add_flag("--skip-determinism", verify_quick, "skip the repeated-run byte comparison");
    int verify_failures = 0;
    verify->callback([&] {
        action = [&](Outputs& o, const ScenarioConfig& cfg) {
            const auto results = run_verification({cfg.seed, !verify_quick});
            ScenarioReport report = new_report("verify", cfg);
            report.columns = {"check", "passed", "measured", "tolerance"};
            for (const auto& r : results) {
                o.stdout_text += std::string(r.passed ? "PASS" : "FAIL") + "  " + r.name +
                                 "  [measured " + format_number(r.measured, 6) + ", limit " +
                                 format_number(r.tolerance, 6) + "]" +
                                 (r.detail.empty() ? "" : "  " + r.detail) + "\n";
                report.add_row({r.name, r.passed ? 1.0 : 0.0, r.measured, r.tolerance});
                verify_failures += r.passed ? 0 : 1;
            }
            o.stdout_text += std::to_string(results.size() - verify_failures) + "/" +
                             std::to_string(results.size()) + " checks passed\n";
            if (!inv.out_path.empty()) {
                o.files.emplace_back(resolve_output_path(inv.out_path), render(report, cfg));
            }
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const ScenarioConfig cfg = inv.resolve();
        Outputs outputs;
        action(outputs, cfg);
        for (const auto& [path, bytes] : outputs.files) write_file(path, bytes);
        out << outputs.stdout_text;
        if (!warning_text.empty()) err << warning_text;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return verify_failures == 0 ? 0 : 1;
}

}  // namespace fragrisk::cli
