#include "fragrisk/cli/config.hpp"

#include "fragrisk/report.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace fragrisk::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
    }
    return out;
}

template <class Int>
Int to_integer(const std::string& key, const std::string& value) {
    Int out{};
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("'" + key + "' expects true or false, got '" + value + "'");
}

std::string num(double v) { return format_number(v); }

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        out.push_back(to_double("list", trim(item)));
    }
    if (out.empty()) {
        throw ConfigError("expected a comma-separated list of numbers");
    }
    return out;
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
    const auto dot = key.find('.');
    const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);

    if (key == "harm.k") {
        harm_k = to_double(key, value);
    } else if (key == "harm.beta") {
        harm_beta = to_double(key, value);
    } else if (key == "pareto.alpha") {
        pareto_alpha = to_double(key, value);
    } else if (key == "pareto.L") {
        pareto_scale = to_double(key, value);
    } else if (key == "fragments.N") {
        fragments = to_integer<std::int64_t>(key, value);
    } else if (key == "fragments.weights") {
        weights = parse_number_list(value);
    } else if (key == "survival.B") {
        unit_value = to_double(key, value);
    } else if (key == "jensen.x") {
        error = to_double(key, value);
    } else if (key == "topology.kind") {
        if (value != "spine-leaf" && value != "three-tier") {
            throw ConfigError("topology.kind must be spine-leaf or three-tier");
        }
        topology_kind = value;
    } else if (key == "topology.cores") {
        three_tier.cores = to_integer<int>(key, value);
    } else if (key == "topology.distributions") {
        three_tier.distributions = to_integer<int>(key, value);
    } else if (key == "topology.access_per_distribution") {
        three_tier.access_per_distribution = to_integer<int>(key, value);
    } else if (key == "topology.hosts_per_access") {
        three_tier.hosts_per_access = to_integer<int>(key, value);
    } else if (key == "topology.dual_homed") {
        three_tier.dual_homed = to_bool(key, value);
    } else if (key == "topology.spines") {
        spine_leaf.spines = to_integer<int>(key, value);
    } else if (key == "topology.leaves") {
        spine_leaf.leaves = to_integer<int>(key, value);
    } else if (key == "topology.hosts_per_leaf") {
        spine_leaf.hosts_per_leaf = to_integer<int>(key, value);
    } else if (section == "failure" && name == "core_drop_probability") {
        core_drop_probability = to_double(key, value);
    } else if (section == "failure" && parse_role(name)) {
        const double p = to_double(key, value);
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("'" + key + "' must be in [0,1]");
        failure[*parse_role(name)] = p;
    } else if (key == "cost.modular_price_per_port") {
        cost.modular_price_per_port = to_double(key, value);
    } else if (key == "cost.modular_watts_per_port") {
        cost.modular_watts_per_port = to_double(key, value);
    } else if (key == "cost.fixed_price_ratio") {
        cost.fixed_price_ratio = to_double(key, value);
    } else if (key == "cost.fixed_watts_ratio") {
        cost.fixed_watts_ratio = to_double(key, value);
    } else if (section == "ports" && parse_role(name)) {
        ports[*parse_role(name)] = to_integer<int>(key, value);
    } else if (key == "growth.saturation") {
        growth_saturation = to_double(key, value);
    } else if (key == "growth.ports_per_switch") {
        growth_ports_per_switch = to_integer<int>(key, value);
    } else if (key == "run.trials") {
        trials = to_integer<std::uint64_t>(key, value);
    } else if (key == "run.seed") {
        seed = to_integer<std::uint64_t>(key, value);
    } else if (key == "output.format") {
        if (value == "csv") {
            format = OutputFormat::csv;
        } else if (value == "json") {
            format = OutputFormat::json;
        } else {
            throw ConfigError("output.format must be csv or json");
        }
    } else if (key == "output.digits") {
        const int d = to_integer<int>(key, value);
        if (d < 1 || d > 17) throw ConfigError("output.digits must be in [1,17]");
        digits = d;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

std::string ScenarioConfig::canonical() const {
    std::map<std::string, std::string> kv;
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
        return s;
    };
    kv["harm.k"] = num(harm_k);
    kv["harm.beta"] = num(harm_beta);
    kv["pareto.alpha"] = num(pareto_alpha);
    kv["pareto.L"] = num(pareto_scale);
    kv["fragments.N"] = std::to_string(fragments);
    kv["fragments.weights"] = join(weights);
    kv["survival.B"] = num(unit_value);
    kv["jensen.x"] = num(error);
    kv["topology.kind"] = topology_kind;
    kv["topology.cores"] = std::to_string(three_tier.cores);
    kv["topology.distributions"] = std::to_string(three_tier.distributions);
    kv["topology.access_per_distribution"] = std::to_string(three_tier.access_per_distribution);
    kv["topology.hosts_per_access"] = std::to_string(three_tier.hosts_per_access);
    kv["topology.dual_homed"] = three_tier.dual_homed ? "true" : "false";
    kv["topology.spines"] = std::to_string(spine_leaf.spines);
    kv["topology.leaves"] = std::to_string(spine_leaf.leaves);
    kv["topology.hosts_per_leaf"] = std::to_string(spine_leaf.hosts_per_leaf);
    for (const auto& [role, p] : failure) kv["failure." + std::string(to_string(role))] = num(p);
    if (core_drop_probability) kv["failure.core_drop_probability"] = num(*core_drop_probability);
    kv["cost.modular_price_per_port"] = num(cost.modular_price_per_port);
    kv["cost.modular_watts_per_port"] = num(cost.modular_watts_per_port);
    kv["cost.fixed_price_ratio"] = num(cost.fixed_price_ratio);
    kv["cost.fixed_watts_ratio"] = num(cost.fixed_watts_ratio);
    for (const auto& [role, n] : ports) kv["ports." + std::string(to_string(role))] = std::to_string(n);
    kv["growth.saturation"] = num(growth_saturation);
    kv["growth.ports_per_switch"] = std::to_string(growth_ports_per_switch);
    kv["run.trials"] = std::to_string(trials);
    kv["run.seed"] = std::to_string(seed);
    kv["output.format"] = format == OutputFormat::csv ? "csv" : "json";
    if (digits) kv["output.digits"] = std::to_string(*digits);

    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

ScenarioConfig parse_config(std::string_view text, ScenarioConfig base) {
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key +
                              "'");
        }
        try {
            base.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

}  // namespace fragrisk::cli
