#include "fragrisk/topology.hpp"

#include "fragrisk/rng.hpp"
#include "fragrisk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace fragrisk {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::core: return "core";
        case Role::distribution: return "distribution";
        case Role::access: return "access";
        case Role::spine: return "spine";
        case Role::leaf: return "leaf";
    }
    return "?";
}

std::string_view to_string(LeafFunction fn) {
    switch (fn) {
        case LeafFunction::data_center: return "data-center";
        case LeafFunction::border: return "border";
        case LeafFunction::dmz: return "dmz";
        case LeafFunction::sdn: return "sdn";
        case LeafFunction::campus: return "campus";
    }
    return "?";
}

std::string_view to_string(TopologyForm form) {
    switch (form) {
        case TopologyForm::empty: return "empty";
        case TopologyForm::three_tier: return "three-tier";
        case TopologyForm::spine_leaf: return "spine-leaf";
    }
    return "?";
}

std::optional<Role> parse_role(std::string_view text) {
    for (Role r : kAllRoles) {
        if (to_string(r) == text) return r;
    }
    return std::nullopt;
}

std::optional<LeafFunction> parse_leaf_function(std::string_view text) {
    for (auto fn : {LeafFunction::data_center, LeafFunction::border, LeafFunction::dmz,
                    LeafFunction::sdn, LeafFunction::campus}) {
        if (to_string(fn) == text) return fn;
    }
    return std::nullopt;
}

bool is_fixed_port(Role role) { return role == Role::spine || role == Role::leaf; }

namespace {

bool valid_token(std::string_view id) {
    if (id.empty() || id == "host" || id == "--" || id == "@" || id == "-") return false;
    return std::none_of(id.begin(), id.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '#';
    });
}

bool is_three_tier_role(Role r) {
    return r == Role::core || r == Role::distribution || r == Role::access;
}

bool allowed_three_tier_link(Role a, Role b) {
    if (a > b) std::swap(a, b);
    return (a == Role::core && b == Role::core) ||
           (a == Role::core && b == Role::distribution) ||
           (a == Role::distribution && b == Role::access);
}

}  // namespace

Topology Topology::assemble(std::vector<Device> devices, const std::vector<LinkSpec>& links,
                            const std::vector<HostSpec>& hosts) {
    Topology t;
    std::unordered_map<std::string, std::size_t> index;
    bool any_three_tier = false;
    bool any_spine_leaf = false;
    for (std::size_t i = 0; i < devices.size(); ++i) {
        const Device& d = devices[i];
        if (!valid_token(d.id)) {
            throw std::invalid_argument("invalid device id '" + d.id + "'");
        }
        if (!index.emplace(d.id, i).second) {
            throw std::invalid_argument("duplicate device id '" + d.id + "'");
        }
        if (d.function && d.role != Role::leaf) {
            throw std::invalid_argument("only leaf devices carry a function tag: '" + d.id + "'");
        }
        (is_three_tier_role(d.role) ? any_three_tier : any_spine_leaf) = true;
    }
    if (any_three_tier && any_spine_leaf) {
        throw std::invalid_argument("topology mixes 3-tier and spine-leaf roles");
    }
    t.form_ = any_three_tier   ? TopologyForm::three_tier
              : any_spine_leaf ? TopologyForm::spine_leaf
                               : TopologyForm::empty;
    t.devices_ = std::move(devices);
    t.adjacency_.assign(t.devices_.size(), {});

    auto lookup = [&](const std::string& id) {
        auto it = index.find(id);
        if (it == index.end()) {
            throw std::invalid_argument("unknown device id '" + id + "'");
        }
        return it->second;
    };

    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool core_core_link = false;
    for (const LinkSpec& l : links) {
        const std::size_t a = lookup(l.a);
        const std::size_t b = lookup(l.b);
        if (a == b) {
            throw std::invalid_argument("self-link on '" + l.a + "'");
        }
        if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
            throw std::invalid_argument("duplicate link " + l.a + " -- " + l.b);
        }
        const Role ra = t.devices_[a].role;
        const Role rb = t.devices_[b].role;
        if (t.form_ == TopologyForm::spine_leaf) {
            if (ra == rb) {
                throw std::invalid_argument("spine-leaf link must join a spine and a leaf: " +
                                            l.a + " -- " + l.b);
            }
        } else if (!allowed_three_tier_link(ra, rb)) {
            throw std::invalid_argument("3-tier link not allowed between " +
                                        std::string(to_string(ra)) + " and " +
                                        std::string(to_string(rb)));
        }
        core_core_link = core_core_link || (ra == Role::core && rb == Role::core);
        t.links_.emplace_back(a, b);
        t.adjacency_[a].push_back(b);
        t.adjacency_[b].push_back(a);
    }

    const std::size_t cores = t.count_role(Role::core);
    if (cores > 2) {
        throw std::invalid_argument("a 3-tier design cannot have more than 2 core switches");
    }
    if (cores == 2 && !core_core_link) {
        throw std::invalid_argument("two core switches must be linked to each other");
    }

    std::set<std::string> host_ids;
    for (const HostSpec& h : hosts) {
        if (!valid_token(h.id)) {
            throw std::invalid_argument("invalid host id '" + h.id + "'");
        }
        if (!host_ids.insert(h.id).second) {
            throw std::invalid_argument("duplicate host id '" + h.id + "'");
        }
        Host host{h.id, std::nullopt};
        if (h.device) {
            const std::size_t d = lookup(*h.device);
            const Role r = t.devices_[d].role;
            if (r != Role::access && r != Role::leaf) {
                throw std::invalid_argument("host '" + h.id +
                                            "' must attach to an access or leaf device");
            }
            host.device = d;
        }
        t.hosts_.push_back(std::move(host));
    }
    return t;
}

std::optional<std::size_t> Topology::index_of(std::string_view device_id) const {
    for (std::size_t i = 0; i < devices_.size(); ++i) {
        if (devices_[i].id == device_id) return i;
    }
    return std::nullopt;
}

std::size_t Topology::count_role(Role role) const {
    return static_cast<std::size_t>(std::count_if(
        devices_.begin(), devices_.end(), [role](const Device& d) { return d.role == role; }));
}

namespace {

void require_positive(int value, const char* what) {
    if (value < 1) {
        throw std::invalid_argument(std::string(what) + " must be >= 1");
    }
}

std::string numbered(std::string_view prefix, int i) {
    return std::string(prefix) + std::to_string(i);
}

}  // namespace

Topology build_three_tier(const ThreeTierSpec& spec) {
    if (spec.cores > 2) {
        throw std::invalid_argument(
            "a 3-tier design cannot have more than 2 core switches (requested " +
            std::to_string(spec.cores) + ")");
    }
    require_positive(spec.cores, "cores");
    require_positive(spec.distributions, "distributions");
    require_positive(spec.access_per_distribution, "access_per_distribution");
    require_positive(spec.hosts_per_access, "hosts_per_access");

    std::vector<Device> devices;
    std::vector<LinkSpec> links;
    std::vector<HostSpec> hosts;
    for (int c = 1; c <= spec.cores; ++c) {
        devices.push_back({numbered("core", c), Role::core, std::nullopt});
    }
    if (spec.cores == 2) {
        links.push_back({"core1", "core2"});
    }
    for (int d = 1; d <= spec.distributions; ++d) {
        devices.push_back({numbered("dist", d), Role::distribution, std::nullopt});
        for (int c = 1; c <= spec.cores; ++c) {
            links.push_back({numbered("core", c), numbered("dist", d)});
        }
    }
    int access = 0;
    int host = 0;
    for (int d = 1; d <= spec.distributions; ++d) {
        for (int a = 0; a < spec.access_per_distribution; ++a) {
            const std::string id = numbered("acc", ++access);
            devices.push_back({id, Role::access, std::nullopt});
            links.push_back({numbered("dist", d), id});
            if (spec.dual_homed && spec.distributions > 1) {
                links.push_back({numbered("dist", d % spec.distributions + 1), id});
            }
            for (int h = 0; h < spec.hosts_per_access; ++h) {
                hosts.push_back({numbered("h", ++host), id});
            }
        }
    }
    return Topology::assemble(std::move(devices), links, hosts);
}

Topology build_spine_leaf(const SpineLeafSpec& spec) {
    require_positive(spec.spines, "spines");
    require_positive(spec.leaves, "leaves");
    require_positive(spec.hosts_per_leaf, "hosts_per_leaf");

    std::vector<Device> devices;
    std::vector<LinkSpec> links;
    std::vector<HostSpec> hosts;
    for (int s = 1; s <= spec.spines; ++s) {
        devices.push_back({numbered("spine", s), Role::spine, std::nullopt});
    }
    int host = 0;
    for (int l = 1; l <= spec.leaves; ++l) {
        std::optional<LeafFunction> fn;
        if (!spec.leaf_functions.empty()) {
            fn = spec.leaf_functions[static_cast<std::size_t>(l - 1) % spec.leaf_functions.size()];
        }
        const std::string id = numbered("leaf", l);
        devices.push_back({id, Role::leaf, fn});
        for (int s = 1; s <= spec.spines; ++s) {
            links.push_back({numbered("spine", s), id});
        }
        for (int h = 0; h < spec.hosts_per_leaf; ++h) {
            hosts.push_back({numbered("h", ++host), id});
        }
    }
    return Topology::assemble(std::move(devices), links, hosts);
}

std::uint64_t HopHistogram::total_pairs() const {
    std::uint64_t total = unreachable;
    for (const auto& [hops, count] : pairs_by_hops) total += count;
    return total;
}

std::vector<int> bfs_distances(const Topology& t, std::size_t source) {
    std::vector<int> dist(t.devices().size(), -1);
    std::deque<std::size_t> queue{source};
    dist.at(source) = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v : t.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

HopHistogram hop_histogram(const Topology& t) {
    HopHistogram hist;
    std::vector<std::uint64_t> per_device(t.devices().size(), 0);
    std::uint64_t detached = 0;
    for (const Host& h : t.hosts()) {
        if (h.device) {
            ++per_device[*h.device];
        } else {
            ++detached;
        }
    }
    const std::uint64_t total_hosts = t.hosts().size();
    // Every pair that involves a detached host.
    hist.unreachable = detached * (total_hosts - detached);
    if (detached > 1) hist.unreachable += detached * (detached - 1) / 2;

    for (std::size_t a = 0; a < per_device.size(); ++a) {
        if (per_device[a] == 0) continue;
        if (per_device[a] > 1) {
            hist.pairs_by_hops[0] += per_device[a] * (per_device[a] - 1) / 2;
        }
        const std::vector<int> dist = bfs_distances(t, a);
        for (std::size_t b = a + 1; b < per_device.size(); ++b) {
            if (per_device[b] == 0) continue;
            const std::uint64_t pairs = per_device[a] * per_device[b];
            if (dist[b] < 0) {
                hist.unreachable += pairs;
            } else {
                hist.pairs_by_hops[dist[b]] += pairs;
            }
        }
    }
    return hist;
}

Topology inject_failures(const Topology& t, const FailureSet& failed) {
    for (const std::string& id : failed) {
        if (!t.index_of(id)) {
            throw std::invalid_argument("cannot fail unknown device '" + id + "'");
        }
    }
    std::vector<Device> devices;
    for (const Device& d : t.devices()) {
        if (!failed.contains(d.id)) devices.push_back(d);
    }
    std::vector<LinkSpec> links;
    for (const auto& [a, b] : t.links()) {
        const std::string& ia = t.devices()[a].id;
        const std::string& ib = t.devices()[b].id;
        if (!failed.contains(ia) && !failed.contains(ib)) links.push_back({ia, ib});
    }
    std::vector<HostSpec> hosts;
    for (const Host& h : t.hosts()) {
        HostSpec spec{h.id, std::nullopt};
        if (h.device && !failed.contains(t.devices()[*h.device].id)) {
            spec.device = t.devices()[*h.device].id;
        }
        hosts.push_back(std::move(spec));
    }
    return Topology::assemble(std::move(devices), links, hosts);
}

double affected_fraction(const Topology& t, const std::vector<bool>& failed_mask) {
    const std::size_t n = t.devices().size();
    if (failed_mask.size() != n) {
        throw std::invalid_argument("failure mask size does not match device count");
    }
    const std::uint64_t total_hosts = t.hosts().size();
    if (total_hosts < 2) return 0.0;
    const std::uint64_t total_pairs = total_hosts * (total_hosts - 1) / 2;

    // Label surviving components, then count connected pairs per component.
    std::vector<int> component(n, -1);
    int next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (failed_mask[s] || component[s] >= 0) continue;
        component[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v : t.neighbors(u)) {
                if (!failed_mask[v] && component[v] < 0) {
                    component[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    std::vector<std::uint64_t> hosts_in(static_cast<std::size_t>(next), 0);
    for (const Host& h : t.hosts()) {
        if (h.device && !failed_mask[*h.device]) {
            ++hosts_in[static_cast<std::size_t>(component[*h.device])];
        }
    }
    std::uint64_t connected = 0;
    for (std::uint64_t c : hosts_in) {
        if (c > 1) connected += c * (c - 1) / 2;
    }
    return static_cast<double>(total_pairs - connected) / static_cast<double>(total_pairs);
}

double affected_fraction(const Topology& t, const FailureSet& failed) {
    std::vector<bool> mask(t.devices().size(), false);
    for (const std::string& id : failed) {
        const auto idx = t.index_of(id);
        if (!idx) {
            throw std::invalid_argument("cannot fail unknown device '" + id + "'");
        }
        mask[*idx] = true;
    }
    return affected_fraction(t, mask);
}

double max_single_failure_fraction(const Topology& t) {
    double worst = 0.0;
    std::vector<bool> mask(t.devices().size(), false);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        mask[i] = true;
        worst = std::max(worst, affected_fraction(t, mask));
        mask[i] = false;
    }
    return worst;
}

FailureModel FailureModel::uniform(double probability) {
    FailureModel fm;
    for (Role r : kAllRoles) fm.set(r, probability);
    return fm;
}

FailureModel& FailureModel::set(Role role, double probability) {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw std::invalid_argument("failure probability for " + std::string(to_string(role)) +
                                    " must be in [0,1]");
    }
    by_role_[role] = probability;
    return *this;
}

double FailureModel::probability(Role role) const {
    const auto it = by_role_.find(role);
    return it == by_role_.end() ? 0.0 : it->second;
}

FailureHarmSummary failure_harm_mc(const Topology& t, const FailureModel& fm,
                                   const HarmParams& h, std::uint64_t trials,
                                   std::uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    const std::size_t n = t.devices().size();
    std::vector<double> probability(n);
    for (std::size_t i = 0; i < n; ++i) probability[i] = fm.probability(t.devices()[i].role);

    UniformStream stream(seed);
    RunningStats stats;
    std::vector<double> magnitudes;
    magnitudes.reserve(trials);
    std::vector<bool> mask(n, false);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        for (std::size_t i = 0; i < n; ++i) mask[i] = stream.next() < probability[i];
        const double value = harm(h, affected_fraction(t, mask));
        stats.add(value);
        magnitudes.push_back(-value);
    }
    std::sort(magnitudes.begin(), magnitudes.end());
    auto quantile = [&](double q) {
        const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(trials)));
        return -magnitudes[std::max<std::size_t>(rank, 1) - 1];
    };

    FailureHarmSummary out;
    out.trials = trials;
    out.expected_harm = stats.mean();
    out.std_error = stats.std_error();
    out.p50 = quantile(0.50);
    out.p90 = quantile(0.90);
    out.p99 = quantile(0.99);
    return out;
}

}  // namespace fragrisk
