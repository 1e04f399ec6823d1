#pragma once

// Data-center fabrics (3-tier and spine-leaf), hop metrics, device failure
// injection and the host-pair fault-domain metric.

#include "fragrisk/harm_model.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fragrisk {

enum class Role { core, distribution, access, spine, leaf };

inline constexpr std::array<Role, 5> kAllRoles{Role::core, Role::distribution, Role::access,
                                               Role::spine, Role::leaf};

/// Descriptive function of a leaf; has no effect on any analysis.
enum class LeafFunction { data_center, border, dmz, sdn, campus };

enum class TopologyForm { empty, three_tier, spine_leaf };

std::string_view to_string(Role role);
std::string_view to_string(LeafFunction fn);
std::string_view to_string(TopologyForm form);
std::optional<Role> parse_role(std::string_view text);
std::optional<LeafFunction> parse_leaf_function(std::string_view text);

/// Fixed-port roles are spine and leaf; the 3-tier roles are modular chassis.
bool is_fixed_port(Role role);

struct Device {
    std::string id;
    Role role;
    std::optional<LeafFunction> function;

    friend bool operator==(const Device&, const Device&) = default;
};

struct Host {
    std::string id;
    /// Index into Topology::devices(); empty once the device has failed.
    std::optional<std::size_t> device;

    friend bool operator==(const Host&, const Host&) = default;
};

struct LinkSpec {
    std::string a;
    std::string b;
};

struct HostSpec {
    std::string id;
    std::optional<std::string> device;
};

/// Immutable device/link graph with attached hosts. Instances only come out
/// of the builders, inject_failures, or Topology::assemble, all of which
/// enforce the form invariants:
///   spine-leaf: links join a spine to a leaf, hosts sit on leaves;
///   3-tier: at most two cores, joined by a link when there are two;
///           links are core-core, core-distribution or distribution-access;
///           hosts sit on access devices.
class Topology {
public:
    /// Validates and builds. Throws std::invalid_argument with the violated
    /// rule on failure.
    static Topology assemble(std::vector<Device> devices, const std::vector<LinkSpec>& links,
                             const std::vector<HostSpec>& hosts);

    TopologyForm form() const noexcept { return form_; }
    const std::vector<Device>& devices() const noexcept { return devices_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& links() const noexcept {
        return links_;
    }
    const std::vector<Host>& hosts() const noexcept { return hosts_; }
    const std::vector<std::size_t>& neighbors(std::size_t device) const {
        return adjacency_.at(device);
    }

    std::optional<std::size_t> index_of(std::string_view device_id) const;
    std::size_t count_role(Role role) const;

    friend bool operator==(const Topology& a, const Topology& b) {
        return a.devices_ == b.devices_ && a.links_ == b.links_ && a.hosts_ == b.hosts_;
    }

private:
    Topology() = default;

    TopologyForm form_ = TopologyForm::empty;
    std::vector<Device> devices_;
    std::vector<std::pair<std::size_t, std::size_t>> links_;
    std::vector<Host> hosts_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

struct ThreeTierSpec {
    int cores = 2;
    int distributions = 2;
    int access_per_distribution = 2;
    int hosts_per_access = 1;
    /// Also link each access device to the next distribution (wrapping).
    bool dual_homed = false;
};

struct SpineLeafSpec {
    int spines = 2;
    int leaves = 4;
    int hosts_per_leaf = 1;
    /// Optional function tags assigned to leaves in order, cycling.
    std::vector<LeafFunction> leaf_functions;
};

/// Throws std::invalid_argument for cores outside {1,2} or non-positive sizes.
Topology build_three_tier(const ThreeTierSpec& spec);
Topology build_spine_leaf(const SpineLeafSpec& spec);

struct HopHistogram {
    /// Link-hop count between attachment devices -> number of host pairs.
    std::map<int, std::uint64_t> pairs_by_hops;
    /// Pairs with a detached host or no path.
    std::uint64_t unreachable = 0;

    std::uint64_t total_pairs() const;
    friend bool operator==(const HopHistogram&, const HopHistogram&) = default;
};

HopHistogram hop_histogram(const Topology& t);

/// Hop distance from `source` to every device; -1 when unreachable.
std::vector<int> bfs_distances(const Topology& t, std::size_t source);

using FailureSet = std::set<std::string>;

/// Removes the failed devices and their links; their hosts become detached.
/// Throws std::invalid_argument on an unknown id.
Topology inject_failures(const Topology& t, const FailureSet& failed);

/// Fraction of all host pairs of `t` that cannot communicate once `failed`
/// is removed. Pairs with a detached host count as disconnected. 0 when `t`
/// has fewer than two hosts.
double affected_fraction(const Topology& t, const FailureSet& failed);

/// Same metric with the failed devices given as a mask over t.devices().
double affected_fraction(const Topology& t, const std::vector<bool>& failed_mask);

/// Largest affected_fraction over all single-device failures.
double max_single_failure_fraction(const Topology& t);

/// Independent per-trial failure probability by role; unset roles never fail.
class FailureModel {
public:
    FailureModel() = default;
    /// Same probability for every role.
    static FailureModel uniform(double probability);

    /// Throws std::invalid_argument when p is outside [0,1].
    FailureModel& set(Role role, double probability);
    double probability(Role role) const;

private:
    std::map<Role, double> by_role_;
};

struct FailureHarmSummary {
    double expected_harm = 0.0;
    double std_error = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double p99 = 0.0;
    std::uint64_t trials = 0;
};

/// Monte Carlo of harm(h, affected_fraction) with each device failing
/// independently per trial. Quantiles are nearest-rank quantiles of the harm
/// magnitude reported with harm's sign: p99 is the harm that 99% of trials
/// do not exceed in magnitude.
FailureHarmSummary failure_harm_mc(const Topology& t, const FailureModel& fm,
                                   const HarmParams& h, std::uint64_t trials,
                                   std::uint64_t seed);

}  // namespace fragrisk
