#pragma once

// Price, power and fault-domain comparison of two fabrics. Fixed-port roles
// (spine, leaf) are priced at a fraction of the modular per-port baseline.

#include "fragrisk/report.hpp"
#include "fragrisk/topology.hpp"

#include <map>

namespace fragrisk {

struct CostAssumptions {
    double modular_price_per_port = 1.0;
    double modular_watts_per_port = 1.0;
    /// Fixed-port price per port as a fraction of the modular figure.
    double fixed_price_ratio = 0.25;
    double fixed_watts_ratio = 0.25;

    /// Throws std::invalid_argument for non-positive base figures or ratios
    /// outside (0,1].
    void validate() const;
};

using PortsByRole = std::map<Role, int>;

/// Rows: total_ports, total_price, total_watts, price_per_port,
/// watts_per_port, max_single_failure_fraction. Columns: metric, a, b, b_over_a.
/// A 0/0 ratio is reported as 1. Throws std::invalid_argument when a role
/// present in either topology has no port count.
ScenarioReport compare_designs(const Topology& a, const Topology& b, const CostAssumptions& c,
                               const PortsByRole& ports_per_device);

}  // namespace fragrisk
