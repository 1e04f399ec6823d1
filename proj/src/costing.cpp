#include "fragrisk/costing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fragrisk {

void CostAssumptions::validate() const {
    if (!(modular_price_per_port > 0.0) || !std::isfinite(modular_price_per_port)) {
        throw std::invalid_argument("modular price per port must be positive");
    }
    if (!(modular_watts_per_port > 0.0) || !std::isfinite(modular_watts_per_port)) {
        throw std::invalid_argument("modular watts per port must be positive");
    }
    if (!(fixed_price_ratio > 0.0 && fixed_price_ratio <= 1.0)) {
        throw std::invalid_argument("fixed price ratio must be in (0,1]");
    }
    if (!(fixed_watts_ratio > 0.0 && fixed_watts_ratio <= 1.0)) {
        throw std::invalid_argument("fixed watts ratio must be in (0,1]");
    }
}

namespace {

struct DesignTotals {
    double ports = 0.0;
    double price = 0.0;
    double watts = 0.0;
    double fault_domain = 0.0;
};

DesignTotals totals_for(const Topology& t, const CostAssumptions& c, const PortsByRole& ports) {
    DesignTotals out;
    for (const Device& d : t.devices()) {
        const auto it = ports.find(d.role);
        if (it == ports.end()) {
            throw std::invalid_argument("no port count for role '" + std::string(to_string(d.role)) +
                                        "'");
        }
        if (it->second < 0) {
            throw std::invalid_argument("port count must be >= 0");
        }
        const double n = static_cast<double>(it->second);
        const bool fixed = is_fixed_port(d.role);
        out.ports += n;
        out.price += n * c.modular_price_per_port * (fixed ? c.fixed_price_ratio : 1.0);
        out.watts += n * c.modular_watts_per_port * (fixed ? c.fixed_watts_ratio : 1.0);
    }
    out.fault_domain = max_single_failure_fraction(t);
    return out;
}

double ratio(double b, double a) {
    if (a == 0.0) {
        return b == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return b / a;
}

double per_port(double total, double ports) {
    return ports > 0.0 ? total / ports : 0.0;
}

}  // namespace

ScenarioReport compare_designs(const Topology& a, const Topology& b, const CostAssumptions& c,
                               const PortsByRole& ports_per_device) {
    c.validate();
    const DesignTotals ta = totals_for(a, c, ports_per_device);
    const DesignTotals tb = totals_for(b, c, ports_per_device);

    ScenarioReport report;
    report.columns = {"metric", "a", "b", "b_over_a"};
    auto row = [&](const char* name, double va, double vb) {
        report.add_row({std::string(name), va, vb, ratio(vb, va)});
    };
    row("total_ports", ta.ports, tb.ports);
    row("total_price", ta.price, tb.price);
    row("total_watts", ta.watts, tb.watts);
    row("price_per_port", per_port(ta.price, ta.ports), per_port(tb.price, tb.ports));
    row("watts_per_port", per_port(ta.watts, ta.ports), per_port(tb.watts, tb.ports));
    row("max_single_failure_fraction", ta.fault_domain, tb.fault_domain);
    return report;
}

}  // namespace fragrisk
