#pragma once

// Scenario configuration: defaults, overridden by a config file, overridden
// by command-line flags.
//
// Config file grammar (one entry per line):
//   key = value
// Keys are dotted (section.name). Leading/trailing blanks are ignored, blank
// lines and lines whose first non-blank character is '#' are skipped, and a
// key may appear only once. Unknown keys are rejected. List values are
// comma-separated. See README for the key list.

#include "fragrisk/costing.hpp"
#include "fragrisk/rng.hpp"
#include "fragrisk/topology.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fragrisk::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct ScenarioConfig {
    double harm_k = 1.0;
    double harm_beta = 1.5;
    double pareto_alpha = 4.0;
    double pareto_scale = 1.0;
    std::int64_t fragments = 1;
    std::vector<double> weights{0.5, 0.5};
    double unit_value = 10.0;
    double error = 1.0;

    std::string topology_kind = "spine-leaf";
    ThreeTierSpec three_tier{};
    SpineLeafSpec spine_leaf{};

    std::map<Role, double> failure;
    std::optional<double> core_drop_probability;

    CostAssumptions cost{};
    PortsByRole ports{{Role::core, 48},
                      {Role::distribution, 48},
                      {Role::access, 48},
                      {Role::spine, 48},
                      {Role::leaf, 48}};

    double growth_saturation = 100.0;
    int growth_ports_per_switch = 10;

    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    OutputFormat format = OutputFormat::csv;
    std::optional<int> digits;

    /// Applies one `key = value` setting. Throws ConfigError for unknown
    /// keys or unparsable values.
    void set(const std::string& key, const std::string& value);

    /// Every key with its resolved value, sorted by key; hashed into report
    /// metadata.
    std::string canonical() const;
};

/// Parses config text on top of `base`. Throws ConfigError with the line number.
ScenarioConfig parse_config(std::string_view text, ScenarioConfig base = {});

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base = {});

std::vector<double> parse_number_list(const std::string& text);

}  // namespace fragrisk::cli
