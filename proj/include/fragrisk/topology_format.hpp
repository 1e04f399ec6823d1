#pragma once

// Plain-text topology format, version 1.
//
//   fragrisk-topology v1          header, first non-comment line
//   <id> <role> [<function>]      device; function only on leaves
//   <id> -- <id>                  link
//   host <id> @ <device>          attached host
//   host <id> @ -                 detached host (its device failed)
//
// Tokens are separated by runs of spaces or tabs. Blank lines and lines
// starting with '#' are ignored. Roles: core distribution access spine leaf.
// Functions: data-center border dmz sdn campus. Emission order is devices,
// links, hosts, each in topology order, so parse(emit(t)) == t.

#include "fragrisk/topology.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace fragrisk {

inline constexpr std::string_view kTopologyHeader = "fragrisk-topology v1";

class TopologyParseError : public std::runtime_error {
public:
    TopologyParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

std::string emit_topology(const Topology& t);

/// Throws TopologyParseError for grammar errors and for invariant violations
/// reported by Topology::assemble.
Topology parse_topology(std::string_view text);

}  // namespace fragrisk
