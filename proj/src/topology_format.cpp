#include "fragrisk/topology_format.hpp"

#include <sstream>
#include <vector>

namespace fragrisk {

std::string emit_topology(const Topology& t) {
    std::ostringstream out;
    out << kTopologyHeader << '\n';
    for (const Device& d : t.devices()) {
        out << d.id << ' ' << to_string(d.role);
        if (d.function) out << ' ' << to_string(*d.function);
        out << '\n';
    }
    for (const auto& [a, b] : t.links()) {
        out << t.devices()[a].id << " -- " << t.devices()[b].id << '\n';
    }
    for (const Host& h : t.hosts()) {
        out << "host " << h.id << " @ " << (h.device ? t.devices()[*h.device].id : "-") << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

}  // namespace

Topology parse_topology(std::string_view text) {
    std::vector<Device> devices;
    std::vector<LinkSpec> links;
    std::vector<HostSpec> hosts;
    bool header_seen = false;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const auto tokens = split_tokens(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;

        if (!header_seen) {
            if (tokens.size() != 2 || std::string(tokens[0]) + " " + std::string(tokens[1]) !=
                                          kTopologyHeader) {
                throw TopologyParseError(line_no, "expected header '" +
                                                      std::string(kTopologyHeader) + "'");
            }
            header_seen = true;
            continue;
        }

        if (tokens[0] == "host") {
            if (tokens.size() != 4 || tokens[2] != "@") {
                throw TopologyParseError(line_no, "expected 'host <id> @ <device>'");
            }
            HostSpec h{std::string(tokens[1]), std::nullopt};
            if (tokens[3] != "-") h.device = std::string(tokens[3]);
            hosts.push_back(std::move(h));
        } else if (tokens.size() == 3 && tokens[1] == "--") {
            links.push_back({std::string(tokens[0]), std::string(tokens[2])});
        } else if (tokens.size() == 2 || tokens.size() == 3) {
            const auto role = parse_role(tokens[1]);
            if (!role) {
                throw TopologyParseError(line_no, "unknown role '" + std::string(tokens[1]) + "'");
            }
            Device d{std::string(tokens[0]), *role, std::nullopt};
            if (tokens.size() == 3) {
                d.function = parse_leaf_function(tokens[2]);
                if (!d.function) {
                    throw TopologyParseError(line_no,
                                             "unknown leaf function '" + std::string(tokens[2]) + "'");
                }
            }
            devices.push_back(std::move(d));
        } else {
            throw TopologyParseError(line_no, "unrecognized line");
        }
    }
    if (!header_seen) {
        throw TopologyParseError(line_no, "missing header '" + std::string(kTopologyHeader) + "'");
    }
    try {
        return Topology::assemble(std::move(devices), links, hosts);
    } catch (const std::invalid_argument& e) {
        throw TopologyParseError(line_no, e.what());
    }
}

}  // namespace fragrisk
