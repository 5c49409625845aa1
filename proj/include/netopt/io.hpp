#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netopt/error.hpp"
#include "netopt/format.hpp"
#include "netopt/graph.hpp"

namespace netopt {

/// Writes content to path via a temp file in the same directory plus rename,
/// so readers never observe a partial file.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw DataError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// -- edge-list text format -----------------------------------------------------
// One edge per line: two whitespace-separated non-negative integers.
// Lines starting with '#' (and blank lines) are ignored.

inline std::string edge_list_text(const Graph& g) {
    std::string out;
    for (const auto& [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

inline void save_edge_list(const Graph& g, const std::string& path) {
    atomic_write_file(path, edge_list_text(g));
}

inline Graph load_edge_list_text(const std::string& text) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<std::size_t> lines;
    long long max_id = -1;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw ParseError("expected two integers", lineno);
        std::string rest;
        if (ls >> rest) throw ParseError("trailing data '" + rest + "'", lineno);
        if (u < 0 || v < 0) throw ParseError("negative node id", lineno);
        max_id = std::max(max_id, std::max(u, v));
        pairs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        lines.push_back(lineno);
    }
    Graph g(static_cast<NodeId>(max_id + 1));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [u, v] = pairs[i];
        if (u == v)
            throw SelfLoop("self-loop " + std::to_string(u) + " at line " +
                           std::to_string(lines[i]));
        if (g.has_edge(u, v))
            throw DuplicateEdge("duplicate edge (" + std::to_string(u) + "," +
                                std::to_string(v) + ") at line " + std::to_string(lines[i]));
        g.add_edge(u, v);
    }
    return g;
}

inline Graph load_edge_list(const std::string& path) {
    return load_edge_list_text(read_file(path));
}

inline std::string coordinates_csv(const Coordinates& coords) {
    std::string out = "node_id,x,y\n";
    for (std::size_t i = 0; i < coords.x.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += fmt_double(coords.x[i]);
        out += ',';
        out += fmt_double(coords.y[i]);
        out += '\n';
    }
    return out;
}

// -- OpenFlights ingestion ------------------------------------------------------

/// Splits one CSV row honoring double-quoted fields with embedded commas and
/// doubled-quote escapes. Returns nullopt on an unterminated quote.
inline std::optional<std::vector<std::string>> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes) return std::nullopt;
    fields.push_back(std::move(cur));
    return fields;
}

struct AirportProvenance {
    std::string routes_file;
    std::string airports_file;
    std::size_t total_rows = 0;
    std::size_t accepted_rows = 0;
    std::size_t dropped_rows = 0;  // = missing + self-loop + malformed
    std::size_t dropped_missing = 0;
    std::size_t dropped_self_loop = 0;
    std::size_t dropped_malformed = 0;
    std::size_t duplicate_pair_rows = 0;  // accepted rows that repeated an edge
    std::size_t airports_before_lcc = 0;
    std::size_t edges_before_lcc = 0;
};

/// The world-wide airport network: LCC of the undirected flight graph, with
/// airports keyed by their route-file codes.
struct AirportNetwork {
    Graph graph;
    std::vector<std::string> labels;  // node id -> airport code
    std::map<std::string, std::string> names;  // code -> display name, if airports file given
    AirportProvenance provenance;
};

/// Ingests an OpenFlights routes file
/// (airline, airline_id, source, source_id, dest, dest_id, codeshare, stops,
/// equipment; "\N" marks missing). Any row connecting two airports in either
/// direction yields one undirected edge. Rows with missing codes or equal
/// endpoints are skipped and counted; malformed rows are skipped-and-counted
/// unless strict, where they are fatal. The LCC is extracted at the end.
inline AirportNetwork ingest_openflights(const std::string& routes_path,
                                         const std::string& airports_path = {},
                                         bool strict = false) {
    std::ifstream in(routes_path, std::ios::binary);
    if (!in) throw DataError("cannot open " + routes_path);

    AirportProvenance prov;
    prov.routes_file = routes_path;
    prov.airports_file = airports_path;

    std::map<std::string, NodeId> ids;
    std::vector<std::string> codes;
    std::set<std::pair<NodeId, NodeId>> edge_set;
    auto intern = [&](const std::string& code) {
        auto [it, inserted] = ids.emplace(code, static_cast<NodeId>(codes.size()));
        if (inserted) codes.push_back(code);
        return it->second;
    };
    auto missing = [](const std::string& f) { return f.empty() || f == "\\N"; };

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++prov.total_rows;
        auto fields = split_csv_row(line);
        if (!fields || fields->size() < 5) {
            if (strict) throw ParseError("malformed routes row", row);
            ++prov.dropped_malformed;
            continue;
        }
        const std::string& src = (*fields)[2];
        const std::string& dst = (*fields)[4];
        if (missing(src) || missing(dst)) {
            ++prov.dropped_missing;
            continue;
        }
        if (src == dst) {
            ++prov.dropped_self_loop;
            continue;
        }
        NodeId u = intern(src);
        NodeId v = intern(dst);
        if (u > v) std::swap(u, v);
        if (!edge_set.emplace(u, v).second) ++prov.duplicate_pair_rows;
        ++prov.accepted_rows;
    }
    prov.dropped_rows = prov.dropped_missing + prov.dropped_self_loop + prov.dropped_malformed;
    if (edge_set.empty()) throw EmptyNetwork("no valid route rows in " + routes_path);

    Graph full(static_cast<NodeId>(codes.size()));
    for (const auto& [u, v] : edge_set) full.add_edge(u, v);
    prov.airports_before_lcc = codes.size();
    prov.edges_before_lcc = full.num_edges();

    LccResult lcc = largest_connected_component(full);
    AirportNetwork net{std::move(lcc.graph), {}, {}, std::move(prov)};
    net.labels.reserve(net.graph.num_nodes());
    for (NodeId nu : lcc.new_to_old) net.labels.push_back(codes[static_cast<std::size_t>(nu)]);

    if (!airports_path.empty()) {
        std::ifstream ain(airports_path, std::ios::binary);
        if (!ain) throw DataError("cannot open " + airports_path);
        std::set<std::string> wanted(net.labels.begin(), net.labels.end());
        std::string aline;
        std::size_t arow = 0;
        while (std::getline(ain, aline)) {
            ++arow;
            if (!aline.empty() && aline.back() == '\r') aline.pop_back();
            if (aline.empty()) continue;
            auto fields = split_csv_row(aline);
            if (!fields || fields->size() < 6) {
                if (strict) throw ParseError("malformed airports row", arow);
                continue;
            }
            // airports.dat: id, name, city, country, IATA, ICAO, ...
            const std::string& iata = (*fields)[4];
            const std::string& icao = (*fields)[5];
            if (wanted.count(iata)) net.names[iata] = (*fields)[1];
            if (wanted.count(icao)) net.names[icao] = (*fields)[1];
        }
    }
    return net;
}

/// node_id,code[,name] rows for an ingested airport network.
inline std::string airport_labels_csv(const AirportNetwork& net) {
    const bool with_names = !net.names.empty();
    std::string out = with_names ? "node_id,code,name\n" : "node_id,code\n";
    for (std::size_t i = 0; i < net.labels.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += net.labels[i];
        if (with_names) {
            out += ',';
            auto it = net.names.find(net.labels[i]);
            std::string name = it == net.names.end() ? "" : it->second;
            // quote names containing separators
            if (name.find_first_of(",\"") != std::string::npos) {
                std::string quoted = "\"";
                for (char c : name) {
                    if (c == '"') quoted += "\"\"";
                    else quoted += c;
                }
                quoted += '"';
                name = std::move(quoted);
            }
            out += name;
        }
        out += '\n';
    }
    return out;
}

}  // namespace netopt
