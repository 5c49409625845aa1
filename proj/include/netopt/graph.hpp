#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "netopt/error.hpp"
#include "netopt/rng.hpp"

namespace netopt {

using NodeId = std::int32_t;

/// Marker for "no path" in distance vectors.
constexpr std::int32_t kUnreachable = -1;

/// Per-node positions in the unit square (only produced by the Waxman model).
struct Coordinates {
    std::vector<double> x;
    std::vector<double> y;
};

/// Hop distances from a single source. dist[j] == kUnreachable when j cannot
/// be reached from source.
struct DistanceRow {
    NodeId source = 0;
    std::vector<std::int32_t> dist;
};

/// Undirected simple graph on nodes 0..n-1. Adjacency lists are kept sorted,
/// so edge lookups are logarithmic and iteration order is deterministic.
class Graph {
public:
    explicit Graph(NodeId n) : adj_(static_cast<std::size_t>(check_size(n))) {}

    static Graph from_edges(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
        Graph g(n);
        for (const auto& [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    NodeId num_nodes() const noexcept { return static_cast<NodeId>(adj_.size()); }
    std::size_t num_edges() const noexcept { return edge_count_; }

    NodeId degree(NodeId u) const {
        check_node(u);
        return static_cast<NodeId>(adj_[static_cast<std::size_t>(u)].size());
    }

    const std::vector<NodeId>& neighbors(NodeId u) const {
        check_node(u);
        return adj_[static_cast<std::size_t>(u)];
    }

    bool has_edge(NodeId u, NodeId v) const {
        check_node(u);
        check_node(v);
        const auto& row = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(row.begin(), row.end(), v);
    }

    /// Inserts the undirected edge (u, v).
    void add_edge(NodeId u, NodeId v) {
        check_node(u);
        check_node(v);
        if (u == v)
            throw SelfLoop("self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
        auto& ru = adj_[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(ru.begin(), ru.end(), v);
        if (it != ru.end() && *it == v)
            throw DuplicateEdge("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") already present");
        ru.insert(it, v);
        auto& rv = adj_[static_cast<std::size_t>(v)];
        rv.insert(std::lower_bound(rv.begin(), rv.end(), u), u);
        ++edge_count_;
    }

    /// All edges as (u, v) with u < v, in ascending lexicographic order.
    std::vector<std::pair<NodeId, NodeId>> edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(edge_count_);
        for (NodeId u = 0; u < num_nodes(); ++u)
            for (NodeId v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    bool is_connected() const;

    /// Order-independent hash of the edge set; used to verify that strategy
    /// runs on the same instance really started from the same graph.
    std::uint64_t fingerprint() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(num_nodes());
        for (NodeId u = 0; u < num_nodes(); ++u)
            for (NodeId v : adj_[static_cast<std::size_t>(u)])
                if (u < v) {
                    std::uint64_t s = (static_cast<std::uint64_t>(u) << 32) |
                                      static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
                    h ^= splitmix64(s);
                }
        return h;
    }

    void check_node(NodeId u) const {
        if (u < 0 || u >= num_nodes())
            throw NodeOutOfRange("node " + std::to_string(u) + " out of range [0," +
                                 std::to_string(num_nodes()) + ")");
    }

private:
    static NodeId check_size(NodeId n) {
        if (n < 0) throw BadParams("node count must be non-negative");
        return n;
    }

    std::vector<std::vector<NodeId>> adj_;
    std::size_t edge_count_ = 0;
};

namespace detail {

/// Flat CSR snapshot of the adjacency, for tight BFS sweeps.
struct Csr {
    std::vector<std::int32_t> offsets;
    std::vector<NodeId> targets;

    explicit Csr(const Graph& g) {
        const NodeId n = g.num_nodes();
        offsets.resize(static_cast<std::size_t>(n) + 1);
        targets.reserve(2 * g.num_edges());
        offsets[0] = 0;
        for (NodeId u = 0; u < n; ++u) {
            const auto& row = g.neighbors(u);
            targets.insert(targets.end(), row.begin(), row.end());
            offsets[static_cast<std::size_t>(u) + 1] =
                static_cast<std::int32_t>(targets.size());
        }
    }
};

/// Single-source BFS over a CSR. dist must have size n; queue capacity n.
/// Returns the number of visited nodes; dist of unvisited nodes is kUnreachable.
inline std::size_t bfs_csr(const Csr& csr, NodeId source, std::int32_t* dist,
                           NodeId* queue) {
    const std::size_t n = csr.offsets.size() - 1;
    std::fill(dist, dist + n, kUnreachable);
    dist[source] = 0;
    queue[0] = source;
    std::size_t head = 0, tail = 1;
    while (head < tail) {
        NodeId u = queue[head++];
        std::int32_t du = dist[u];
        for (std::int32_t k = csr.offsets[static_cast<std::size_t>(u)];
             k < csr.offsets[static_cast<std::size_t>(u) + 1]; ++k) {
            NodeId v = csr.targets[static_cast<std::size_t>(k)];
            if (dist[v] == kUnreachable) {
                dist[v] = du + 1;
                queue[tail++] = v;
            }
        }
    }
    return tail;
}

}  // namespace detail

/// Hop distances from source to every node.
inline DistanceRow bfs_distances(const Graph& g, NodeId source) {
    g.check_node(source);
    DistanceRow row;
    row.source = source;
    row.dist.assign(static_cast<std::size_t>(g.num_nodes()), kUnreachable);
    std::vector<NodeId> queue(static_cast<std::size_t>(g.num_nodes()));
    std::size_t head = 0, tail = 1;
    queue[0] = source;
    row.dist[static_cast<std::size_t>(source)] = 0;
    while (head < tail) {
        NodeId u = queue[head++];
        std::int32_t du = row.dist[static_cast<std::size_t>(u)];
        for (NodeId v : g.neighbors(u)) {
            if (row.dist[static_cast<std::size_t>(v)] == kUnreachable) {
                row.dist[static_cast<std::size_t>(v)] = du + 1;
                queue[tail++] = v;
            }
        }
    }
    return row;
}

inline bool Graph::is_connected() const {
    if (num_nodes() == 0) return true;
    DistanceRow row = bfs_distances(*this, 0);
    return std::none_of(row.dist.begin(), row.dist.end(),
                        [](std::int32_t d) { return d == kUnreachable; });
}

/// Average shortest path length over all unordered node pairs:
/// (2 / (n(n-1))) * sum of pairwise hop distances.
/// `threads` parallelizes the per-source BFS sweep; distance sums are integers,
/// so the result is bit-identical for any thread count.
inline double aspl(const Graph& g, unsigned threads = 1) {
    const NodeId n = g.num_nodes();
    if (n < 2) throw TooSmall("aspl needs at least 2 nodes");
    if (!g.is_connected()) throw DisconnectedGraph("aspl requires a connected graph");

    const detail::Csr csr(g);
    const std::size_t nn = static_cast<std::size_t>(n);
    if (threads <= 1) {
        std::vector<std::int32_t> dist(nn);
        std::vector<NodeId> queue(nn);
        std::uint64_t total = 0;
        for (NodeId s = 0; s < n; ++s) {
            detail::bfs_csr(csr, s, dist.data(), queue.data());
            for (std::size_t j = 0; j < nn; ++j)
                total += static_cast<std::uint64_t>(dist[j]);
        }
        // each unordered pair counted twice
        return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
    }

    const unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::vector<std::uint64_t> partial(t, 0);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            std::vector<std::int32_t> dist(nn);
            std::vector<NodeId> queue(nn);
            std::uint64_t local = 0;
            for (NodeId s = static_cast<NodeId>(w); s < n; s += static_cast<NodeId>(t)) {
                detail::bfs_csr(csr, s, dist.data(), queue.data());
                for (std::size_t j = 0; j < nn; ++j)
                    local += static_cast<std::uint64_t>(dist[j]);
            }
            partial[w] = local;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (std::uint64_t p : partial) total += p;
    return static_cast<double>(total) / (static_cast<double>(n) * (n - 1));
}

/// Largest connected component, renumbered to dense ids 0..k-1 that preserve
/// the ascending order of the original ids. Ties between equal-size components
/// go to the one containing the smallest original id.
struct LccResult {
    Graph graph;
    std::vector<NodeId> old_to_new;  // kUnreachable (-1) for dropped nodes
    std::vector<NodeId> new_to_old;
};

inline LccResult largest_connected_component(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<std::int32_t> comp(static_cast<std::size_t>(n), -1);
    std::vector<NodeId> queue(static_cast<std::size_t>(n));
    std::int32_t ncomp = 0;
    std::size_t best_size = 0;
    std::int32_t best = -1;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        std::size_t head = 0, tail = 1;
        queue[0] = s;
        comp[static_cast<std::size_t>(s)] = ncomp;
        while (head < tail) {
            NodeId u = queue[head++];
            for (NodeId v : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = ncomp;
                    queue[tail++] = v;
                }
            }
        }
        // strict > keeps the earliest (smallest min-id) component on ties
        if (tail > best_size) {
            best_size = tail;
            best = ncomp;
        }
        ++ncomp;
    }

    LccResult res{Graph(static_cast<NodeId>(best_size)), {}, {}};
    res.old_to_new.assign(static_cast<std::size_t>(n), kUnreachable);
    res.new_to_old.reserve(best_size);
    NodeId next = 0;
    for (NodeId u = 0; u < n; ++u) {
        if (comp[static_cast<std::size_t>(u)] == best) {
            res.old_to_new[static_cast<std::size_t>(u)] = next++;
            res.new_to_old.push_back(u);
        }
    }
    for (NodeId u = 0; u < n; ++u) {
        if (comp[static_cast<std::size_t>(u)] != best) continue;
        for (NodeId v : g.neighbors(u)) {
            if (u < v)
                res.graph.add_edge(res.old_to_new[static_cast<std::size_t>(u)],
                                   res.old_to_new[static_cast<std::size_t>(v)]);
        }
    }
    return res;
}

/// Nodes at shortest-path distance exactly 2 from u, ascending.
inline std::vector<NodeId> second_neighborhood(const Graph& g, NodeId u) {
    g.check_node(u);
    std::vector<bool> excluded(static_cast<std::size_t>(g.num_nodes()), false);
    excluded[static_cast<std::size_t>(u)] = true;
    for (NodeId v : g.neighbors(u)) excluded[static_cast<std::size_t>(v)] = true;
    std::vector<NodeId> out;
    for (NodeId v : g.neighbors(u)) {
        for (NodeId w : g.neighbors(v)) {
            if (!excluded[static_cast<std::size_t>(w)]) {
                excluded[static_cast<std::size_t>(w)] = true;
                out.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace netopt
