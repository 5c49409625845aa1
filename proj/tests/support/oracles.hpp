#pragma once

// Independent reference implementations used to check the library. These
// deliberately avoid the library's BFS/Brandes/walk code paths.

#include <cmath>
#include <cstdint>
#include <vector>

#include "netopt/graph.hpp"
#include "netopt/rng.hpp"

namespace oracles {

constexpr std::int32_t kInf = -1;

/// All-pairs shortest hop counts by Floyd-Warshall.
inline std::vector<std::vector<std::int32_t>> floyd_warshall(const netopt::Graph& g) {
    const int n = g.num_nodes();
    const std::int32_t big = 1 << 28;
    std::vector<std::vector<std::int32_t>> d(
        static_cast<std::size_t>(n), std::vector<std::int32_t>(static_cast<std::size_t>(n), big));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (int u = 0; u < n; ++u)
        for (netopt::NodeId v : g.neighbors(u)) d[u][v] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d[i][j] >= big) d[i][j] = kInf;
    return d;
}

namespace detail {

// Enumerates every shortest s->t path explicitly (backward DFS over the
// distance field) and tallies interior-node visits.
inline void enumerate_paths(const netopt::Graph& g,
                            const std::vector<std::vector<std::int32_t>>& d, int s, int x,
                            std::vector<int>& interior_visits, long long& path_count,
                            std::vector<int>& stack) {
    if (x == s) {
        ++path_count;
        // stack holds the path t..s exclusive of endpoints at call depth
        for (int v : stack) ++interior_visits[static_cast<std::size_t>(v)];
        return;
    }
    for (netopt::NodeId y : g.neighbors(x)) {
        if (d[s][y] != kInf && d[s][y] + 1 == d[s][x]) {
            if (y != s) stack.push_back(y);
            enumerate_paths(g, d, s, y, interior_visits, path_count, stack);
            if (y != s) stack.pop_back();
        }
    }
}

}  // namespace detail

/// Betweenness by brute-force path enumeration: for each unordered pair, the
/// fraction of its shortest paths through every interior node. Only for tiny
/// graphs.
inline std::vector<double> brute_betweenness(const netopt::Graph& g) {
    const int n = g.num_nodes();
    auto d = floyd_warshall(g);
    std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
    std::vector<int> interior(static_cast<std::size_t>(n));
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            if (d[s][t] == kInf) continue;
            std::fill(interior.begin(), interior.end(), 0);
            long long paths = 0;
            stack.clear();
            detail::enumerate_paths(g, d, s, t, interior, paths, stack);
            for (int v = 0; v < n; ++v)
                if (v != s && v != t && interior[static_cast<std::size_t>(v)] > 0)
                    bc[static_cast<std::size_t>(v)] +=
                        static_cast<double>(interior[static_cast<std::size_t>(v)]) /
                        static_cast<double>(paths);
        }
    }
    return bc;
}

/// Monte-Carlo estimate of the accessibility of one node: simulate h-step
/// random walks, estimate the destination distribution, return exp(entropy).
inline double mc_accessibility(const netopt::Graph& g, netopt::NodeId source, int h,
                               std::size_t walks, std::uint64_t seed) {
    netopt::Rng rng(seed);
    std::vector<std::size_t> hits(static_cast<std::size_t>(g.num_nodes()), 0);
    for (std::size_t w = 0; w < walks; ++w) {
        netopt::NodeId cur = source;
        for (int step = 0; step < h; ++step) {
            const auto& nb = g.neighbors(cur);
            cur = nb[rng.uniform_index(nb.size())];
        }
        ++hits[static_cast<std::size_t>(cur)];
    }
    double entropy = 0.0;
    for (std::size_t c : hits) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(walks);
        entropy -= p * std::log(p);
    }
    return std::exp(entropy);
}

/// Uniform random simple graph on up to max_n nodes with a random density;
/// may be disconnected.
inline netopt::Graph random_graph(netopt::NodeId min_n, netopt::NodeId max_n,
                                  netopt::Rng& rng) {
    netopt::NodeId n =
        min_n + static_cast<netopt::NodeId>(
                    rng.uniform_index(static_cast<std::size_t>(max_n - min_n + 1)));
    double p = 0.05 + 0.9 * rng.uniform();
    netopt::Graph g(n);
    for (netopt::NodeId i = 0; i < n; ++i)
        for (netopt::NodeId j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) g.add_edge(i, j);
    return g;
}

/// As random_graph, but resamples until connected.
inline netopt::Graph random_connected_graph(netopt::NodeId min_n, netopt::NodeId max_n,
                                            netopt::Rng& rng) {
    for (;;) {
        netopt::Graph g = random_graph(min_n, max_n, rng);
        if (g.num_nodes() >= 2 && g.is_connected()) return g;
    }
}

}  // namespace oracles
