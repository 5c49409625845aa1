#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "netopt/error.hpp"
#include "netopt/graph.hpp"
#include "netopt/rng.hpp"

namespace netopt {

enum class ModelKind { Er, Ba, Ws, Wax };

inline const char* model_tag(ModelKind k) {
    switch (k) {
        case ModelKind::Er: return "ER";
        case ModelKind::Ba: return "BA";
        case ModelKind::Ws: return "WS";
        case ModelKind::Wax: return "WAX";
    }
    return "?";
}

inline std::optional<ModelKind> model_from_tag(const std::string& s) {
    if (s == "ER" || s == "er") return ModelKind::Er;
    if (s == "BA" || s == "ba") return ModelKind::Ba;
    if (s == "WS" || s == "ws") return ModelKind::Ws;
    if (s == "WAX" || s == "wax") return ModelKind::Wax;
    return std::nullopt;
}

/// Distance normalization for the Waxman connection probability
/// p = min(1, alpha * exp(-d / (beta * dnorm))) with d Euclidean in the unit
/// square. The default, twice the maximum possible distance, makes the usual
/// parameterization alpha=0.014, beta=0.2 come out at mean degree ~6.
inline constexpr double kWaxDistanceNorm = 2.8284271247461903;  // 2*sqrt(2)

struct ModelParams {
    ModelKind kind = ModelKind::Er;
    NodeId n = 1000;
    double p = 0.0;        // ER connection prob / WS rewiring prob
    int m = 3;             // BA edges per new node
    int k_ring = 6;        // WS lattice degree
    double alpha = 0.0;    // Waxman
    double beta = 0.0;     // Waxman
    double wax_dnorm = kWaxDistanceNorm;
    std::uint64_t seed = 0;

    const char* tag() const { return model_tag(kind); }
};

/// Erdos-Renyi G(n, p): every pair connected independently with probability p.
inline Graph gen_er(NodeId n, double p, std::uint64_t seed) {
    if (n < 2) throw BadParams("gen_er: n must be >= 2");
    if (p < 0.0 || p > 1.0) throw BadParams("gen_er: p must be in [0,1]");
    Rng rng(seed);
    Graph g(n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) g.add_edge(i, j);
    return g;
}

/// Barabasi-Albert growth: a clique on m+1 seed nodes, then each new node
/// attaches m distinct edges to existing nodes with probability proportional
/// to their current degree (sampling without replacement). Connected by
/// construction.
inline Graph gen_ba(NodeId n, int m, std::uint64_t seed) {
    if (m < 1) throw BadParams("gen_ba: m must be >= 1");
    if (n <= m) throw BadParams("gen_ba: n must be > m");
    Rng rng(seed);
    Graph g(n);
    // one entry per unit of degree; sampling an index is degree-proportional
    std::vector<NodeId> degree_pool;
    degree_pool.reserve(2 * (static_cast<std::size_t>(m) * static_cast<std::size_t>(n)));
    const NodeId core = static_cast<NodeId>(m) + 1;
    for (NodeId i = 0; i < core && i < n; ++i)
        for (NodeId j = i + 1; j < core; ++j) {
            g.add_edge(i, j);
            degree_pool.push_back(i);
            degree_pool.push_back(j);
        }
    std::vector<NodeId> chosen;
    for (NodeId v = core; v < n; ++v) {
        chosen.clear();
        while (static_cast<int>(chosen.size()) < m) {
            NodeId t = degree_pool[rng.uniform_index(degree_pool.size())];
            if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            g.add_edge(v, t);
            degree_pool.push_back(v);
            degree_pool.push_back(t);
        }
    }
    return g;
}

/// Watts-Strogatz: ring lattice (each node linked to its k_ring/2 nearest
/// neighbors on each side), then every lattice edge is independently rewired
/// with probability p by replacing its far endpoint with a uniformly random
/// node, resampling on self-loops and duplicates. If a node is already
/// adjacent to everyone, the original edge is kept. Edge count is invariant.
inline Graph gen_ws(NodeId n, int k_ring, double p, std::uint64_t seed) {
    if (k_ring < 2 || k_ring % 2 != 0) throw BadParams("gen_ws: k_ring must be even and >= 2");
    if (k_ring >= n) throw BadParams("gen_ws: k_ring must be < n");
    if (p < 0.0 || p > 1.0) throw BadParams("gen_ws: p must be in [0,1]");
    Rng rng(seed);
    std::vector<std::set<NodeId>> adj(static_cast<std::size_t>(n));
    auto link = [&](NodeId a, NodeId b) {
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
    };
    for (int j = 1; j <= k_ring / 2; ++j)
        for (NodeId i = 0; i < n; ++i) link(i, static_cast<NodeId>((i + j) % n));

    for (int j = 1; j <= k_ring / 2; ++j) {
        for (NodeId i = 0; i < n; ++i) {
            if (!rng.bernoulli(p)) continue;
            NodeId far = static_cast<NodeId>((i + j) % n);
            auto& row = adj[static_cast<std::size_t>(i)];
            if (static_cast<NodeId>(row.size()) >= n - 1) continue;  // no valid target
            NodeId w;
            do {
                w = static_cast<NodeId>(rng.uniform_index(static_cast<std::size_t>(n)));
            } while (w == i || row.count(w));
            row.erase(far);
            adj[static_cast<std::size_t>(far)].erase(i);
            link(i, w);
        }
    }
    Graph g(n);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : adj[static_cast<std::size_t>(u)])
            if (u < v) g.add_edge(u, v);
    return g;
}

/// Waxman geometric model: n nodes uniform in the unit square, each pair
/// connected independently with p = min(1, alpha * exp(-d/(beta * dnorm))).
/// See kWaxDistanceNorm for the dnorm convention.
inline std::pair<Graph, Coordinates> gen_wax(NodeId n, double alpha, double beta,
                                             std::uint64_t seed,
                                             double dnorm = kWaxDistanceNorm) {
    if (n < 2) throw BadParams("gen_wax: n must be >= 2");
    if (alpha <= 0.0 || beta <= 0.0) throw BadParams("gen_wax: alpha and beta must be > 0");
    if (dnorm <= 0.0) throw BadParams("gen_wax: dnorm must be > 0");
    Rng rng(seed);
    Coordinates coords;
    coords.x.resize(static_cast<std::size_t>(n));
    coords.y.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        coords.x[static_cast<std::size_t>(i)] = rng.uniform();
        coords.y[static_cast<std::size_t>(i)] = rng.uniform();
    }
    Graph g(n);
    const double scale = beta * dnorm;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            double dx = coords.x[static_cast<std::size_t>(i)] - coords.x[static_cast<std::size_t>(j)];
            double dy = coords.y[static_cast<std::size_t>(i)] - coords.y[static_cast<std::size_t>(j)];
            double d = std::sqrt(dx * dx + dy * dy);
            double p = std::min(1.0, alpha * std::exp(-d / scale));
            if (rng.bernoulli(p)) g.add_edge(i, j);
        }
    }
    return {std::move(g), std::move(coords)};
}

struct Generated {
    Graph graph;
    std::optional<Coordinates> coords;
};

/// Dispatch on ModelParams; coordinates are present only for WAX.
inline Generated generate(const ModelParams& mp) {
    switch (mp.kind) {
        case ModelKind::Er: return {gen_er(mp.n, mp.p, mp.seed), std::nullopt};
        case ModelKind::Ba: return {gen_ba(mp.n, mp.m, mp.seed), std::nullopt};
        case ModelKind::Ws: return {gen_ws(mp.n, mp.k_ring, mp.p, mp.seed), std::nullopt};
        case ModelKind::Wax: {
            auto [g, c] = gen_wax(mp.n, mp.alpha, mp.beta, mp.seed, mp.wax_dnorm);
            return {std::move(g), std::move(c)};
        }
    }
    throw BadParams("unknown model kind");
}

/// The four model configurations used throughout: N=1000, mean degree ~6.
/// ER p=0.006, BA m=3, WS k=6 p=0.4, WAX alpha=0.014 beta=0.2.
inline std::vector<ModelParams> default_models(NodeId n = 1000) {
    ModelParams er;
    er.kind = ModelKind::Er;
    er.n = n;
    er.p = 0.006;
    ModelParams ba;
    ba.kind = ModelKind::Ba;
    ba.n = n;
    ba.m = 3;
    ModelParams ws;
    ws.kind = ModelKind::Ws;
    ws.n = n;
    ws.k_ring = 6;
    ws.p = 0.4;
    ModelParams wax;
    wax.kind = ModelKind::Wax;
    wax.n = n;
    wax.alpha = 0.014;
    wax.beta = 0.2;
    return {ba, er, ws, wax};
}

}  // namespace netopt
