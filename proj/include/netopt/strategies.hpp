#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netopt/error.hpp"
#include "netopt/graph.hpp"
#include "netopt/measures.hpp"
#include "netopt/rng.hpp"

namespace netopt {

/// The seven edge-addition strategies. Accessibility variants: (1) pairs the
/// least and most accessible nodes, (2) interconnects low-accessibility
/// (peripheral) nodes, (3) interconnects high-accessibility (central) nodes.
enum class StrategyKind {
    Degree,
    RegularTopology,
    PreferentialAttachment,
    Betweenness,
    Accessibility1,
    Accessibility2,
    Accessibility3,
};

inline constexpr std::array<StrategyKind, 7> kAllStrategies = {
    StrategyKind::Degree,
    StrategyKind::RegularTopology,
    StrategyKind::PreferentialAttachment,
    StrategyKind::Betweenness,
    StrategyKind::Accessibility1,
    StrategyKind::Accessibility2,
    StrategyKind::Accessibility3,
};

inline const char* strategy_tag(StrategyKind k) {
    switch (k) {
        case StrategyKind::Degree: return "degree";
        case StrategyKind::RegularTopology: return "regular_topology";
        case StrategyKind::PreferentialAttachment: return "pref_attachment";
        case StrategyKind::Betweenness: return "betweenness";
        case StrategyKind::Accessibility1: return "accessibility1";
        case StrategyKind::Accessibility2: return "accessibility2";
        case StrategyKind::Accessibility3: return "accessibility3";
    }
    return "?";
}

inline std::optional<StrategyKind> strategy_from_tag(std::string s) {
    for (char& c : s)
        if (c == '-') c = '_';
    for (StrategyKind k : kAllStrategies)
        if (s == strategy_tag(k)) return k;
    return std::nullopt;
}

struct StrategyConfig {
    StrategyKind kind = StrategyKind::Degree;
    int n_a = 50;            // edge budget
    int h = 2;               // walk length for accessibility
    int recompute_every = 1; // measure refresh interval, in iterations
    std::uint64_t seed = 0;
};

namespace detail {

// Ranking of all nodes by (value, random key); the key makes tied nodes come
// out in uniformly random order under the run seed.
inline std::vector<NodeId> ranked_nodes(const std::vector<double>& values,
                                        bool ascending, Rng& rng) {
    const std::size_t n = values.size();
    std::vector<double> keys(n);
    for (double& k : keys) k = rng.uniform();
    std::vector<NodeId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        double va = values[static_cast<std::size_t>(a)];
        double vb = values[static_cast<std::size_t>(b)];
        if (va != vb) return ascending ? va < vb : va > vb;
        return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
    });
    return order;
}

inline void mark_closed_neighborhood(const Graph& g, NodeId u, std::vector<char>& flag) {
    std::fill(flag.begin(), flag.end(), 0);
    flag[static_cast<std::size_t>(u)] = 1;
    for (NodeId v : g.neighbors(u)) flag[static_cast<std::size_t>(v)] = 1;
}

// u = first node in `u_order` with at least one non-adjacent partner;
// v = partner maximizing (value, key) when opposite_extreme, else the first
// non-adjacent node in u_order itself (same-tail pairing).
inline std::pair<NodeId, NodeId> pick_pair(const Graph& g,
                                           const std::vector<NodeId>& u_order,
                                           const std::vector<double>& values,
                                           bool opposite_extreme, Rng& rng) {
    const NodeId n = g.num_nodes();
    std::vector<double> vkeys;
    if (opposite_extreme) {
        vkeys.resize(static_cast<std::size_t>(n));
        for (double& k : vkeys) k = rng.uniform();
    }
    std::vector<char> closed(static_cast<std::size_t>(n));
    for (NodeId u : u_order) {
        if (g.degree(u) >= n - 1) continue;
        mark_closed_neighborhood(g, u, closed);
        if (opposite_extreme) {
            NodeId best = -1;
            for (NodeId v = 0; v < n; ++v) {
                if (closed[static_cast<std::size_t>(v)]) continue;
                if (best == -1 ||
                    values[static_cast<std::size_t>(v)] > values[static_cast<std::size_t>(best)] ||
                    (values[static_cast<std::size_t>(v)] == values[static_cast<std::size_t>(best)] &&
                     vkeys[static_cast<std::size_t>(v)] < vkeys[static_cast<std::size_t>(best)]))
                    best = v;
            }
            if (best != -1) return {u, best};
        } else {
            for (NodeId v : u_order) {
                if (v == u || closed[static_cast<std::size_t>(v)]) continue;
                return {u, v};
            }
        }
    }
    throw CompleteGraph("no non-adjacent pair available");
}

inline std::vector<double> degree_values(const Graph& g) {
    std::vector<double> values(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        values[static_cast<std::size_t>(u)] = static_cast<double>(g.degree(u));
    return values;
}

inline std::pair<NodeId, NodeId> propose_regular_topology(const Graph& g, Rng& rng) {
    const NodeId n = g.num_nodes();
    const double mean_k = 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(n);

    std::vector<NodeId> low;
    for (NodeId u = 0; u < n; ++u)
        if (static_cast<double>(g.degree(u)) < mean_k) low.push_back(u);
    std::sort(low.begin(), low.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
    });

    for (NodeId u : low) {
        NodeId best = -1;
        double best_key = 0.0;
        for (NodeId w : second_neighborhood(g, u)) {
            if (static_cast<double>(g.degree(w)) >= mean_k) continue;
            double key = rng.uniform();
            if (best == -1 || g.degree(w) < g.degree(best) ||
                (g.degree(w) == g.degree(best) && key < best_key)) {
                best = w;
                best_key = key;
            }
        }
        if (best != -1) return {u, best};
    }

    // no qualifying low-degree pair at distance 2: fall back to the two
    // lowest-degree non-adjacent nodes
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    for (NodeId u = 0; u < n; ++u) order[static_cast<std::size_t>(u)] = u;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
        return a < b;
    });
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (!g.has_edge(order[i], order[j])) return {order[i], order[j]};
    throw CompleteGraph("no non-adjacent pair available");
}

inline std::pair<NodeId, NodeId> propose_pref_attachment(const Graph& g, Rng& rng) {
    const NodeId n = g.num_nodes();
    std::vector<char> closed(static_cast<std::size_t>(n));
    auto try_u = [&](NodeId u) -> std::optional<std::pair<NodeId, NodeId>> {
        mark_closed_neighborhood(g, u, closed);
        double total = 0.0;
        for (NodeId v = 0; v < n; ++v)
            if (!closed[static_cast<std::size_t>(v)]) total += static_cast<double>(g.degree(v));
        if (total <= 0.0) return std::nullopt;
        double r = rng.uniform() * total;
        double acc = 0.0;
        NodeId last = -1;
        for (NodeId v = 0; v < n; ++v) {
            if (closed[static_cast<std::size_t>(v)]) continue;
            acc += static_cast<double>(g.degree(v));
            last = v;
            if (r < acc) return std::make_pair(u, v);
        }
        return std::make_pair(u, last);  // r == total edge case
    };
    for (int attempt = 0; attempt < 64; ++attempt) {
        NodeId u = static_cast<NodeId>(rng.uniform_index(static_cast<std::size_t>(n)));
        if (auto e = try_u(u)) return *e;
    }
    // nearly-complete graph: visit remaining candidates in random order
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    for (NodeId u = 0; u < n; ++u) order[static_cast<std::size_t>(u)] = u;
    rng.shuffle(order);
    for (NodeId u : order)
        if (auto e = try_u(u)) return *e;
    throw CompleteGraph("no non-adjacent pair available");
}

}  // namespace detail

/// One edge proposal. `measure` is the cached measure vector for the
/// measure-driven kinds (betweenness, accessibility 1-3); it may be nullptr
/// for the degree-driven kinds. Never returns an existing edge.
inline std::pair<NodeId, NodeId> propose_edge(const Graph& g, StrategyKind kind,
                                              const MeasureVector* measure, Rng& rng) {
    const NodeId n = g.num_nodes();
    if (n < 2 || g.num_edges() ==
                     static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2)
        throw CompleteGraph("graph has no non-adjacent pair");

    auto checked_measure = [&]() -> const std::vector<double>& {
        if (measure == nullptr ||
            measure->values.size() != static_cast<std::size_t>(n))
            throw StaleMeasures("measure cache does not match graph size");
        return measure->values;
    };

    switch (kind) {
        case StrategyKind::Degree: {
            auto values = detail::degree_values(g);
            auto order = detail::ranked_nodes(values, /*ascending=*/true, rng);
            return detail::pick_pair(g, order, values, /*opposite_extreme=*/true, rng);
        }
        case StrategyKind::RegularTopology:
            return detail::propose_regular_topology(g, rng);
        case StrategyKind::PreferentialAttachment:
            return detail::propose_pref_attachment(g, rng);
        case StrategyKind::Betweenness: {
            const auto& values = checked_measure();
            auto order = detail::ranked_nodes(values, true, rng);
            return detail::pick_pair(g, order, values, true, rng);
        }
        case StrategyKind::Accessibility1: {
            const auto& values = checked_measure();
            auto order = detail::ranked_nodes(values, true, rng);
            return detail::pick_pair(g, order, values, true, rng);
        }
        case StrategyKind::Accessibility2: {
            const auto& values = checked_measure();
            auto order = detail::ranked_nodes(values, true, rng);
            return detail::pick_pair(g, order, values, false, rng);
        }
        case StrategyKind::Accessibility3: {
            const auto& values = checked_measure();
            auto order = detail::ranked_nodes(values, false, rng);
            return detail::pick_pair(g, order, values, false, rng);
        }
    }
    throw BadParams("unknown strategy kind");
}

struct AddedEdge {
    int iteration = 0;  // 1-based
    NodeId u = 0;
    NodeId v = 0;
    double aspl_after = 0.0;
};

struct RunResult {
    Graph final_graph;
    std::vector<double> trajectory;  // length n_a + 1, starting at the initial ASPL
    std::vector<AddedEdge> edges;
};

/// Applies cfg.n_a edge additions to a copy of g, recording the ASPL after
/// every addition. Measures are refreshed every cfg.recompute_every
/// iterations (degree-derived quantities are always current). Deterministic
/// given (g, cfg); `aspl_threads` only parallelizes the internal distance
/// sweeps and does not affect results.
inline RunResult run_strategy(const Graph& g0, const StrategyConfig& cfg,
                              unsigned aspl_threads = 1) {
    const NodeId n = g0.num_nodes();
    if (n < 3) throw TooSmall("run_strategy needs at least 3 nodes");
    if (cfg.n_a < 1) throw BadParams("edge budget must be >= 1");
    if (cfg.recompute_every < 1) throw BadParams("recompute_every must be >= 1");
    const std::size_t capacity =
        static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2 - g0.num_edges();
    if (capacity < static_cast<std::size_t>(cfg.n_a))
        throw BudgetExceedsCapacity("budget " + std::to_string(cfg.n_a) +
                                    " exceeds the " + std::to_string(capacity) +
                                    " available non-adjacent pairs");

    const bool needs_measure = cfg.kind == StrategyKind::Betweenness ||
                               cfg.kind == StrategyKind::Accessibility1 ||
                               cfg.kind == StrategyKind::Accessibility2 ||
                               cfg.kind == StrategyKind::Accessibility3;

    RunResult res{g0, {}, {}};
    res.trajectory.reserve(static_cast<std::size_t>(cfg.n_a) + 1);
    res.trajectory.push_back(aspl(res.final_graph, aspl_threads));
    res.edges.reserve(static_cast<std::size_t>(cfg.n_a));

    Rng rng(cfg.seed);
    MeasureVector cache;
    for (int it = 0; it < cfg.n_a; ++it) {
        if (needs_measure && it % cfg.recompute_every == 0) {
            cache = cfg.kind == StrategyKind::Betweenness
                        ? betweenness(res.final_graph)
                        : accessibility(res.final_graph, cfg.h);
        }
        auto [u, v] = propose_edge(res.final_graph, cfg.kind,
                                   needs_measure ? &cache : nullptr, rng);
        res.final_graph.add_edge(u, v);
        double a = aspl(res.final_graph, aspl_threads);
        res.trajectory.push_back(a);
        res.edges.push_back({it + 1, u, v, a});
    }
    return res;
}

}  // namespace netopt
