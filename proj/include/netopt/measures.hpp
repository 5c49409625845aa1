#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "netopt/error.hpp"
#include "netopt/graph.hpp"

namespace netopt {

enum class MeasureKind { Degree, Betweenness, Accessibility };

/// Per-node real values used for edge-endpoint selection.
struct MeasureVector {
    MeasureKind kind = MeasureKind::Degree;
    int h = 0;  // walk length; meaningful for Accessibility only
    std::vector<double> values;
};

/// Population mean and population standard deviation of node degrees.
inline std::pair<double, double> degree_stats(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n < 1) throw TooSmall("degree_stats needs at least 1 node");
    double sum = 0.0, sumsq = 0.0;
    for (NodeId u = 0; u < n; ++u) {
        double k = static_cast<double>(g.degree(u));
        sum += k;
        sumsq += k * k;
    }
    double mean = sum / n;
    double var = sumsq / n - mean * mean;
    return {mean, std::sqrt(std::max(0.0, var))};
}

/// Betweenness centrality by Brandes' accumulation: for each node v, the sum
/// over unordered pairs {s,t} (endpoints excluded) of the fraction of
/// shortest s-t paths passing through v. Unnormalized. The standard ordered
/// accumulation is halved at the end.
inline MeasureVector betweenness(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (!g.is_connected()) throw DisconnectedGraph("betweenness requires a connected graph");
    const std::size_t nn = static_cast<std::size_t>(n);
    const detail::Csr csr(g);

    MeasureVector out;
    out.kind = MeasureKind::Betweenness;
    out.values.assign(nn, 0.0);

    std::vector<std::int32_t> dist(nn);
    std::vector<double> sigma(nn), delta(nn);
    std::vector<NodeId> order(nn);

    for (NodeId s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        dist[static_cast<std::size_t>(s)] = 0;
        sigma[static_cast<std::size_t>(s)] = 1.0;
        order[0] = s;
        std::size_t head = 0, tail = 1;
        while (head < tail) {
            NodeId u = order[head++];
            std::int32_t du = dist[static_cast<std::size_t>(u)];
            for (std::int32_t k = csr.offsets[static_cast<std::size_t>(u)];
                 k < csr.offsets[static_cast<std::size_t>(u) + 1]; ++k) {
                NodeId v = csr.targets[static_cast<std::size_t>(k)];
                if (dist[static_cast<std::size_t>(v)] == kUnreachable) {
                    dist[static_cast<std::size_t>(v)] = du + 1;
                    order[tail++] = v;
                }
                if (dist[static_cast<std::size_t>(v)] == du + 1)
                    sigma[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(u)];
            }
        }
        // dependency accumulation in reverse BFS order; predecessors are
        // recognized by distance rather than stored
        for (std::size_t i = tail; i-- > 1;) {
            NodeId w = order[i];
            std::int32_t dw = dist[static_cast<std::size_t>(w)];
            double coeff = (1.0 + delta[static_cast<std::size_t>(w)]) /
                           sigma[static_cast<std::size_t>(w)];
            for (std::int32_t k = csr.offsets[static_cast<std::size_t>(w)];
                 k < csr.offsets[static_cast<std::size_t>(w) + 1]; ++k) {
                NodeId v = csr.targets[static_cast<std::size_t>(k)];
                if (dist[static_cast<std::size_t>(v)] == dw - 1)
                    delta[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(v)] * coeff;
            }
            if (w != s) out.values[static_cast<std::size_t>(w)] += delta[static_cast<std::size_t>(w)];
        }
    }
    for (double& v : out.values) v *= 0.5;
    return out;
}

/// Destination distribution of an unbiased h-step random walk from source:
/// probs = e_source * M^h with M[i][j] = 1/degree(i) for j adjacent to i.
struct WalkDistribution {
    NodeId source = 0;
    std::vector<double> probs;
};

namespace detail {

/// Frontier-sparse propagation workspace shared by walk_distribution and
/// accessibility. Active index lists are kept sorted so floating-point
/// accumulation order is fixed.
struct WalkScratch {
    std::vector<double> cur, next;
    std::vector<NodeId> active, touched;

    void init(std::size_t n) {
        cur.assign(n, 0.0);
        next.assign(n, 0.0);
        active.clear();
        touched.clear();
    }

    void step(const Graph& g) {
        touched.clear();
        for (NodeId i : active) {
            double w = cur[static_cast<std::size_t>(i)] /
                       static_cast<double>(g.degree(i));
            for (NodeId v : g.neighbors(i)) {
                if (next[static_cast<std::size_t>(v)] == 0.0) touched.push_back(v);
                next[static_cast<std::size_t>(v)] += w;
            }
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (NodeId i : active) cur[static_cast<std::size_t>(i)] = 0.0;
        std::swap(cur, next);
        std::swap(active, touched);
    }
};

inline void require_no_isolated(const Graph& g) {
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (g.degree(u) == 0)
            throw IsolatedNode("node " + std::to_string(u) + " has degree 0");
}

}  // namespace detail

inline WalkDistribution walk_distribution(const Graph& g, NodeId source, int h) {
    g.check_node(source);
    if (h < 1) throw BadParams("walk length h must be >= 1");
    detail::require_no_isolated(g);
    detail::WalkScratch ws;
    ws.init(static_cast<std::size_t>(g.num_nodes()));
    ws.cur[static_cast<std::size_t>(source)] = 1.0;
    ws.active.push_back(source);
    for (int step = 0; step < h; ++step) ws.step(g);
    WalkDistribution out;
    out.source = source;
    out.probs = std::move(ws.cur);
    return out;
}

/// Accessibility A_h(v) = exp(entropy of the h-step walk distribution from v).
/// Zero-probability destinations contribute nothing; values lie in
/// [1, |support|].
inline MeasureVector accessibility(const Graph& g, int h) {
    if (h < 1) throw BadParams("walk length h must be >= 1");
    detail::require_no_isolated(g);
    const NodeId n = g.num_nodes();
    MeasureVector out;
    out.kind = MeasureKind::Accessibility;
    out.h = h;
    out.values.assign(static_cast<std::size_t>(n), 0.0);
    detail::WalkScratch ws;
    ws.init(static_cast<std::size_t>(n));
    for (NodeId s = 0; s < n; ++s) {
        ws.cur[static_cast<std::size_t>(s)] = 1.0;
        ws.active.assign(1, s);
        for (int step = 0; step < h; ++step) ws.step(g);
        double entropy = 0.0;
        for (NodeId j : ws.active) {
            double p = ws.cur[static_cast<std::size_t>(j)];
            entropy -= p * std::log(p);
        }
        out.values[static_cast<std::size_t>(s)] = std::exp(entropy);
        for (NodeId j : ws.active) ws.cur[static_cast<std::size_t>(j)] = 0.0;
        ws.active.clear();
    }
    return out;
}

}  // namespace netopt
