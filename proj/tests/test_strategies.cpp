#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "netopt/measures.hpp"
#include "netopt/strategies.hpp"
#include "support/oracles.hpp"

using netopt::Graph;
using netopt::NodeId;
using netopt::StrategyConfig;
using netopt::StrategyKind;

namespace {

Graph path_graph(NodeId n) {
    Graph g(n);
    for (NodeId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph star_graph(NodeId leaves) {
    Graph g(leaves + 1);
    for (NodeId i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

std::pair<NodeId, NodeId> ordered(std::pair<NodeId, NodeId> e) {
    if (e.first > e.second) std::swap(e.first, e.second);
    return e;
}

}  // namespace

TEST_CASE("degree strategy on P5 respects the tie-broken extremes", "[strategies]") {
    // P5 0-1-2-3-4: min-degree ties {0,4}; for u=0 the max-degree non-adjacent
    // candidates are {2,3}, for u=4 they are {1,2}.
    Graph g = path_graph(5);
    const std::set<std::pair<NodeId, NodeId>> allowed = {
        {0, 2}, {0, 3}, {1, 4}, {2, 4}};
    netopt::Rng rng(404);
    std::set<std::pair<NodeId, NodeId>> seen;
    for (int rep = 0; rep < 200; ++rep) {
        auto e = ordered(netopt::propose_edge(g, StrategyKind::Degree, nullptr, rng));
        REQUIRE(allowed.count(e) == 1);
        seen.insert(e);
    }
    REQUIRE(seen.size() == 4);  // both u-ties and both v-ties get exercised
}

TEST_CASE("regular topology links sub-average second neighbors", "[strategies]") {
    SECTION("star hub+4: two leaves get connected") {
        Graph g = star_graph(4);
        netopt::Rng rng(11);
        for (int rep = 0; rep < 50; ++rep) {
            auto [u, v] = netopt::propose_edge(g, StrategyKind::RegularTopology, nullptr, rng);
            REQUIRE(u != 0);
            REQUIRE(v != 0);
            REQUIRE(u != v);
        }
    }
    SECTION("P3 is fully deterministic") {
        Graph g = path_graph(3);
        netopt::Rng rng(11);
        auto e = ordered(netopt::propose_edge(g, StrategyKind::RegularTopology, nullptr, rng));
        REQUIRE(e == std::pair<NodeId, NodeId>{0, 2});
    }
    SECTION("regular ring falls back to lowest-degree non-adjacent pair") {
        // C5 is 2-regular: nobody is below average, so the fallback applies.
        Graph g(5);
        for (NodeId i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
        netopt::Rng rng(3);
        auto e = ordered(netopt::propose_edge(g, StrategyKind::RegularTopology, nullptr, rng));
        REQUIRE(e == std::pair<NodeId, NodeId>{0, 2});  // ascending (degree, id) scan
    }
}

TEST_CASE("accessibility1 on a star skips the saturated hub", "[strategies]") {
    // A_2(hub)=1 is the global minimum but the hub is adjacent to everyone,
    // so the u-search advances to a leaf and pairs it with another leaf.
    Graph g = star_graph(3);
    auto acc = netopt::accessibility(g, 2);
    netopt::Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        auto [u, v] = netopt::propose_edge(g, StrategyKind::Accessibility1, &acc, rng);
        REQUIRE(u >= 1);
        REQUIRE(v >= 1);
        REQUIRE(u != v);
    }
}

TEST_CASE("accessibility2 pairs the two least accessible nodes", "[strategies]") {
    // P4 at h=2: A(ends)=2, A(middles)=exp(-(3/4 ln 3/4 + 1/4 ln 1/4)) ~ 1.75.
    // u is a middle node (tie); its non-adjacent next-smallest is the far end,
    // so the proposal is (1,3) or (0,2).
    Graph g = path_graph(4);
    auto acc = netopt::accessibility(g, 2);
    REQUIRE(acc.values[0] == Catch::Approx(2.0));
    REQUIRE(acc.values[1] < acc.values[0]);
    netopt::Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        auto e = ordered(netopt::propose_edge(g, StrategyKind::Accessibility2, &acc, rng));
        REQUIRE((e == std::pair<NodeId, NodeId>{1, 3} || e == std::pair<NodeId, NodeId>{0, 2}));
    }
}

TEST_CASE("betweenness strategy requires a fresh measure cache", "[strategies]") {
    Graph g = path_graph(5);
    netopt::Rng rng(1);
    REQUIRE_THROWS_AS(netopt::propose_edge(g, StrategyKind::Betweenness, nullptr, rng),
                      netopt::StaleMeasures);
    netopt::MeasureVector wrong;
    wrong.kind = netopt::MeasureKind::Betweenness;
    wrong.values = {1.0, 2.0};  // stale length
    REQUIRE_THROWS_AS(netopt::propose_edge(g, StrategyKind::Betweenness, &wrong, rng),
                      netopt::StaleMeasures);
}

TEST_CASE("betweenness strategy links min to max betweenness", "[strategies]") {
    Graph g = path_graph(5);
    auto bc = netopt::betweenness(g);
    netopt::Rng rng(2);
    for (int rep = 0; rep < 40; ++rep) {
        auto e = ordered(netopt::propose_edge(g, StrategyKind::Betweenness, &bc, rng));
        // argmin bc is an end (0 or 4), argmax is the center node 2
        REQUIRE((e == std::pair<NodeId, NodeId>{0, 2} || e == std::pair<NodeId, NodeId>{2, 4}));
    }
}

TEST_CASE("complete graphs cannot accept proposals", "[strategies]") {
    Graph g(4);
    for (NodeId i = 0; i < 4; ++i)
        for (NodeId j = i + 1; j < 4; ++j) g.add_edge(i, j);
    netopt::Rng rng(9);
    for (StrategyKind k : netopt::kAllStrategies) {
        netopt::MeasureVector mv;
        mv.values.assign(4, 1.0);
        REQUIRE_THROWS_AS(netopt::propose_edge(g, k, &mv, rng), netopt::CompleteGraph);
    }
}

TEST_CASE("preferential attachment proposes valid non-edges", "[strategies]") {
    netopt::Rng grng(55);
    Graph g = oracles::random_connected_graph(6, 15, grng);
    netopt::Rng rng(56);
    for (int rep = 0; rep < 100; ++rep) {
        if (g.num_edges() ==
            static_cast<std::size_t>(g.num_nodes()) * (g.num_nodes() - 1) / 2)
            break;
        auto [u, v] = netopt::propose_edge(g, StrategyKind::PreferentialAttachment,
                                           nullptr, rng);
        REQUIRE(u != v);
        REQUIRE_FALSE(g.has_edge(u, v));
    }
}

TEST_CASE("extremal selection is invariant under monotone rescaling", "[strategies]") {
    netopt::Rng grng(77);
    Graph g = oracles::random_connected_graph(8, 20, grng);
    auto acc = netopt::accessibility(g, 2);
    netopt::MeasureVector scaled = acc;
    for (double& v : scaled.values) v = 3.7 * v + 11.0;

    for (StrategyKind k : {StrategyKind::Accessibility1, StrategyKind::Accessibility2,
                           StrategyKind::Accessibility3, StrategyKind::Betweenness}) {
        netopt::Rng r1(1234), r2(1234);
        auto e1 = netopt::propose_edge(g, k, &acc, r1);
        auto e2 = netopt::propose_edge(g, k, &scaled, r2);
        REQUIRE(e1 == e2);
    }
}

TEST_CASE("run_strategy basic contract", "[strategies]") {
    Graph g = path_graph(4);
    StrategyConfig cfg;
    cfg.kind = StrategyKind::Degree;
    cfg.n_a = 1;
    cfg.seed = 5;
    auto res = netopt::run_strategy(g, cfg);
    REQUIRE(res.trajectory.size() == 2);
    REQUIRE(res.trajectory[1] <= res.trajectory[0]);
    REQUIRE(res.final_graph.num_edges() == g.num_edges() + 1);
    REQUIRE(res.edges.size() == 1);
    REQUIRE(res.edges[0].iteration == 1);
}

TEST_CASE("run_strategy validates inputs", "[strategies]") {
    StrategyConfig cfg;
    cfg.kind = StrategyKind::Degree;
    cfg.n_a = 2;
    REQUIRE_THROWS_AS(netopt::run_strategy(path_graph(2), cfg), netopt::TooSmall);
    REQUIRE_THROWS_AS(netopt::run_strategy(path_graph(3), cfg),
                      netopt::BudgetExceedsCapacity);  // only 1 free pair in P3
    Graph disc(4);
    disc.add_edge(0, 1);
    disc.add_edge(2, 3);
    cfg.n_a = 1;
    REQUIRE_THROWS_AS(netopt::run_strategy(disc, cfg), netopt::DisconnectedGraph);
}

TEST_CASE("run_strategy is deterministic and replayable", "[strategies]") {
    netopt::Rng grng(303);
    Graph g = oracles::random_connected_graph(12, 25, grng);
    for (StrategyKind k : netopt::kAllStrategies) {
        StrategyConfig cfg;
        cfg.kind = k;
        cfg.n_a = 5;
        cfg.h = 2;
        cfg.seed = 909;
        auto r1 = netopt::run_strategy(g, cfg);
        auto r2 = netopt::run_strategy(g, cfg);
        REQUIRE(r1.trajectory == r2.trajectory);
        REQUIRE(r1.final_graph.fingerprint() == r2.final_graph.fingerprint());

        // replaying the added edges onto the initial graph reproduces the run
        Graph replay = g;
        for (const auto& e : r1.edges) replay.add_edge(e.u, e.v);
        REQUIRE(replay.fingerprint() == r1.final_graph.fingerprint());
        REQUIRE(r1.final_graph.num_edges() == g.num_edges() + 5);
    }
}

TEST_CASE("trajectories never increase across strategies and seeds", "[strategies]") {
    netopt::Rng grng(4242);
    int runs = 0;
    while (runs < 100) {
        Graph g = oracles::random_connected_graph(8, 24, grng);
        std::size_t pairs =
            static_cast<std::size_t>(g.num_nodes()) * (g.num_nodes() - 1) / 2;
        if (pairs - g.num_edges() < 3) continue;
        StrategyConfig cfg;
        cfg.kind = netopt::kAllStrategies[runs % netopt::kAllStrategies.size()];
        cfg.n_a = 3;
        cfg.h = 1 + runs % 3;
        cfg.seed = grng.next_u64();
        auto res = netopt::run_strategy(g, cfg);
        for (std::size_t i = 1; i < res.trajectory.size(); ++i)
            REQUIRE(res.trajectory[i] <= res.trajectory[i - 1] + 1e-12);
        ++runs;
    }
}

TEST_CASE("strategy tags round-trip", "[strategies]") {
    for (StrategyKind k : netopt::kAllStrategies) {
        auto back = netopt::strategy_from_tag(netopt::strategy_tag(k));
        REQUIRE(back.has_value());
        REQUIRE(*back == k);
    }
    REQUIRE(netopt::strategy_from_tag("regular-topology").has_value());
    REQUIRE_FALSE(netopt::strategy_from_tag("nope").has_value());
}
