#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "netopt/generators.hpp"
#include "netopt/graph.hpp"

using netopt::Graph;
using netopt::NodeId;

TEST_CASE("generators are deterministic in the seed", "[generators]") {
    REQUIRE(netopt::gen_er(60, 0.1, 7).fingerprint() == netopt::gen_er(60, 0.1, 7).fingerprint());
    REQUIRE(netopt::gen_er(60, 0.1, 7).fingerprint() != netopt::gen_er(60, 0.1, 8).fingerprint());
    REQUIRE(netopt::gen_ba(60, 3, 7).fingerprint() == netopt::gen_ba(60, 3, 7).fingerprint());
    REQUIRE(netopt::gen_ws(60, 4, 0.3, 7).fingerprint() ==
            netopt::gen_ws(60, 4, 0.3, 7).fingerprint());
    auto [g1, c1] = netopt::gen_wax(60, 0.5, 0.3, 7);
    auto [g2, c2] = netopt::gen_wax(60, 0.5, 0.3, 7);
    REQUIRE(g1.fingerprint() == g2.fingerprint());
    REQUIRE(c1.x == c2.x);
}

TEST_CASE("gen_er degenerate probabilities", "[generators]") {
    REQUIRE(netopt::gen_er(20, 0.0, 1).num_edges() == 0);
    REQUIRE(netopt::gen_er(20, 1.0, 1).num_edges() == 20 * 19 / 2);
}

TEST_CASE("gen_er edge count stays within four binomial sigmas", "[generators]") {
    const NodeId n = 200;
    const double p = 0.05;
    const double pairs = n * (n - 1) / 2.0;
    const double sigma = std::sqrt(pairs * p * (1 - p));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        double edges = static_cast<double>(netopt::gen_er(n, p, seed).num_edges());
        REQUIRE(std::fabs(edges - pairs * p) <= 4.0 * sigma);
    }
}

TEST_CASE("gen_er mean degree at the standard parameterization", "[generators]") {
    double total = 0.0;
    const int seeds = 30;
    for (int s = 0; s < seeds; ++s) {
        Graph g = netopt::gen_er(1000, 0.006, static_cast<std::uint64_t>(s));
        total += 2.0 * static_cast<double>(g.num_edges()) / 1000.0;
    }
    REQUIRE(total / seeds == Catch::Approx(5.994).margin(0.25));
}

TEST_CASE("gen_ba structure", "[generators]") {
    SECTION("n=m+1 is a clique") {
        Graph g = netopt::gen_ba(4, 3, 9);
        REQUIRE(g.num_edges() == 6);
    }
    SECTION("edge count is exactly m(m+1)/2 + m(n-m-1)") {
        Graph g = netopt::gen_ba(1000, 3, 11);
        REQUIRE(g.num_edges() == 6 + 3 * (1000 - 4));
        double mean_degree = 2.0 * static_cast<double>(g.num_edges()) / 1000.0;
        REQUIRE(mean_degree == Catch::Approx(6.0).margin(0.05));
    }
    SECTION("connected by construction") {
        for (std::uint64_t seed = 0; seed < 10; ++seed)
            REQUIRE(netopt::gen_ba(300, 2, seed).is_connected());
    }
}

TEST_CASE("gen_ws edge count is invariant under rewiring", "[generators]") {
    SECTION("p=0 gives the pure lattice") {
        Graph g = netopt::gen_ws(30, 6, 0.0, 3);
        for (NodeId u = 0; u < 30; ++u) REQUIRE(g.degree(u) == 6);
        REQUIRE(g.has_edge(0, 1));
        REQUIRE(g.has_edge(0, 29));
        REQUIRE(g.has_edge(0, 3));
    }
    SECTION("edge count is n*k/2 for any p") {
        for (double p : {0.1, 0.4, 1.0})
            for (std::uint64_t seed = 0; seed < 5; ++seed)
                REQUIRE(netopt::gen_ws(100, 6, p, seed).num_edges() == 300);
    }
}

TEST_CASE("gen_wax behavior", "[generators]") {
    SECTION("vanishing alpha gives an empty graph") {
        auto [g, coords] = netopt::gen_wax(50, 1e-300, 0.2, 5);
        REQUIRE(g.num_edges() == 0);
        REQUIRE(coords.x.size() == 50);
    }
    SECTION("coordinates live in the unit square") {
        auto [g, coords] = netopt::gen_wax(200, 0.014, 0.2, 5);
        for (std::size_t i = 0; i < coords.x.size(); ++i) {
            REQUIRE((coords.x[i] >= 0.0 && coords.x[i] <= 1.0));
            REQUIRE((coords.y[i] >= 0.0 && coords.y[i] <= 1.0));
        }
    }
    SECTION("huge alpha and beta approach the complete graph") {
        auto [g, coords] = netopt::gen_wax(20, 1.0, 1e9, 5);
        REQUIRE(g.num_edges() == 20 * 19 / 2);
    }
    SECTION("default normalization lands near mean degree 6") {
        double total = 0.0;
        const int seeds = 5;
        for (int s = 0; s < seeds; ++s) {
            auto [g, coords] = netopt::gen_wax(1000, 0.014, 0.2, static_cast<std::uint64_t>(s));
            total += 2.0 * static_cast<double>(g.num_edges()) / 1000.0;
        }
        REQUIRE(total / seeds == Catch::Approx(6.0).margin(0.5));
    }
}

TEST_CASE("generator parameter validation", "[generators]") {
    REQUIRE_THROWS_AS(netopt::gen_er(1, 0.5, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_er(10, 1.5, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_ba(3, 3, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_ba(10, 0, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_ws(10, 3, 0.1, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_ws(10, 10, 0.1, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_wax(10, 0.0, 0.2, 0), netopt::BadParams);
    REQUIRE_THROWS_AS(netopt::gen_wax(10, 0.5, -1.0, 0), netopt::BadParams);
}

TEST_CASE("dispatch through ModelParams matches direct calls", "[generators]") {
    netopt::ModelParams mp;
    mp.kind = netopt::ModelKind::Ws;
    mp.n = 40;
    mp.k_ring = 4;
    mp.p = 0.2;
    mp.seed = 77;
    auto gen = netopt::generate(mp);
    REQUIRE(gen.graph.fingerprint() == netopt::gen_ws(40, 4, 0.2, 77).fingerprint());
    REQUIRE_FALSE(gen.coords.has_value());

    mp.kind = netopt::ModelKind::Wax;
    mp.alpha = 0.5;
    mp.beta = 0.5;
    auto wax = netopt::generate(mp);
    REQUIRE(wax.coords.has_value());
}
