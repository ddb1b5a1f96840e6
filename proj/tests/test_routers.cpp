#include <algorithm>
#include <set>

#include "doctest.h"
#include "graph_fixtures.hpp"
#include "leosim/routers.hpp"
#include "leosim/skylink.hpp"

using namespace leosim;
using namespace leosim::testutil;

namespace {

// Mixed six-link satellite: 4 ISLs, 2 GSLs, as seen from sat 0.
TimeSlotGraph mixed_graph() {
    TimeSlotGraph g(0, 5, 2);
    add_isl(g, 0, 1, 1e9, 3e-3);
    add_isl(g, 0, 2, 1e9, 3e-3);
    add_isl(g, 0, 3, 1e9, 3e-3);
    add_isl(g, 0, 4, 1e9, 3e-3);
    add_gsl(g, 0, 0, 1e8, 4e-3);
    add_gsl(g, 0, 1, 1e8, 4e-3);
    add_fiber(g, 0, 1e10, 2e-3);
    add_fiber(g, 1, 1e10, 2e-3);
    return g;
}

}  // namespace

TEST_CASE("bent pipe keeps only gsl edges") {
    auto g = mixed_graph();
    auto obs = observe(g, 0, 1e8);
    Rng rng(3);
    auto prefs = bent_pipe_decide(obs, rng);
    REQUIRE(prefs.size() == 2);
    for (int e : prefs) CHECK(g.edges()[static_cast<std::size_t>(e)].kind == LinkKind::Gsl);

    SUBCASE("no gsl means empty list") {
        TimeSlotGraph isolated(0, 2, 0);
        add_isl(isolated, 0, 1, 1e9, 3e-3);
        auto lonely = observe(isolated, 0, 1e8);
        Rng r2(3);
        CHECK(bent_pipe_decide(lonely, r2).empty());
    }

    SUBCASE("single gsl is a singleton") {
        TimeSlotGraph single(0, 1, 1);
        add_gsl(single, 0, 0, 1e8, 4e-3);
        add_fiber(single, 0, 1e10, 2e-3);
        auto one = observe(single, 0, 1e8);
        Rng r2(3);
        CHECK(bent_pipe_decide(one, r2).size() == 1);
    }
}

TEST_CASE("bent pipe shuffle equals the reference fisher-yates oracle") {
    TimeSlotGraph g(0, 1, 3);
    int e0 = add_gsl(g, 0, 0, 1e8, 4e-3);
    int e1 = add_gsl(g, 0, 1, 1e8, 4e-3);
    int e2 = add_gsl(g, 0, 2, 1e8, 4e-3);
    for (int j = 0; j < 3; ++j) add_fiber(g, j, 1e10, 2e-3);
    auto obs = observe(g, 0, 1e8);

    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        Rng rng(seed);
        auto prefs = bent_pipe_decide(obs, rng);

        // Reference shuffle: independent Fisher-Yates over the same stream.
        std::vector<int> expected{e0, e1, e2};
        Rng oracle(seed);
        for (std::size_t i = expected.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(oracle.below(i));
            std::swap(expected[i - 1], expected[j]);
        }
        CHECK(prefs == expected);
    }
}

TEST_CASE("random router covers every edge and stays uniform") {
    auto g = mixed_graph();
    auto obs = observe(g, 0, 1e8);

    Rng rng(12);
    auto prefs = random_decide(obs, rng);
    CHECK(prefs.size() == 6);

    SUBCASE("determinism per seed") {
        Rng a(5), b(5);
        CHECK(random_decide(obs, a) == random_decide(obs, b));
    }

    SUBCASE("each of four links leads about a quarter of the time") {
        TimeSlotGraph four(0, 5, 0);
        std::vector<int> edges{add_isl(four, 0, 1, 1e9, 1e-3), add_isl(four, 0, 2, 1e9, 1e-3),
                               add_isl(four, 0, 3, 1e9, 1e-3), add_isl(four, 0, 4, 1e9, 1e-3)};
        auto o = observe(four, 0, 1e8);
        std::map<int, int> first_counts;
        Rng r(2718);
        const int trials = 10000;
        for (int t = 0; t < trials; ++t) first_counts[random_decide(o, r).front()] += 1;
        for (int e : edges) {
            double share = first_counts[e] / static_cast<double>(trials);
            CHECK(share > 0.23);
            CHECK(share < 0.27);
        }
    }
}

TEST_CASE("dijkstra next hop on hand graphs") {
    SUBCASE("unique chain") {
        TimeSlotGraph g(0, 1, 1);
        int gsl = add_gsl(g, 0, 0, 1e8, 4e-3);
        int fiber = add_fiber(g, 0, 1e10, 2e-3);
        auto next = dijkstra_next_hop(g, delay_weights(g));
        CHECK(next[0] == gsl);
        CHECK(next[static_cast<std::size_t>(g.ground_node(0))] == fiber);
    }

    SUBCASE("two cheap hops beat one expensive hop") {
        TimeSlotGraph g(0, 2, 2);
        int direct = add_gsl(g, 0, 0, 1e8, 8e-3);
        int via = add_isl(g, 0, 1, 1e9, 3e-3);
        add_gsl(g, 1, 1, 1e8, 4e-3);
        add_fiber(g, 0, 1e10, 0.0);
        add_fiber(g, 1, 1e10, 0.0);
        auto next = dijkstra_next_hop(g, delay_weights(g));
        CHECK(next[0] == via);
        CHECK(next[0] != direct);
    }

    SUBCASE("unreachable nodes get none") {
        TimeSlotGraph g(0, 2, 0);
        add_isl(g, 0, 1, 1e9, 3e-3);
        auto next = dijkstra_next_hop(g, delay_weights(g));
        CHECK(next[0] == -1);
        CHECK(next[1] == -1);
    }
}

TEST_CASE("dijkstra agrees with exhaustive enumeration") {
    Rng rng(404);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_graph(rng);
        auto weights = delay_weights(g);
        auto next = dijkstra_next_hop(g, weights);
        for (int v = 0; v < g.node_count() - 1; ++v) {
            auto oracle = enumerate_paths(g, v, weights);
            if (oracle.empty()) {
                CHECK(next[static_cast<std::size_t>(v)] == -1);
                continue;
            }
            REQUIRE(next[static_cast<std::size_t>(v)] >= 0);
            // Walk the chosen hops and compare against the optimum.
            double total = 0.0;
            int node = v;
            while (node != g.internet_node()) {
                int e = next[static_cast<std::size_t>(node)];
                REQUIRE(e >= 0);
                total += weights[static_cast<std::size_t>(e)];
                node = g.edges()[static_cast<std::size_t>(e)].dst;
            }
            CHECK(total == doctest::Approx(oracle.front().total).epsilon(1e-9));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("yen k shortest paths") {
    SUBCASE("exhausts when only one path exists") {
        TimeSlotGraph g(0, 1, 1);
        add_gsl(g, 0, 0, 1e8, 4e-3);
        add_fiber(g, 0, 1e10, 2e-3);
        auto paths = yen_k_shortest(g, 0, 4, delay_weights(g));
        CHECK(paths.size() == 1);
    }

    SUBCASE("k = 1 equals dijkstra") {
        Rng rng(77);
        for (int trial = 0; trial < 30; ++trial) {
            auto g = random_graph(rng);
            auto weights = delay_weights(g);
            auto next = dijkstra_next_hop(g, weights);
            for (int v = 0; v < g.num_sats(); ++v) {
                auto paths = yen_k_shortest(g, v, 1, weights);
                if (paths.empty()) {
                    CHECK(next[static_cast<std::size_t>(v)] == -1);
                } else {
                    double total = 0.0;
                    int node = v;
                    while (node != g.internet_node()) {
                        int e = next[static_cast<std::size_t>(node)];
                        total += weights[static_cast<std::size_t>(e)];
                        node = g.edges()[static_cast<std::size_t>(e)].dst;
                    }
                    CHECK(paths.front().total_s == doctest::Approx(total).epsilon(1e-9));
                }
            }
        }
    }

    SUBCASE("matches brute force enumeration") {
        Rng rng(500);
        for (int trial = 0; trial < 40; ++trial) {
            auto g = random_graph(rng);
            auto weights = delay_weights(g);
            for (int v = 0; v < g.num_sats(); ++v) {
                auto oracle = enumerate_paths(g, v, weights);
                auto got = yen_k_shortest(g, v, 4, weights);
                std::size_t expect = std::min<std::size_t>(4, oracle.size());
                REQUIRE(got.size() == expect);
                for (std::size_t i = 0; i < expect; ++i) {
                    CHECK(got[i].total_s == doctest::Approx(oracle[i].total).epsilon(1e-9));
                    if (i > 0) CHECK(got[i - 1].total_s <= got[i].total_s + 1e-12);
                    // loop-free check
                    std::set<int> nodes{v};
                    for (int e : got[i].edges) {
                        int dst = g.edges()[static_cast<std::size_t>(e)].dst;
                        CHECK(nodes.insert(dst).second);
                    }
                }
            }
        }
    }
}

TEST_CASE("preference lists are always a duplicate-free subset of out edges") {
    Rng rng(9001);
    SkyLinkParams params;
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graph(rng);
        auto weights = delay_weights(g);
        for (RouterKind kind : {RouterKind::BentPipe, RouterKind::Random, RouterKind::Dijkstra,
                                RouterKind::KShortest, RouterKind::SkyLink}) {
            auto router = make_router(kind, 4, params);
            router->begin_slot(g, weights, 0);
            for (int v = 0; v < g.num_sats(); ++v) {
                auto obs = observe(g, v, 1e8);
                auto prefs = router->decide(obs, rng);
                std::set<int> seen;
                for (int e : prefs) {
                    CHECK(seen.insert(e).second);
                    const auto& out = g.out_edges(v);
                    CHECK(std::find(out.begin(), out.end(), e) != out.end());
                }
            }
        }
    }
}

TEST_CASE("baselines ignore feedback") {
    auto g = mixed_graph();
    auto weights = delay_weights(g);
    auto obs = observe(g, 0, 1e8);
    SkyLinkParams params;
    for (RouterKind kind :
         {RouterKind::BentPipe, RouterKind::Random, RouterKind::Dijkstra, RouterKind::KShortest}) {
        auto with_feedback = make_router(kind, 4, params);
        auto without = make_router(kind, 4, params);
        with_feedback->begin_slot(g, weights, 0);
        without->begin_slot(g, weights, 0);
        Rng a(1), b(1);
        auto first = with_feedback->decide(obs, a);
        (void)without->decide(obs, b);
        with_feedback->feedback(obs, first, 0.123);
        CHECK(with_feedback->decide(obs, a) == without->decide(obs, b));
    }
}

TEST_CASE("scaling every weight leaves shortest-path choices unchanged") {
    Rng rng(246);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_graph(rng);
        auto weights = delay_weights(g);
        auto scaled = weights;
        for (double& w : scaled) w *= 37.5;
        CHECK(dijkstra_next_hop(g, weights) == dijkstra_next_hop(g, scaled));
    }
}

TEST_CASE("router names round-trip") {
    for (RouterKind kind : {RouterKind::SkyLink, RouterKind::NcSkyLink, RouterKind::Dijkstra,
                            RouterKind::KShortest, RouterKind::BentPipe, RouterKind::Random})
        CHECK(parse_router_kind(router_kind_name(kind)) == kind);
    CHECK(!parse_router_kind("carrier-pigeon").has_value());
}
