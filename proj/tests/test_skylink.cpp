#include <cmath>

#include "doctest.h"
#include "graph_fixtures.hpp"
#include "leosim/skylink.hpp"

using namespace leosim;
using namespace leosim::testutil;

namespace {

TileCodingConfig default_tiles() { return {500e3, 2, 6000e3}; }

NodeId sat_id(int i) { return {NodeKind::Satellite, i}; }

// Tiny stationary bandit driver: arms at fixed distances with fixed base
// costs plus optional seeded noise; returns how often each arm ended up
// top-ranked over the final `tail` steps.
struct ToyRun {
    std::vector<int> top_counts;
    std::vector<std::int64_t> pulls;
    int final_top = -1;
};

ToyRun run_toy_bandit(const TileCodingConfig& tiles, const std::vector<double>& base_costs,
                      const std::vector<double>& distances, int steps, int tail,
                      std::uint64_t seed, double noise_std) {
    TimeSlotGraph g(0, 1 + static_cast<int>(base_costs.size()), 0);
    std::vector<int> edges;
    for (std::size_t a = 0; a < base_costs.size(); ++a)
        edges.push_back(add_isl(g, 0, 1 + static_cast<int>(a), 1e9, 1e-3));
    auto obs = observe(g, 0, 1e8);
    for (std::size_t a = 0; a < base_costs.size(); ++a)
        obs.links[a].distance_m = distances[a];

    BanditState state;
    Rng rng(seed);
    ToyRun result;
    result.top_counts.assign(base_costs.size(), 0);
    result.pulls.assign(base_costs.size(), 0);
    for (int t = 1; t <= steps; ++t) {
        state.slot_counter = t;
        auto prefs = rank_links(state, obs, tiles);
        std::size_t top_arm = 0;
        for (std::size_t a = 0; a < edges.size(); ++a)
            if (edges[a] == prefs.front()) top_arm = a;
        double cost = base_costs[top_arm];
        if (noise_std > 0.0) cost = std::clamp(cost + rng.normal(0.0, noise_std), 0.0, 0.2);
        bandit_update(state, sat_id(1 + static_cast<int>(top_arm)), cost, distances[top_arm],
                      tiles, 0.2);
        result.pulls[top_arm] += 1;
        if (t > steps - tail) result.top_counts[top_arm] += 1;
        result.final_top = static_cast<int>(top_arm);
    }
    return result;
}

}  // namespace

TEST_CASE("tile indices follow the shifted-partition quantization") {
    auto tiles = default_tiles();
    // 1100 km with 500 km tiles and offsets 0 / 250 km.
    CHECK(tile_indices(1.1e6, tiles) == std::vector<int>{2, 2});
    CHECK(tile_indices(0.0, tiles) == std::vector<int>{0, 0});
    CHECK(tile_indices(1.4e6, tiles) == std::vector<int>{2, 3});
}

TEST_CASE("tile indices are monotone step functions of distance") {
    auto tiles = default_tiles();
    std::vector<int> prev{0, 0};
    for (double d = 0.0; d < 7e6; d += 12345.0) {
        auto t = tile_indices(d, tiles);
        CHECK(t[0] >= prev[0]);
        CHECK(t[1] >= prev[1]);
        prev = t;
    }
    // Distances beyond the cap share the final tile.
    CHECK(tile_indices(6.0e6, tiles) == tile_indices(9.9e6, tiles));
}

TEST_CASE("ucb score hand evaluation") {
    TileCodingConfig one{6000e3, 1, 6000e3};
    BanditState state;
    auto arm = sat_id(1);
    for (int i = 0; i < 10; ++i) bandit_update(state, arm, 1.0, 100.0, one, 2.0);
    double got = ucb_score(state, arm, 100.0, 100, one);
    double expected = 1.0 - std::sqrt(2.0 * std::log(100.0) / 10.0);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    CHECK(got == doctest::Approx(0.0403).epsilon(1e-2));
}

TEST_CASE("unvisited arms score negative infinity and rank first") {
    auto tiles = default_tiles();
    BanditState state;
    state.slot_counter = 5;
    CHECK(ucb_score(state, sat_id(1), 1e6, 5, tiles) ==
          -std::numeric_limits<double>::infinity());

    // Partially visited arm (one partition seen, the other not) still -inf.
    TileStat& s = state.stat(sat_id(1), 0, tile_indices(1e6, tiles)[0]);
    s.mean_s = 0.01;
    s.count = 3;
    CHECK(ucb_score(state, sat_id(1), 1e6, 5, tiles) ==
          -std::numeric_limits<double>::infinity());
}

TEST_CASE("equal counts prefer the lower mean") {
    TileCodingConfig one{6000e3, 1, 6000e3};
    BanditState state;
    for (int i = 0; i < 7; ++i) {
        bandit_update(state, sat_id(1), 1.0, 100.0, one, 2.0);
        bandit_update(state, sat_id(2), 2.0, 100.0, one, 2.0);
    }
    CHECK(ucb_score(state, sat_id(1), 100.0, 50, one) <
          ucb_score(state, sat_id(2), 100.0, 50, one));
}

TEST_CASE("rank_links tie-break puts gsl first, then lower neighbor index") {
    TimeSlotGraph g(0, 3, 1);
    int isl_far = add_isl(g, 0, 2, 1e9, 1e-3);
    int isl_near = add_isl(g, 0, 1, 1e9, 1e-3);
    int gsl = add_gsl(g, 0, 0, 1e8, 1e-3);
    add_fiber(g, 0, 1e10, 1e-3);
    auto obs = observe(g, 0, 1e8);

    BanditState state;  // everything unvisited: pure tie-break ordering
    state.slot_counter = 1;
    auto prefs = rank_links(state, obs, default_tiles());
    REQUIRE(prefs.size() == 3);
    CHECK(prefs[0] == gsl);
    CHECK(prefs[1] == isl_near);
    CHECK(prefs[2] == isl_far);
}

TEST_CASE("rank_links orders by score like a plain sort") {
    TimeSlotGraph g(0, 5, 0);
    std::vector<int> edges;
    for (int a = 1; a <= 4; ++a) edges.push_back(add_isl(g, 0, a, 1e9, 1e-3));
    auto obs = observe(g, 0, 1e8);
    TileCodingConfig one{6000e3, 1, 6000e3};

    BanditState state;
    state.slot_counter = 40;
    std::vector<double> means{0.12, 0.02, 0.08, 0.05};
    for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 10; ++i)
            bandit_update(state, sat_id(1 + a), means[static_cast<std::size_t>(a)],
                          obs.links[static_cast<std::size_t>(a)].distance_m, one, 2.0);

    auto prefs = rank_links(state, obs, one);
    std::vector<std::pair<double, int>> oracle;
    for (int a = 0; a < 4; ++a)
        oracle.push_back({ucb_score(state, sat_id(1 + a),
                                    obs.links[static_cast<std::size_t>(a)].distance_m, 40, one),
                          edges[static_cast<std::size_t>(a)]});
    std::sort(oracle.begin(), oracle.end());
    for (int a = 0; a < 4; ++a) CHECK(prefs[static_cast<std::size_t>(a)] == oracle[static_cast<std::size_t>(a)].second);
}

TEST_CASE("bandit update maintains the running mean") {
    TileCodingConfig one{6000e3, 1, 6000e3};
    BanditState state;
    auto arm = sat_id(1);

    bandit_update(state, arm, 0.05, 100.0, one, 0.2);
    const TileStat* s = state.find(arm, 0, 0);
    REQUIRE(s != nullptr);
    CHECK(s->mean_s == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(s->count == 1);

    // (4 * 0.1 + 0.2) / 5 = 0.12
    BanditState fresh;
    for (int i = 0; i < 4; ++i) bandit_update(fresh, arm, 0.1, 100.0, one, 0.2);
    bandit_update(fresh, arm, 0.2, 100.0, one, 0.2);
    s = fresh.find(arm, 0, 0);
    CHECK(s->mean_s == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(s->count == 5);

    CHECK_THROWS_AS(bandit_update(fresh, arm, 0.5, 100.0, one, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(bandit_update(fresh, arm, -0.1, 100.0, one, 0.2), std::invalid_argument);
}

TEST_CASE("updates touch only the top link's current tiles") {
    auto tiles = default_tiles();
    BanditState state;
    bandit_update(state, sat_id(1), 0.1, 1.1e6, tiles, 0.2);

    auto hit = tile_indices(1.1e6, tiles);
    for (int g = 0; g < tiles.num_partitions; ++g) {
        for (int tile = 0; tile < 14; ++tile) {
            const TileStat* s = state.find(sat_id(1), g, tile);
            if (tile == hit[static_cast<std::size_t>(g)]) {
                REQUIRE(s != nullptr);
                CHECK(s->count == 1);
            } else {
                CHECK((s == nullptr || s->count == 0));
            }
        }
    }
    CHECK(state.find(sat_id(2), 0, 0) == nullptr);
}

TEST_CASE("counts per neighbor equal the times it was top choice") {
    auto tiles = default_tiles();
    auto run = run_toy_bandit(tiles, {0.05, 0.15, 0.1}, {4e5, 1.2e6, 2.6e6}, 500, 100, 21, 0.005);
    // Every slot updates exactly the chosen arm once per partition; the
    // partition-0 totals must add up to the number of slots.
    std::int64_t total = 0;
    for (std::int64_t p : run.pulls) total += p;
    CHECK(total == 500);
}

TEST_CASE("ucb consistency: the cheap arm dominates late play") {
    TileCodingConfig one{6000e3, 1, 6000e3};
    int wins = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto run = run_toy_bandit(one, {0.05, 0.15}, {1e6, 1e6}, 10000, 2000, seed, 0.01);
        if (run.top_counts[0] >= static_cast<int>(0.95 * 2000)) ++wins;
    }
    CHECK(wins >= 95);
}

TEST_CASE("adding a constant to every mean leaves the ranking unchanged") {
    TimeSlotGraph g(0, 4, 0);
    std::vector<int> edges;
    for (int a = 1; a <= 3; ++a) edges.push_back(add_isl(g, 0, a, 1e9, 1e-3));
    auto obs = observe(g, 0, 1e8);
    TileCodingConfig one{6000e3, 1, 6000e3};

    BanditState state, shifted;
    state.slot_counter = shifted.slot_counter = 60;
    std::vector<double> means{0.03, 0.11, 0.07};
    std::vector<int> counts{9, 4, 17};
    for (int a = 0; a < 3; ++a) {
        for (int i = 0; i < counts[static_cast<std::size_t>(a)]; ++i) {
            double d = obs.links[static_cast<std::size_t>(a)].distance_m;
            bandit_update(state, sat_id(1 + a), means[static_cast<std::size_t>(a)], d, one, 2.0);
            bandit_update(shifted, sat_id(1 + a), means[static_cast<std::size_t>(a)] + 0.5, d,
                          one, 2.0);
        }
    }
    CHECK(rank_links(state, obs, one) == rank_links(shifted, obs, one));
}

TEST_CASE("stored means never leave the cost range") {
    auto tiles = default_tiles();
    Rng rng(606);
    BanditState state;
    for (int i = 0; i < 2000; ++i) {
        double cost = rng.uniform(0.0, 0.2);
        double d = rng.uniform(0.0, 7e6);
        bandit_update(state, sat_id(static_cast<int>(rng.below(5))), cost, d, tiles, 0.2);
    }
    for (int nb = 0; nb < 5; ++nb) {
        for (int g = 0; g < tiles.num_partitions; ++g) {
            for (int tile = 0; tile < 20; ++tile) {
                const TileStat* s = state.find(sat_id(nb), g, tile);
                if (s == nullptr) continue;
                CHECK(s->mean_s >= 0.0);
                CHECK(s->mean_s <= 0.2);
            }
        }
    }
}

TEST_CASE("non-contextual variant pools every distance into one tile") {
    auto nc = TileCodingConfig::non_contextual(6000e3);
    CHECK(tile_indices(1e5, nc) == tile_indices(5.9e6, nc));
    CHECK(tile_indices(0.0, nc) == std::vector<int>{0});

    BanditState state;
    bandit_update(state, sat_id(1), 0.1, 1e5, nc, 0.2);
    bandit_update(state, sat_id(1), 0.2, 5.9e6, nc, 0.2);
    const TileStat* s = state.find(sat_id(1), 0, 0);
    REQUIRE(s != nullptr);
    CHECK(s->count == 2);
    CHECK(s->mean_s == doctest::Approx(0.15));
}

TEST_CASE("nc and contextual agree on a stationary single-context problem") {
    // Same distance for both arms: contextual tiles carry no extra
    // information, so both converge to the cheap arm.
    auto contextual = default_tiles();
    auto nc = TileCodingConfig::non_contextual(contextual.max_distance_m);
    auto run_ctx = run_toy_bandit(contextual, {0.04, 0.16}, {9e5, 9e5}, 4000, 500, 3, 0.01);
    auto run_nc = run_toy_bandit(nc, {0.04, 0.16}, {9e5, 9e5}, 4000, 500, 3, 0.01);
    CHECK(run_ctx.top_counts[0] > run_ctx.top_counts[1]);
    CHECK(run_nc.top_counts[0] > run_nc.top_counts[1]);
}

TEST_CASE("bandit state serializes to the documented json layout") {
    auto tiles = default_tiles();
    BanditState state;
    state.slot_counter = 42;
    bandit_update(state, sat_id(3), 0.07, 1.1e6, tiles, 0.2);
    bandit_update(state, {NodeKind::Ground, 1}, 0.02, 9e5, tiles, 0.2);

    auto j = state.to_json();
    CHECK(j["t"] == 42);
    CHECK(j["neighbors"].contains("sat:3"));
    CHECK(j["neighbors"].contains("ground:1"));
    CHECK(j["neighbors"]["sat:3"][0]["2"]["count"] == 1);
    CHECK(j["neighbors"]["sat:3"][0]["2"]["mean_s"] == doctest::Approx(0.07));

    auto restored = BanditState::from_json(j);
    CHECK(restored.slot_counter == 42);
    const TileStat* s = restored.find(sat_id(3), 1, tile_indices(1.1e6, tiles)[1]);
    REQUIRE(s != nullptr);
    CHECK(s->mean_s == doctest::Approx(0.07));
    CHECK(s->count == 1);
}
