#include "leosim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace leosim {

std::vector<bool> apply_failures(int num_sats, const FailureSchedule& schedule, int slot) {
    std::vector<bool> mask(static_cast<std::size_t>(num_sats), false);
    if (slot < schedule.start_slot || slot >= schedule.end_slot) return mask;
    int count = static_cast<int>(std::ceil(schedule.fraction * num_sats));
    if (count <= 0) return mask;
    if (count > num_sats) count = num_sats;
    // Fixed subset for the whole window: partial Fisher-Yates on the id list
    // seeded only by selection_seed.
    std::vector<int> ids(static_cast<std::size_t>(num_sats));
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng = Rng::substream(schedule.selection_seed, "failure-selection");
    for (int i = 0; i < count; ++i) {
        auto j = static_cast<std::size_t>(i) +
                 static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(num_sats - i)));
        std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
        mask[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = true;
    }
    return mask;
}

double RunResult::mean_cost(std::size_t from_slot) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = from_slot; i < records.size(); ++i, ++n) sum += records[i].cost_s;
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

double RunResult::mean_drop(std::size_t from_slot) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = from_slot; i < records.size(); ++i, ++n) sum += records[i].drop_rate;
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

double RunResult::mean_throughput(std::size_t from_slot) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = from_slot; i < records.size(); ++i, ++n)
        sum += records[i].throughput_bps;
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

namespace {

struct Scenario {
    EphemerisTable ephemeris;
    std::vector<EcefPosition> station_ecef;
    PopulationGrid population;
};

Scenario prepare_scenario(const SimConfig& cfg) {
    Scenario s{cfg.ephemeris_path
                   ? load_ephemeris(*cfg.ephemeris_path, cfg.slot_duration_s)
                   : build_walker_table(cfg.walker, cfg.slots, cfg.slot_duration_s),
               {},
               {}};
    if (s.ephemeris.num_nodes() != cfg.layout.num_sats())
        throw ConfigError("ephemeris covers " + std::to_string(s.ephemeris.num_nodes()) +
                          " satellites but the plane layout expects " +
                          std::to_string(cfg.layout.num_sats()));
    if (s.ephemeris.num_slots() < cfg.slots)
        throw ConfigError("ephemeris covers " + std::to_string(s.ephemeris.num_slots()) +
                          " slots but the run needs " + std::to_string(cfg.slots));
    if (cfg.stations.empty()) throw ConfigError("scenario has no ground stations");
    for (const auto& gs : cfg.stations)
        s.station_ecef.push_back(geodetic_to_ecef(gs.location));
    s.population =
        cfg.population_path ? load_population_csv(*cfg.population_path) : synth_population(cfg.hotspots);
    if (s.population.total_population() <= 0.0)
        throw ConfigError("population is empty; nothing would ever be generated");
    return s;
}

}  // namespace

RunResult run_with_router(const SimConfig& cfg, Router& router, RouterKind router_kind,
                          std::uint64_t seed, const SlotObserver& observer) {
    Scenario scenario = prepare_scenario(cfg);
    int num_sats = cfg.layout.num_sats();
    int num_ground = static_cast<int>(cfg.stations.size());

    Rng router_rng = Rng::substream(seed, "router");

    // Fiber delay bases are drawn once per run, noise per station per slot.
    Rng fiber_base_rng = Rng::substream(seed, "fiber-base");
    std::vector<double> fiber_base(static_cast<std::size_t>(num_ground));
    std::vector<Rng> fiber_noise;
    for (int j = 0; j < num_ground; ++j) {
        fiber_base[static_cast<std::size_t>(j)] = fiber_delay_base_s(fiber_base_rng, cfg.channel);
        fiber_noise.push_back(Rng::substream(seed, "fiber-noise", static_cast<std::uint64_t>(j)));
    }

    std::vector<bool> present(static_cast<std::size_t>(num_sats), true);
    RunResult result;
    result.router = router_kind;
    result.seed = seed;
    result.records.reserve(static_cast<std::size_t>(cfg.slots));

    for (int slot = 0; slot < cfg.slots; ++slot) {
        double utc = cfg.start_utc_s + slot * cfg.slot_duration_s;
        auto positions = scenario.ephemeris.slot_positions(slot);

        std::vector<bool> failure_mask(static_cast<std::size_t>(num_sats), false);
        if (cfg.failure) failure_mask = apply_failures(num_sats, *cfg.failure, slot);

        std::vector<double> fiber_slot(static_cast<std::size_t>(num_ground));
        for (int j = 0; j < num_ground; ++j)
            fiber_slot[static_cast<std::size_t>(j)] = fiber_delay_slot_s(
                fiber_base[static_cast<std::size_t>(j)], fiber_noise[static_cast<std::size_t>(j)],
                cfg.channel);

        TimeSlotGraph graph =
            build_slot_graph(slot, positions, cfg.layout, present, failure_mask, cfg.stations,
                             scenario.station_ecef, fiber_slot, cfg.channel, cfg.topology);

        // Traffic: population follows the sub-satellite points each slot.
        auto pop_per_sat = assign_cells(positions, scenario.population);
        std::vector<double> generated(static_cast<std::size_t>(num_sats), 0.0);
        for (int sat = 0; sat < num_sats; ++sat) {
            auto sp = subsatellite_point(positions[static_cast<std::size_t>(sat)]);
            int hour = local_solar_hour(sp.longitude_deg, utc);
            generated[static_cast<std::size_t>(sat)] =
                generation_rate_bps(pop_per_sat[static_cast<std::size_t>(sat)], cfg.traffic, hour);
        }

        auto weights = routing_weights(graph, fiber_base);
        router.begin_slot(graph, weights, slot);

        std::vector<PreferenceList> decisions(static_cast<std::size_t>(graph.node_count()));
        std::vector<LocalObservation> observations(static_cast<std::size_t>(num_sats));
        for (int sat = 0; sat < num_sats; ++sat) {
            observations[static_cast<std::size_t>(sat)] =
                observe(graph, sat, generated[static_cast<std::size_t>(sat)]);
            decisions[static_cast<std::size_t>(sat)] =
                router.decide(observations[static_cast<std::size_t>(sat)], router_rng);
        }
        // Ground stations always forward to their fiber edge.
        for (int j = 0; j < num_ground; ++j) {
            int node = graph.ground_node(j);
            for (int e : graph.out_edges(node))
                if (graph.edges()[static_cast<std::size_t>(e)].kind == LinkKind::Fiber)
                    decisions[static_cast<std::size_t>(node)].push_back(e);
        }

        SlotOutcome outcome = propagate_slot(graph, decisions, generated, cfg.ttl, cfg.buffers,
                                             cfg.skylink.sigma);

        // End-of-slot cost feedback, only where the satellite originated
        // traffic this slot (the cost is undefined otherwise).
        for (int sat = 0; sat < num_sats; ++sat) {
            if (generated[static_cast<std::size_t>(sat)] <= 0.0) continue;
            PreferenceList chosen = decisions[static_cast<std::size_t>(sat)];
            if (cfg.skylink.update_all_used_links) {
                PreferenceList used;
                for (int e : chosen)
                    if (outcome.edge_load_bps[static_cast<std::size_t>(e)] > 0.0)
                        used.push_back(e);
                chosen = used;
            }
            router.feedback(observations[static_cast<std::size_t>(sat)], chosen,
                             per_sat_cost_s(outcome, sat));
        }

        MetricsRecord rec = slot_metrics(outcome);
        rec.slot = slot;
        rec.utc_s = utc;
        result.records.push_back(rec);
        if (observer) observer(slot, graph, outcome);
    }
    return result;
}

RunResult run_simulation_with(const SimConfig& cfg, RouterKind router_kind, std::uint64_t seed,
                              const SlotObserver& observer) {
    auto router = make_router(router_kind, cfg.k_paths, cfg.skylink);
    return run_with_router(cfg, *router, router_kind, seed, observer);
}

RunResult run_simulation(const SimConfig& cfg, std::uint64_t seed, const SlotObserver& observer) {
    return run_simulation_with(cfg, cfg.router, seed, observer);
}

ComparisonReport compare_routers(const SimConfig& cfg, const std::vector<RouterKind>& routers) {
    if (routers.size() < 2)
        throw std::invalid_argument("compare_routers needs at least two routers");
    ComparisonReport report;
    for (RouterKind kind : routers) {
        RouterAggregate agg;
        agg.router = kind;
        double slots_total = 0.0;
        for (std::uint64_t seed : cfg.seeds) {
            RunResult run = run_simulation_with(cfg, kind, seed);
            for (const auto& rec : run.records) {
                agg.mean_cost_s += rec.cost_s;
                agg.mean_drop_rate += rec.drop_rate;
                agg.mean_throughput_bps += rec.throughput_bps;
                agg.total_delivered_bits += rec.throughput_bps * cfg.slot_duration_s;
                slots_total += 1.0;
            }
        }
        if (slots_total > 0.0) {
            agg.mean_cost_s /= slots_total;
            agg.mean_drop_rate /= slots_total;
            agg.mean_throughput_bps /= slots_total;
        }
        report.aggregates.push_back(agg);
    }

    auto pct = [](double mine, double theirs, bool higher_better) {
        if (theirs == 0.0 && mine == 0.0) return 0.0;
        if (higher_better) return theirs != 0.0 ? (mine - theirs) / theirs * 100.0 : 0.0;
        return theirs != 0.0 ? (theirs - mine) / theirs * 100.0 : 0.0;
    };
    std::size_t n = report.aggregates.size();
    report.cost_reduction_pct.assign(n, std::vector<double>(n, 0.0));
    report.drop_reduction_pct.assign(n, std::vector<double>(n, 0.0));
    report.throughput_gain_pct.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& a = report.aggregates[i];
            const auto& b = report.aggregates[j];
            report.cost_reduction_pct[i][j] = pct(a.mean_cost_s, b.mean_cost_s, false);
            report.drop_reduction_pct[i][j] = pct(a.mean_drop_rate, b.mean_drop_rate, false);
            report.throughput_gain_pct[i][j] =
                pct(a.mean_throughput_bps, b.mean_throughput_bps, true);
        }
    }
    return report;
}

nlohmann::json ComparisonReport::to_json() const {
    nlohmann::json j;
    nlohmann::json aggs = nlohmann::json::array();
    for (const auto& a : aggregates) {
        aggs.push_back({{"router", router_kind_name(a.router)},
                        {"mean_cost_s", a.mean_cost_s},
                        {"mean_drop_rate", a.mean_drop_rate},
                        {"mean_throughput_bps", a.mean_throughput_bps},
                        {"total_delivered_bits", a.total_delivered_bits}});
    }
    j["routers"] = aggs;
    auto matrix = [&](const std::vector<std::vector<double>>& m) {
        nlohmann::json out = nlohmann::json::object();
        for (std::size_t i = 0; i < aggregates.size(); ++i) {
            nlohmann::json row = nlohmann::json::object();
            for (std::size_t k = 0; k < aggregates.size(); ++k)
                row[router_kind_name(aggregates[k].router)] = m[i][k];
            out[router_kind_name(aggregates[i].router)] = row;
        }
        return out;
    };
    j["cost_reduction_pct"] = matrix(cost_reduction_pct);
    j["drop_reduction_pct"] = matrix(drop_reduction_pct);
    j["throughput_gain_pct"] = matrix(throughput_gain_pct);
    return j;
}

TileSweepResult sweep_tiles(const SimConfig& cfg, const std::vector<double>& widths_m,
                            const std::vector<int>& partition_counts) {
    if (widths_m.empty() || partition_counts.empty())
        throw std::invalid_argument("sweep_tiles needs non-empty parameter lists");
    TileSweepResult result;
    result.widths_m = widths_m;
    result.partition_counts = partition_counts;
    for (double width : widths_m) {
        std::vector<double> row;
        for (int partitions : partition_counts) {
            SimConfig cell = cfg;
            cell.router = RouterKind::SkyLink;
            cell.skylink.tiles.tile_width_m = width;
            cell.skylink.tiles.num_partitions = partitions;
            double cost = 0.0;
            for (std::uint64_t seed : cell.seeds)
                cost += run_simulation(cell, seed).mean_cost();
            row.push_back(cost / static_cast<double>(cell.seeds.size()));
        }
        result.mean_cost_s.push_back(row);
    }
    return result;
}

}  // namespace leosim
