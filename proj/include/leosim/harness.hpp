#pragma once

#include <functional>
#include <string>
#include <vector>

#include "leosim/config.hpp"
#include "leosim/metrics.hpp"

#include "json.hpp"

namespace leosim {

/// Failure mask for one slot: true means the satellite's GSLs are down.
std::vector<bool> apply_failures(int num_sats, const FailureSchedule& schedule, int slot);

/// Called after every simulated slot; used by tests and the acceptance suite
/// to check invariants on the raw outcome.
using SlotObserver =
    std::function<void(int slot, const TimeSlotGraph& graph, const SlotOutcome& outcome)>;

struct RunResult {
    std::vector<MetricsRecord> records;
    RouterKind router;
    std::uint64_t seed = 0;

    double mean_cost(std::size_t from_slot = 0) const;
    double mean_drop(std::size_t from_slot = 0) const;
    double mean_throughput(std::size_t from_slot = 0) const;
};

/// One full deterministic run: positions -> graph (with failures) -> traffic
/// -> decisions -> propagation -> cost feedback -> metrics, per slot.
RunResult run_simulation(const SimConfig& cfg, std::uint64_t seed,
                         const SlotObserver& observer = nullptr);

/// As above but with an explicit router override.
RunResult run_simulation_with(const SimConfig& cfg, RouterKind router, std::uint64_t seed,
                              const SlotObserver& observer = nullptr);

/// Runs one seed against a caller-owned router instance (e.g. for warm
/// starts or state inspection).
RunResult run_with_router(const SimConfig& cfg, Router& router, RouterKind kind,
                          std::uint64_t seed, const SlotObserver& observer = nullptr);

struct RouterAggregate {
    RouterKind router;
    double mean_cost_s = 0.0;
    double mean_drop_rate = 0.0;
    double mean_throughput_bps = 0.0;
    double total_delivered_bits = 0.0;
};

struct ComparisonReport {
    std::vector<RouterAggregate> aggregates;
    // ratios[i][j] compares router i against router j (positive: i better).
    std::vector<std::vector<double>> cost_reduction_pct;
    std::vector<std::vector<double>> drop_reduction_pct;
    std::vector<std::vector<double>> throughput_gain_pct;

    nlohmann::json to_json() const;
};

/// Runs every router over the identical scenario and seed list (traffic and
/// failure randomness shared) and tabulates pairwise ratios.
ComparisonReport compare_routers(const SimConfig& cfg, const std::vector<RouterKind>& routers);

struct TileSweepResult {
    std::vector<double> widths_m;
    std::vector<int> partition_counts;
    // mean_cost[w][p] for widths_m[w] x partition_counts[p]
    std::vector<std::vector<double>> mean_cost_s;
};

/// Mean network cost of the learning router per (tile width, partitions)
/// cell, every cell run over the same seeds.
TileSweepResult sweep_tiles(const SimConfig& cfg, const std::vector<double>& widths_m,
                            const std::vector<int>& partition_counts);

}  // namespace leosim
