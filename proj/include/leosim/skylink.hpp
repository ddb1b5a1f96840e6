#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "leosim/routers.hpp"

#include "json.hpp"

namespace leosim {

/// Overlapping-partition tile coding over link distance. Partition g is the
/// base quantization shifted by g * width / num_partitions.
struct TileCodingConfig {
    double tile_width_m = 500e3;
    int num_partitions = 2;
    double max_distance_m = 6000e3;

    /// Degenerate config used by the non-contextual variant: one partition,
    /// one tile spanning every distance.
    static TileCodingConfig non_contextual(double max_distance_m = 6000e3) {
        return {max_distance_m, 1, max_distance_m};
    }
};

/// One tile index per partition for distance d.
std::vector<int> tile_indices(double d_m, const TileCodingConfig& cfg);

struct TileStat {
    double mean_s = 0.0;
    std::int64_t count = 0;
};

/// Per-satellite learner state: running mean cost and visit count per
/// (neighbor, partition, tile), plus the local slot counter. Statistics for
/// a neighbor survive link loss so a re-established link resumes learning.
class BanditState {
public:
    std::int64_t slot_counter = 0;  // t in the UCB term; advanced by the router

    TileStat& stat(const NodeId& neighbor, int partition, int tile);
    const TileStat* find(const NodeId& neighbor, int partition, int tile) const;

    /// Total visits recorded for a neighbor across partitions/tiles, divided
    /// by the number of partitions (every update touches each partition once).
    std::int64_t visits(const NodeId& neighbor) const;

    nlohmann::json to_json() const;
    static BanditState from_json(const nlohmann::json& j);

private:
    struct ArmKey {
        int kind;
        int index;
        auto operator<=>(const ArmKey&) const = default;
    };
    // neighbor -> partition -> tile -> stat
    std::map<ArmKey, std::vector<std::map<int, TileStat>>> arms_;
};

/// Mean over partitions of (mean cost - sqrt(2 ln t / n)); any partition
/// with n = 0 forces -infinity so unvisited tiles are explored first.
double ucb_score(const BanditState& state, const NodeId& neighbor, double d_m, std::int64_t t,
                 const TileCodingConfig& cfg);

/// Outgoing edges sorted ascending by UCB score; ties broken by kind (GSL
/// before ISL) and then neighbor index.
PreferenceList rank_links(const BanditState& state, const LocalObservation& obs,
                          const TileCodingConfig& cfg);

/// Running-mean update of the top-preference link's tiles with the observed
/// cost; one count per partition tile. Costs outside [0, t_max] are invalid.
void bandit_update(BanditState& state, const NodeId& neighbor, double cost_s, double d_m,
                   const TileCodingConfig& cfg, double t_max_s);

struct SkyLinkParams {
    TileCodingConfig tiles;
    double sigma = 0.9;          // capacity uncertainty factor (used by the flow engine)
    double t_max_s = 0.2;
    bool update_all_used_links = false;  // experiment flag; default per the base algorithm
};

/// The contextual bandit router. One BanditState per satellite.
class SkyLinkRouter : public Router {
public:
    explicit SkyLinkRouter(const SkyLinkParams& params) : params_(params) {}

    PreferenceList decide(const LocalObservation& obs, Rng& rng) override;
    void feedback(const LocalObservation& obs, const PreferenceList& chosen,
                  double cost_s) override;

    const BanditState& state_for(int sat) const;
    BanditState& mutable_state_for(int sat) { return states_[sat]; }

    nlohmann::json states_to_json() const;
    void states_from_json(const nlohmann::json& j);

private:
    SkyLinkParams params_;
    std::map<int, BanditState> states_;
};

}  // namespace leosim
