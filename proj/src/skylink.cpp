#include "leosim/skylink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leosim {

namespace {
// Distances at or beyond max_distance share the final tile.
double capped_distance(double d_m, const TileCodingConfig& cfg) {
    double cap = std::nextafter(cfg.max_distance_m, 0.0);
    return d_m < cap ? d_m : cap;
}
}  // namespace

std::vector<int> tile_indices(double d_m, const TileCodingConfig& cfg) {
    if (d_m < 0.0) throw std::invalid_argument("tile_indices: negative distance");
    if (cfg.tile_width_m <= 0.0 || cfg.num_partitions < 1)
        throw std::invalid_argument("tile_indices: invalid tile config");
    double d = capped_distance(d_m, cfg);
    std::vector<int> tiles(static_cast<std::size_t>(cfg.num_partitions));
    for (int g = 0; g < cfg.num_partitions; ++g) {
        double offset = g * cfg.tile_width_m / cfg.num_partitions;
        tiles[static_cast<std::size_t>(g)] =
            static_cast<int>(std::floor((d + offset) / cfg.tile_width_m));
    }
    return tiles;
}

TileStat& BanditState::stat(const NodeId& neighbor, int partition, int tile) {
    ArmKey key{static_cast<int>(neighbor.kind), neighbor.index};
    auto& partitions = arms_[key];
    if (partitions.size() <= static_cast<std::size_t>(partition))
        partitions.resize(static_cast<std::size_t>(partition) + 1);
    return partitions[static_cast<std::size_t>(partition)][tile];
}

const TileStat* BanditState::find(const NodeId& neighbor, int partition, int tile) const {
    ArmKey key{static_cast<int>(neighbor.kind), neighbor.index};
    auto arm = arms_.find(key);
    if (arm == arms_.end()) return nullptr;
    if (arm->second.size() <= static_cast<std::size_t>(partition)) return nullptr;
    const auto& tiles = arm->second[static_cast<std::size_t>(partition)];
    auto it = tiles.find(tile);
    return it == tiles.end() ? nullptr : &it->second;
}

std::int64_t BanditState::visits(const NodeId& neighbor) const {
    ArmKey key{static_cast<int>(neighbor.kind), neighbor.index};
    auto arm = arms_.find(key);
    if (arm == arms_.end() || arm->second.empty()) return 0;
    std::int64_t total = 0;
    for (const auto& [tile, stat] : arm->second.front()) total += stat.count;
    return total;
}

double ucb_score(const BanditState& state, const NodeId& neighbor, double d_m, std::int64_t t,
                 const TileCodingConfig& cfg) {
    auto tiles = tile_indices(d_m, cfg);
    double sum = 0.0;
    for (int g = 0; g < cfg.num_partitions; ++g) {
        const TileStat* s = state.find(neighbor, g, tiles[static_cast<std::size_t>(g)]);
        if (s == nullptr || s->count == 0)
            return -std::numeric_limits<double>::infinity();  // visit-first semantics
        double log_t = t >= 1 ? std::log(static_cast<double>(t)) : 0.0;
        sum += s->mean_s - std::sqrt(2.0 * log_t / static_cast<double>(s->count));
    }
    return sum / cfg.num_partitions;
}

PreferenceList rank_links(const BanditState& state, const LocalObservation& obs,
                          const TileCodingConfig& cfg) {
    struct Scored {
        double score;
        int kind_rank;
        int neighbor_index;
        int edge_index;
    };
    std::vector<Scored> scored;
    scored.reserve(obs.links.size());
    for (const auto& link : obs.links) {
        double s = ucb_score(state, link.neighbor, link.distance_m, state.slot_counter, cfg);
        scored.push_back({s, link.kind == LinkKind::Gsl ? 0 : 1, link.neighbor.index,
                          link.edge_index});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.score != b.score) return a.score < b.score;
        if (a.kind_rank != b.kind_rank) return a.kind_rank < b.kind_rank;
        return a.neighbor_index < b.neighbor_index;
    });
    PreferenceList prefs;
    prefs.reserve(scored.size());
    for (const auto& s : scored) prefs.push_back(s.edge_index);
    return prefs;
}

void bandit_update(BanditState& state, const NodeId& neighbor, double cost_s, double d_m,
                   const TileCodingConfig& cfg, double t_max_s) {
    if (cost_s < 0.0 || cost_s > t_max_s)
        throw std::invalid_argument("bandit_update: cost outside [0, t_max]");
    auto tiles = tile_indices(d_m, cfg);
    for (int g = 0; g < cfg.num_partitions; ++g) {
        TileStat& s = state.stat(neighbor, g, tiles[static_cast<std::size_t>(g)]);
        s.mean_s = (static_cast<double>(s.count) * s.mean_s + cost_s) /
                   (static_cast<double>(s.count) + 1.0);
        s.count += 1;
    }
}

nlohmann::json BanditState::to_json() const {
    nlohmann::json j;
    j["t"] = slot_counter;
    nlohmann::json neighbors = nlohmann::json::object();
    for (const auto& [key, partitions] : arms_) {
        std::string name = (key.kind == static_cast<int>(NodeKind::Ground) ? "ground:" : "sat:") +
                           std::to_string(key.index);
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& tiles : partitions) {
            nlohmann::json tile_obj = nlohmann::json::object();
            for (const auto& [tile, stat] : tiles)
                tile_obj[std::to_string(tile)] = {{"mean_s", stat.mean_s},
                                                  {"count", stat.count}};
            parts.push_back(tile_obj);
        }
        neighbors[name] = parts;
    }
    j["neighbors"] = neighbors;
    return j;
}

BanditState BanditState::from_json(const nlohmann::json& j) {
    BanditState state;
    state.slot_counter = j.at("t").get<std::int64_t>();
    for (const auto& [name, parts] : j.at("neighbors").items()) {
        auto colon = name.find(':');
        NodeId neighbor;
        neighbor.kind = name.substr(0, colon) == "ground" ? NodeKind::Ground : NodeKind::Satellite;
        neighbor.index = std::stoi(name.substr(colon + 1));
        int g = 0;
        for (const auto& tiles : parts) {
            for (const auto& [tile_name, stat] : tiles.items()) {
                TileStat& s = state.stat(neighbor, g, std::stoi(tile_name));
                s.mean_s = stat.at("mean_s").get<double>();
                s.count = stat.at("count").get<std::int64_t>();
            }
            ++g;
        }
    }
    return state;
}

PreferenceList SkyLinkRouter::decide(const LocalObservation& obs, Rng& rng) {
    (void)rng;
    BanditState& state = states_[obs.node.index];
    state.slot_counter += 1;  // local slot counter, starts at 1
    return rank_links(state, obs, params_.tiles);
}

void SkyLinkRouter::feedback(const LocalObservation& obs, const PreferenceList& chosen,
                             double cost_s) {
    if (chosen.empty()) return;
    BanditState& state = states_[obs.node.index];
    double clamped = std::clamp(cost_s, 0.0, params_.t_max_s);
    std::size_t updates = params_.update_all_used_links ? chosen.size() : 1;
    for (std::size_t i = 0; i < updates; ++i) {
        for (const auto& link : obs.links) {
            if (link.edge_index != chosen[i]) continue;
            bandit_update(state, link.neighbor, clamped, link.distance_m, params_.tiles,
                          params_.t_max_s);
            break;
        }
    }
}

const BanditState& SkyLinkRouter::state_for(int sat) const {
    static const BanditState empty;
    auto it = states_.find(sat);
    return it == states_.end() ? empty : it->second;
}

nlohmann::json SkyLinkRouter::states_to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [sat, state] : states_) j[std::to_string(sat)] = state.to_json();
    return j;
}

void SkyLinkRouter::states_from_json(const nlohmann::json& j) {
    states_.clear();
    for (const auto& [sat, state] : j.items())
        states_[std::stoi(sat)] = BanditState::from_json(state);
}

}  // namespace leosim
