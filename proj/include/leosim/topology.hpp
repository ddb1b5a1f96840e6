#pragma once

#include <string>
#include <vector>

#include "leosim/channel.hpp"
#include "leosim/geo.hpp"

namespace leosim {

enum class NodeKind { Satellite, Ground, Internet };

/// Tagged node identifier. Dense node numbering inside a TimeSlotGraph is
/// satellites first, then ground stations, then the single internet node.
struct NodeId {
    NodeKind kind = NodeKind::Internet;
    int index = 0;

    friend bool operator==(const NodeId&, const NodeId&) = default;
};

enum class LinkKind { Isl, Gsl, Fiber };

struct Edge {
    int src = 0;                // dense node id
    int dst = 0;                // dense node id
    LinkKind kind = LinkKind::Isl;
    double capacity_bps = 0.0;
    double prop_delay_s = 0.0;
    double distance_m = 0.0;    // 0 for fiber
};

struct GroundStation {
    std::string name;
    GeodeticCoord location;
    int num_antennas = 2;           // mu_i
    double fiber_capacity_bps = 0.0;
};

/// Plane-major satellite numbering: id = plane * sats_per_plane + slot.
struct PlaneLayout {
    int num_planes = 1;
    int sats_per_plane = 1;

    int num_sats() const { return num_planes * sats_per_plane; }
    int plane_of(int sat) const { return sat / sats_per_plane; }
    int slot_in_plane(int sat) const { return sat % sats_per_plane; }
    int sat_index(int plane, int slot) const { return plane * sats_per_plane + slot; }
};

class TimeSlotGraph {
public:
    TimeSlotGraph(int slot, int num_sats, int num_ground)
        : slot_(slot), num_sats_(num_sats), num_ground_(num_ground),
          out_edges_(static_cast<std::size_t>(num_sats + num_ground + 1)) {}

    int slot() const { return slot_; }
    int num_sats() const { return num_sats_; }
    int num_ground() const { return num_ground_; }
    int node_count() const { return num_sats_ + num_ground_ + 1; }

    int sat_node(int i) const { return i; }
    int ground_node(int j) const { return num_sats_ + j; }
    int internet_node() const { return num_sats_ + num_ground_; }

    NodeId node_id(int dense) const {
        if (dense < num_sats_) return {NodeKind::Satellite, dense};
        if (dense < num_sats_ + num_ground_) return {NodeKind::Ground, dense - num_sats_};
        return {NodeKind::Internet, 0};
    }

    int add_edge(const Edge& e) {
        edges_.push_back(e);
        int idx = static_cast<int>(edges_.size()) - 1;
        out_edges_[static_cast<std::size_t>(e.src)].push_back(idx);
        return idx;
    }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& out_edges(int node) const {
        return out_edges_[static_cast<std::size_t>(node)];
    }

private:
    int slot_;
    int num_sats_;
    int num_ground_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_edges_;
};

/// +grid ISL neighbor selection. Intra-plane neighbors are the previous and
/// next present satellite slots (no re-linking around gaps); the cross-plane
/// neighbor in each adjacent plane is the mutually nearest present satellite.
/// When cross_seam is false the (last plane, first plane) crossing carries no
/// links. `present[i] == false` removes satellite i entirely.
std::vector<std::vector<int>> build_isl_neighbors(const std::vector<EcefPosition>& positions,
                                                  const PlaneLayout& layout,
                                                  const std::vector<bool>& present,
                                                  bool cross_seam);

/// GSL edges (satellite -> ground), at most mu_i per station, preferring the
/// nearest satellites at or above min elevation. Satellites flagged in
/// failure_mask are excluded.
std::vector<Edge> build_gsl_edges(const std::vector<GroundStation>& stations,
                                  const std::vector<EcefPosition>& station_ecef,
                                  const std::vector<EcefPosition>& sat_positions,
                                  const std::vector<bool>& present,
                                  const std::vector<bool>& failure_mask,
                                  double min_elevation_deg, int num_sats,
                                  const ChannelParams& params);

struct TopologyOptions {
    double min_elevation_deg = 25.0;
    bool cross_seam_isls = false;
};

/// Assembles the full per-slot graph: both directions of every ISL pair,
/// GSL edges, and one fiber edge per ground station. fiber_delay_s[j] is the
/// slot value for station j.
TimeSlotGraph build_slot_graph(int slot, const std::vector<EcefPosition>& sat_positions,
                               const PlaneLayout& layout, const std::vector<bool>& present,
                               const std::vector<bool>& failure_mask,
                               const std::vector<GroundStation>& stations,
                               const std::vector<EcefPosition>& station_ecef,
                               const std::vector<double>& fiber_delay_s,
                               const ChannelParams& params, const TopologyOptions& options);

/// Parses `name,lat_deg,lon_deg,num_antennas,fiber_capacity_bps` CSV.
std::vector<GroundStation> load_station_catalog(const std::string& path);

}  // namespace leosim
