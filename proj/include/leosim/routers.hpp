#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leosim/rng.hpp"
#include "leosim/topology.hpp"

namespace leosim {

/// Ranked outgoing-edge preference for one node; indices into the slot
/// graph's edge list, most-preferred first. May be empty (traffic at the
/// node is then dropped as dead-end).
using PreferenceList = std::vector<int>;

/// What a node is allowed to see when deciding: its own outgoing links and
/// its own incoming rate. No global network state.
struct OutLink {
    int edge_index = -1;
    NodeId neighbor;
    LinkKind kind = LinkKind::Isl;
    double distance_m = 0.0;
    double capacity_bps = 0.0;
};

struct LocalObservation {
    NodeId node;
    int slot = 0;
    std::vector<OutLink> links;
    double incoming_rate_bps = 0.0;
};

LocalObservation observe(const TimeSlotGraph& graph, int dense_node, double incoming_rate_bps);

enum class RouterKind { SkyLink, NcSkyLink, Dijkstra, KShortest, BentPipe, Random };

std::string router_kind_name(RouterKind kind);
std::optional<RouterKind> parse_router_kind(const std::string& name);

/// Per-node link-ranking policy. Baselines that need a global view compute
/// it in begin_slot; decide/feedback then work from local observations only.
/// decide is called per node in ascending dense-node order, which fixes the
/// rng consumption order and makes runs reproducible.
class Router {
public:
    virtual ~Router() = default;
    virtual void begin_slot(const TimeSlotGraph& graph, const std::vector<double>& weights_s,
                            int slot) {
        (void)graph;
        (void)weights_s;
        (void)slot;
    }
    virtual PreferenceList decide(const LocalObservation& obs, Rng& rng) = 0;
    virtual void feedback(const LocalObservation& obs, const PreferenceList& chosen,
                          double cost_s) {
        (void)obs;
        (void)chosen;
        (void)cost_s;
    }
};

/// GSL edges only, uniformly shuffled; no relaying.
PreferenceList bent_pipe_decide(const LocalObservation& obs, Rng& rng);

/// All outgoing edges, uniformly shuffled.
PreferenceList random_decide(const LocalObservation& obs, Rng& rng);

/// First edge of a minimal-delay path to the internet node for every node
/// that can reach it; -1 where unreachable. weights_s is indexed by edge.
std::vector<int> dijkstra_next_hop(const TimeSlotGraph& graph,
                                   const std::vector<double>& weights_s);

struct WeightedPath {
    std::vector<int> edges;  // edge indices from src to internet
    double total_s = 0.0;
};

/// Yen's k shortest loop-free paths from src to the internet node, in
/// nondecreasing total weight.
std::vector<WeightedPath> yen_k_shortest(const TimeSlotGraph& graph, int src, int k,
                                         const std::vector<double>& weights_s);

/// Edge weights for shortest-path baselines: propagation delay for ISL/GSL
/// edges and the per-station fiber base delay for fiber edges.
std::vector<double> routing_weights(const TimeSlotGraph& graph,
                                    const std::vector<double>& fiber_base_delay_s);

struct SkyLinkParams;  // skylink.hpp

/// Factory covering every RouterKind.
std::unique_ptr<Router> make_router(RouterKind kind, int k_paths,
                                    const SkyLinkParams& skylink_params);

}  // namespace leosim
