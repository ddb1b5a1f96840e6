#include "leosim/routers.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "leosim/skylink.hpp"

namespace leosim {

LocalObservation observe(const TimeSlotGraph& graph, int dense_node, double incoming_rate_bps) {
    LocalObservation obs;
    obs.node = graph.node_id(dense_node);
    obs.slot = graph.slot();
    obs.incoming_rate_bps = incoming_rate_bps;
    for (int e : graph.out_edges(dense_node)) {
        const Edge& edge = graph.edges()[static_cast<std::size_t>(e)];
        obs.links.push_back(
            {e, graph.node_id(edge.dst), edge.kind, edge.distance_m, edge.capacity_bps});
    }
    return obs;
}

std::string router_kind_name(RouterKind kind) {
    switch (kind) {
        case RouterKind::SkyLink: return "skylink";
        case RouterKind::NcSkyLink: return "nc-skylink";
        case RouterKind::Dijkstra: return "dijkstra";
        case RouterKind::KShortest: return "ksp";
        case RouterKind::BentPipe: return "bentpipe";
        case RouterKind::Random: return "random";
    }
    return "unknown";
}

std::optional<RouterKind> parse_router_kind(const std::string& name) {
    if (name == "skylink") return RouterKind::SkyLink;
    if (name == "nc-skylink") return RouterKind::NcSkyLink;
    if (name == "dijkstra") return RouterKind::Dijkstra;
    if (name == "ksp") return RouterKind::KShortest;
    if (name == "bentpipe") return RouterKind::BentPipe;
    if (name == "random") return RouterKind::Random;
    return std::nullopt;
}

PreferenceList bent_pipe_decide(const LocalObservation& obs, Rng& rng) {
    PreferenceList prefs;
    for (const auto& link : obs.links)
        if (link.kind == LinkKind::Gsl) prefs.push_back(link.edge_index);
    rng.shuffle(prefs);
    return prefs;
}

PreferenceList random_decide(const LocalObservation& obs, Rng& rng) {
    PreferenceList prefs;
    for (const auto& link : obs.links) prefs.push_back(link.edge_index);
    rng.shuffle(prefs);
    return prefs;
}

std::vector<double> routing_weights(const TimeSlotGraph& graph,
                                    const std::vector<double>& fiber_base_delay_s) {
    std::vector<double> weights;
    weights.reserve(graph.edges().size());
    for (const Edge& e : graph.edges()) {
        if (e.kind == LinkKind::Fiber) {
            int station = e.src - graph.num_sats();
            weights.push_back(fiber_base_delay_s.empty()
                                  ? e.prop_delay_s
                                  : fiber_base_delay_s[static_cast<std::size_t>(station)]);
        } else {
            weights.push_back(e.prop_delay_s);
        }
    }
    return weights;
}

namespace {

// Dijkstra over the reversed graph from the internet node; dist[v] is then
// the minimal weight of a v -> internet path.
std::vector<double> distances_to_internet(const TimeSlotGraph& graph,
                                          const std::vector<double>& weights_s,
                                          const std::vector<bool>& node_blocked,
                                          const std::vector<bool>& edge_blocked) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::pair<int, int>>> in_edges(
        static_cast<std::size_t>(graph.node_count()));  // dst -> (src, edge)
    for (std::size_t e = 0; e < graph.edges().size(); ++e) {
        if (!edge_blocked.empty() && edge_blocked[e]) continue;
        const Edge& edge = graph.edges()[e];
        in_edges[static_cast<std::size_t>(edge.dst)].push_back({edge.src, static_cast<int>(e)});
    }
    std::vector<double> dist(static_cast<std::size_t>(graph.node_count()), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    int target = graph.internet_node();
    if (!node_blocked.empty() && node_blocked[static_cast<std::size_t>(target)]) return dist;
    dist[static_cast<std::size_t>(target)] = 0.0;
    heap.push({0.0, target});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;
        for (auto [src, e] : in_edges[static_cast<std::size_t>(v)]) {
            if (!node_blocked.empty() && node_blocked[static_cast<std::size_t>(src)]) continue;
            double nd = d + weights_s[static_cast<std::size_t>(e)];
            if (nd < dist[static_cast<std::size_t>(src)]) {
                dist[static_cast<std::size_t>(src)] = nd;
                heap.push({nd, src});
            }
        }
    }
    return dist;
}

// Forward Dijkstra path src -> internet honoring blocked nodes/edges.
// Returns edge sequence, empty if unreachable.
std::vector<int> shortest_path_edges(const TimeSlotGraph& graph,
                                     const std::vector<double>& weights_s, int src,
                                     const std::vector<bool>& node_blocked,
                                     const std::vector<bool>& edge_blocked, double* total_out) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    int n = graph.node_count();
    std::vector<double> dist(static_cast<std::size_t>(n), kInf);
    std::vector<int> via_edge(static_cast<std::size_t>(n), -1);
    if (!node_blocked.empty() && node_blocked[static_cast<std::size_t>(src)]) return {};
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(src)] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(v)]) continue;
        for (int e : graph.out_edges(v)) {
            if (!edge_blocked.empty() && edge_blocked[static_cast<std::size_t>(e)]) continue;
            const Edge& edge = graph.edges()[static_cast<std::size_t>(e)];
            if (!node_blocked.empty() && node_blocked[static_cast<std::size_t>(edge.dst)])
                continue;
            double nd = d + weights_s[static_cast<std::size_t>(e)];
            if (nd < dist[static_cast<std::size_t>(edge.dst)]) {
                dist[static_cast<std::size_t>(edge.dst)] = nd;
                via_edge[static_cast<std::size_t>(edge.dst)] = e;
                heap.push({nd, edge.dst});
            }
        }
    }
    int target = graph.internet_node();
    if (dist[static_cast<std::size_t>(target)] == kInf) return {};
    std::vector<int> path;
    for (int v = target; v != src;) {
        int e = via_edge[static_cast<std::size_t>(v)];
        path.push_back(e);
        v = graph.edges()[static_cast<std::size_t>(e)].src;
    }
    std::reverse(path.begin(), path.end());
    if (total_out != nullptr) *total_out = dist[static_cast<std::size_t>(target)];
    return path;
}

}  // namespace

std::vector<int> dijkstra_next_hop(const TimeSlotGraph& graph,
                                   const std::vector<double>& weights_s) {
    auto dist = distances_to_internet(graph, weights_s, {}, {});
    std::vector<int> next(static_cast<std::size_t>(graph.node_count()), -1);
    for (int v = 0; v < graph.node_count(); ++v) {
        if (v == graph.internet_node()) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int e : graph.out_edges(v)) {
            const Edge& edge = graph.edges()[static_cast<std::size_t>(e)];
            double through = weights_s[static_cast<std::size_t>(e)] +
                             dist[static_cast<std::size_t>(edge.dst)];
            if (through < best) {
                best = through;
                next[static_cast<std::size_t>(v)] = e;
            }
        }
        if (best == std::numeric_limits<double>::infinity())
            next[static_cast<std::size_t>(v)] = -1;
    }
    return next;
}

std::vector<WeightedPath> yen_k_shortest(const TimeSlotGraph& graph, int src, int k,
                                         const std::vector<double>& weights_s) {
    if (k < 1) throw std::invalid_argument("yen_k_shortest: k must be >= 1");
    std::vector<WeightedPath> result;
    double total = 0.0;
    auto first = shortest_path_edges(graph, weights_s, src, {}, {}, &total);
    if (first.empty()) return result;
    result.push_back({first, total});

    struct Candidate {
        double total;
        std::vector<int> edges;
        bool operator<(const Candidate& o) const {
            return total != o.total ? total < o.total : edges < o.edges;
        }
    };
    std::set<Candidate> candidates;

    auto path_nodes = [&](const std::vector<int>& edges) {
        std::vector<int> nodes{src};
        for (int e : edges) nodes.push_back(graph.edges()[static_cast<std::size_t>(e)].dst);
        return nodes;
    };

    while (static_cast<int>(result.size()) < k) {
        const auto& prev = result.back().edges;
        auto prev_nodes = path_nodes(prev);
        // Spur from every node of the previous path except the terminal.
        for (std::size_t i = 0; i + 1 < prev_nodes.size(); ++i) {
            int spur_node = prev_nodes[i];
            std::vector<int> root(prev.begin(), prev.begin() + static_cast<long>(i));
            double root_total = 0.0;
            for (int e : root) root_total += weights_s[static_cast<std::size_t>(e)];

            std::vector<bool> edge_blocked(graph.edges().size(), false);
            for (const auto& found : result) {
                if (found.edges.size() <= i) continue;
                bool same_root = std::equal(root.begin(), root.end(), found.edges.begin());
                if (same_root) edge_blocked[static_cast<std::size_t>(found.edges[i])] = true;
            }
            std::vector<bool> node_blocked(static_cast<std::size_t>(graph.node_count()), false);
            for (std::size_t j = 0; j < i; ++j)
                node_blocked[static_cast<std::size_t>(prev_nodes[j])] = true;

            double spur_total = 0.0;
            auto spur = shortest_path_edges(graph, weights_s, spur_node, node_blocked,
                                            edge_blocked, &spur_total);
            if (spur.empty()) continue;
            Candidate cand;
            cand.edges = root;
            cand.edges.insert(cand.edges.end(), spur.begin(), spur.end());
            cand.total = root_total + spur_total;
            bool known = false;
            for (const auto& found : result)
                if (found.edges == cand.edges) known = true;
            if (!known) candidates.insert(cand);
        }
        if (candidates.empty()) break;
        auto best = *candidates.begin();
        candidates.erase(candidates.begin());
        result.push_back({best.edges, best.total});
    }
    return result;
}

namespace {

class BentPipeRouter : public Router {
public:
    PreferenceList decide(const LocalObservation& obs, Rng& rng) override {
        return bent_pipe_decide(obs, rng);
    }
};

class RandomRouter : public Router {
public:
    PreferenceList decide(const LocalObservation& obs, Rng& rng) override {
        return random_decide(obs, rng);
    }
};

class DijkstraRouter : public Router {
public:
    void begin_slot(const TimeSlotGraph& graph, const std::vector<double>& weights_s,
                    int slot) override {
        (void)slot;
        next_hop_ = dijkstra_next_hop(graph, weights_s);
        num_sats_ = graph.num_sats();
    }
    PreferenceList decide(const LocalObservation& obs, Rng& rng) override {
        (void)rng;
        int dense = obs.node.kind == NodeKind::Satellite ? obs.node.index
                                                         : num_sats_ + obs.node.index;
        int e = next_hop_[static_cast<std::size_t>(dense)];
        return e < 0 ? PreferenceList{} : PreferenceList{e};
    }

private:
    std::vector<int> next_hop_;
    int num_sats_ = 0;
};

class KShortestRouter : public Router {
public:
    explicit KShortestRouter(int k) : k_(k) {}

    void begin_slot(const TimeSlotGraph& graph, const std::vector<double>& weights_s,
                    int slot) override {
        (void)slot;
        graph_ = &graph;
        weights_ = &weights_s;
    }
    PreferenceList decide(const LocalObservation& obs, Rng& rng) override {
        (void)rng;
        int dense = obs.node.kind == NodeKind::Satellite ? obs.node.index
                                                         : graph_->num_sats() + obs.node.index;
        auto paths = yen_k_shortest(*graph_, dense, k_, *weights_);
        // Distinct first hops in path order; the shared water-filling engine
        // then spreads traffic across them.
        PreferenceList prefs;
        for (const auto& p : paths) {
            int first = p.edges.front();
            if (std::find(prefs.begin(), prefs.end(), first) == prefs.end())
                prefs.push_back(first);
        }
        return prefs;
    }

private:
    int k_;
    const TimeSlotGraph* graph_ = nullptr;
    const std::vector<double>* weights_ = nullptr;
};

}  // namespace

std::unique_ptr<Router> make_router(RouterKind kind, int k_paths,
                                    const SkyLinkParams& skylink_params) {
    switch (kind) {
        case RouterKind::SkyLink:
            return std::make_unique<SkyLinkRouter>(skylink_params);
        case RouterKind::NcSkyLink: {
            SkyLinkParams nc = skylink_params;
            nc.tiles = TileCodingConfig::non_contextual(skylink_params.tiles.max_distance_m);
            return std::make_unique<SkyLinkRouter>(nc);
        }
        case RouterKind::Dijkstra: return std::make_unique<DijkstraRouter>();
        case RouterKind::KShortest: return std::make_unique<KShortestRouter>(k_paths);
        case RouterKind::BentPipe: return std::make_unique<BentPipeRouter>();
        case RouterKind::Random: return std::make_unique<RandomRouter>();
    }
    throw std::invalid_argument("unknown router kind");
}

}  // namespace leosim
