#include "leosim/flow.hpp"

#include <algorithm>
#include <cmath>

namespace leosim {

Allocation water_fill(double r_in_bps, const std::vector<double>& caps_pref_order_bps,
                      double sigma) {
    Allocation alloc;
    alloc.rate_bps.assign(caps_pref_order_bps.size(), 0.0);
    double remaining = r_in_bps;
    for (std::size_t i = 0; i < caps_pref_order_bps.size(); ++i) {
        if (remaining <= 0.0) break;
        double usable = sigma * caps_pref_order_bps[i];
        double x = remaining < usable ? remaining : usable;
        alloc.rate_bps[i] = x;
        remaining -= x;
    }
    alloc.overflow_bps = remaining > 0.0 ? remaining : 0.0;
    alloc.total_bps = r_in_bps - alloc.overflow_bps;
    return alloc;
}

double queuing_delay_s(double q_max_bits, const Allocation& allocation, double r_in_bps,
                       double t_max_s) {
    double outgoing = allocation.total_bps;
    double delta_c = r_in_bps - outgoing;
    if (delta_c <= 0.0) return 0.0;
    if (outgoing <= 0.0) return t_max_s;  // total starvation
    return q_max_bits / outgoing;
}

const char* drop_reason_name(DropReason reason) {
    switch (reason) {
        case DropReason::Capacity: return "capacity";
        case DropReason::Loop: return "loop";
        case DropReason::DeadEnd: return "dead_end";
        case DropReason::Ttl: return "ttl";
        case DropReason::HopCap: return "hop_cap";
    }
    return "unknown";
}

namespace {

struct Bundle {
    int origin_sat;
    double rate_bps;
    double delay_s;
    std::vector<int> path_nodes;  // visited nodes, origin first
};

}  // namespace

SlotOutcome propagate_slot(const TimeSlotGraph& graph,
                           const std::vector<PreferenceList>& decisions,
                           const std::vector<double>& generated_bps, const TtlConfig& ttl,
                           const BufferSpec& buffers, double sigma) {
    int num_sats = graph.num_sats();
    SlotOutcome out;
    out.t_max_s = ttl.t_max_s;
    out.generated_bps = generated_bps;
    out.generated_bps.resize(static_cast<std::size_t>(num_sats), 0.0);
    out.delivered_rate_bps.assign(static_cast<std::size_t>(num_sats), 0.0);
    out.delivered_rate_delay.assign(static_cast<std::size_t>(num_sats), 0.0);
    out.delivered_rate_hops.assign(static_cast<std::size_t>(num_sats), 0.0);
    out.dropped_rate_bps.assign(static_cast<std::size_t>(num_sats), 0.0);
    out.edge_load_bps.assign(graph.edges().size(), 0.0);

    auto drop = [&](const Bundle& b, double rate, DropReason reason) {
        if (rate <= 0.0) return;
        out.dropped.push_back({b.origin_sat, rate, reason});
        out.dropped_rate_bps[static_cast<std::size_t>(b.origin_sat)] += rate;
    };
    auto deliver = [&](const Bundle& b) {
        int hops = static_cast<int>(b.path_nodes.size()) - 1;
        out.delivered.push_back({b.origin_sat, b.rate_bps, b.delay_s, hops});
        auto o = static_cast<std::size_t>(b.origin_sat);
        out.delivered_rate_bps[o] += b.rate_bps;
        out.delivered_rate_delay[o] += b.rate_bps * b.delay_s;
        out.delivered_rate_hops[o] += b.rate_bps * (hops - 1);
    };

    // Per-slot budget each edge can still carry, shared across waves.
    std::vector<double> edge_budget(graph.edges().size());
    for (std::size_t e = 0; e < graph.edges().size(); ++e)
        edge_budget[e] = sigma * graph.edges()[e].capacity_bps;

    std::vector<Bundle> in_flight;
    for (int sat = 0; sat < num_sats; ++sat) {
        double rate = out.generated_bps[static_cast<std::size_t>(sat)];
        if (rate > 0.0) in_flight.push_back({sat, rate, 0.0, {sat}});
    }

    int wave = 0;
    while (!in_flight.empty() && wave <= ttl.hop_cap + 1) {
        ++wave;
        // Group bundles by node, preserving arrival order within a node.
        std::vector<std::vector<std::size_t>> at_node(
            static_cast<std::size_t>(graph.node_count()));
        for (std::size_t i = 0; i < in_flight.size(); ++i)
            at_node[static_cast<std::size_t>(in_flight[i].path_nodes.back())].push_back(i);

        std::vector<Bundle> next;
        for (int node = 0; node < graph.node_count(); ++node) {
            auto& bundle_ids = at_node[static_cast<std::size_t>(node)];
            if (bundle_ids.empty()) continue;

            const PreferenceList& prefs = decisions[static_cast<std::size_t>(node)];
            double r_in = 0.0;
            for (std::size_t i : bundle_ids) r_in += in_flight[i].rate_bps;

            if (prefs.empty()) {
                for (std::size_t i : bundle_ids)
                    drop(in_flight[i], in_flight[i].rate_bps, DropReason::DeadEnd);
                continue;
            }

            // Budgets already carry the sigma factor, so the fill itself
            // runs with sigma = 1.
            std::vector<double> caps(prefs.size());
            for (std::size_t j = 0; j < prefs.size(); ++j)
                caps[j] = edge_budget[static_cast<std::size_t>(prefs[j])];
            Allocation alloc = water_fill(r_in, caps, 1.0);
            for (std::size_t j = 0; j < prefs.size(); ++j) {
                edge_budget[static_cast<std::size_t>(prefs[j])] -= alloc.rate_bps[j];
                out.edge_load_bps[static_cast<std::size_t>(prefs[j])] += alloc.rate_bps[j];
            }

            bool is_ground = node >= num_sats && node < num_sats + graph.num_ground();
            double q_max = is_ground ? buffers.ground_buffer_bits : buffers.satellite_buffer_bits;
            double d_queue = queuing_delay_s(q_max, alloc, r_in, ttl.t_max_s);

            double overflow_frac = alloc.overflow_bps > 0.0 ? alloc.overflow_bps / r_in : 0.0;
            for (std::size_t i : bundle_ids) {
                Bundle& b = in_flight[i];
                double lost = b.rate_bps * overflow_frac;
                drop(b, lost, DropReason::Capacity);
                double forward = b.rate_bps - lost;
                if (forward <= 0.0) continue;
                for (std::size_t j = 0; j < prefs.size(); ++j) {
                    if (alloc.rate_bps[j] <= 0.0) continue;
                    const Edge& edge = graph.edges()[static_cast<std::size_t>(prefs[j])];
                    Bundle child;
                    child.origin_sat = b.origin_sat;
                    child.rate_bps = forward * (alloc.rate_bps[j] / alloc.total_bps);
                    if (child.rate_bps <= 0.0) continue;
                    child.delay_s = b.delay_s + d_queue + edge.prop_delay_s;
                    child.path_nodes = b.path_nodes;

                    if (child.delay_s >= ttl.t_max_s) {
                        drop(child, child.rate_bps, DropReason::Ttl);
                        continue;
                    }
                    if (edge.dst == graph.internet_node()) {
                        child.path_nodes.push_back(edge.dst);
                        deliver(child);
                        continue;
                    }
                    if (std::find(child.path_nodes.begin(), child.path_nodes.end(), edge.dst) !=
                        child.path_nodes.end()) {
                        drop(child, child.rate_bps, DropReason::Loop);
                        continue;
                    }
                    if (static_cast<int>(child.path_nodes.size()) > ttl.hop_cap) {
                        drop(child, child.rate_bps, DropReason::HopCap);
                        continue;
                    }
                    child.path_nodes.push_back(edge.dst);
                    next.push_back(std::move(child));
                }
            }
        }
        in_flight = std::move(next);
    }
    // The hop_cap check above empties the in-flight set before this loop
    // guard can trigger; the guard only protects against malformed graphs.
    for (const Bundle& b : in_flight) drop(b, b.rate_bps, DropReason::HopCap);
    return out;
}

double per_sat_cost_s(const SlotOutcome& outcome, int sat) {
    auto s = static_cast<std::size_t>(sat);
    double generated = outcome.generated_bps[s];
    if (generated <= 0.0) return 0.0;
    double weighted = outcome.delivered_rate_delay[s] +
                      outcome.dropped_rate_bps[s] * outcome.t_max_s;
    return weighted / generated;
}

double network_cost_s(const SlotOutcome& outcome) {
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < outcome.generated_bps.size(); ++s) {
        double g = outcome.generated_bps[s];
        if (g <= 0.0) continue;
        num += g * per_sat_cost_s(outcome, static_cast<int>(s));
        den += g;
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace leosim
