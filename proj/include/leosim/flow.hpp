#pragma once

#include <vector>

#include "leosim/routers.hpp"
#include "leosim/traffic.hpp"

namespace leosim {

struct TtlConfig {
    double t_max_s = 0.2;
    int hop_cap = 32;
};

/// Water-filling allocation over caps listed in preference order. Links are
/// filled at sigma * cap until the incoming rate is exhausted; the marginal
/// link gets the remainder and later links zero. overflow_bps is whatever
/// exceeded the total usable capacity.
struct Allocation {
    std::vector<double> rate_bps;  // aligned with the caps/preference order
    double total_bps = 0.0;
    double overflow_bps = 0.0;
};

Allocation water_fill(double r_in_bps, const std::vector<double>& caps_pref_order_bps,
                      double sigma);

/// FIFO queuing delay: 0 while the outgoing allocation covers the incoming
/// rate, buffer size over allocated outgoing rate once it does not, and
/// t_max under total starvation (nothing allocated).
double queuing_delay_s(double q_max_bits, const Allocation& allocation, double r_in_bps,
                       double t_max_s);

enum class DropReason { Capacity, Loop, DeadEnd, Ttl, HopCap };

const char* drop_reason_name(DropReason reason);

struct DeliveredRecord {
    int origin_sat = 0;
    double rate_bps = 0.0;
    double delay_s = 0.0;
    int hops = 0;  // links traversed, terminal fiber edge included
};

struct DroppedRecord {
    int origin_sat = 0;
    double rate_bps = 0.0;
    DropReason reason = DropReason::Capacity;
};

/// Ledger of one slot's stream propagation; everything the metrics derive
/// from. Rates are conserved per origin: delivered + dropped = generated.
struct SlotOutcome {
    std::vector<DeliveredRecord> delivered;
    std::vector<DroppedRecord> dropped;
    std::vector<double> generated_bps;       // per satellite (R^g)
    std::vector<double> delivered_rate_bps;  // per satellite (R^s)
    std::vector<double> delivered_rate_delay;  // per satellite, sum rate*delay
    std::vector<double> delivered_rate_hops;   // per satellite, sum rate*(hops-1)
    std::vector<double> dropped_rate_bps;    // per satellite
    std::vector<double> edge_load_bps;       // per edge, summed over waves
    double t_max_s = 0.2;
};

/// Synchronous wave propagation of the per-slot streams. Every satellite
/// seeds one bundle with its generated rate; each wave groups the bundles at
/// a node, water-fills the aggregate against the node's remaining per-edge
/// budget (sigma * capacity minus what earlier waves already used this
/// slot), removes overflow as a uniform fraction of every incoming bundle,
/// and forwards the rest pro rata with propagation plus queuing delay added.
/// Bundles terminate as delivered at the internet node or dropped with a
/// reason (capacity, loop, dead_end, ttl at exactly t_max, hop_cap).
SlotOutcome propagate_slot(const TimeSlotGraph& graph,
                           const std::vector<PreferenceList>& decisions,
                           const std::vector<double>& generated_bps, const TtlConfig& ttl,
                           const BufferSpec& buffers, double sigma);

/// Rate-weighted mean path delay of satellite v's origin traffic; dropped
/// shares count t_max. Zero-traffic satellites return 0.
double per_sat_cost_s(const SlotOutcome& outcome, int sat);

/// Generation-rate-weighted mean of per-satellite costs; 0 when nothing was
/// generated.
double network_cost_s(const SlotOutcome& outcome);

}  // namespace leosim
