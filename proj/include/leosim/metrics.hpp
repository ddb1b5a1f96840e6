#pragma once

#include <string>
#include <vector>

#include "leosim/flow.hpp"

namespace leosim {

struct MetricsRecord {
    int slot = 0;
    double utc_s = 0.0;
    double cost_s = 0.0;
    double drop_rate = 0.0;
    double throughput_bps = 0.0;
    double generated_bps = 0.0;
    double avg_hops = 0.0;         // space-segment hops of delivered traffic
    double avg_delivered_delay_s = 0.0;
};

/// Derives one metrics record from a slot outcome. Zero generation yields
/// drop_rate 0 and throughput 0.
MetricsRecord slot_metrics(const SlotOutcome& outcome);

/// Trailing mean over min(window, elapsed) slots. Output is defined from
/// index floor(window/2) onwards (start), matching plots whose axis begins
/// half a window in.
struct SmoothedSeries {
    std::size_t start = 0;
    std::vector<double> values;  // values[i] smooths series index start + i
};

SmoothedSeries running_mean(const std::vector<double>& series, int window_slots);

/// Pointwise mean and sample standard deviation across equal-length runs.
struct AggregateSeries {
    std::vector<double> mean;
    std::vector<double> stddev;
};

AggregateSeries aggregate_runs(const std::vector<std::vector<double>>& runs);

/// `slot,utc_s,router,seed,cost_s,drop_rate,throughput_bps,generated_bps,
/// avg_hops,avg_delay_s` CSV.
std::string metrics_csv(const std::vector<MetricsRecord>& records, const std::string& router,
                        std::uint64_t seed);
void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records,
                       const std::string& router, std::uint64_t seed);

}  // namespace leosim
