#include "leosim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace leosim {

MetricsRecord slot_metrics(const SlotOutcome& outcome) {
    MetricsRecord rec;
    double generated = 0.0, delivered = 0.0;
    for (double g : outcome.generated_bps) generated += g;
    double rate_delay = 0.0, rate_hops = 0.0;
    for (std::size_t s = 0; s < outcome.generated_bps.size(); ++s) {
        delivered += outcome.delivered_rate_bps[s];
        rate_delay += outcome.delivered_rate_delay[s];
        rate_hops += outcome.delivered_rate_hops[s];
    }
    rec.generated_bps = generated;
    rec.throughput_bps = delivered;
    rec.drop_rate = generated > 0.0 ? 1.0 - delivered / generated : 0.0;
    if (rec.drop_rate < 0.0) rec.drop_rate = 0.0;  // FP guard at full delivery
    rec.cost_s = network_cost_s(outcome);
    rec.avg_hops = delivered > 0.0 ? rate_hops / delivered : 0.0;
    rec.avg_delivered_delay_s = delivered > 0.0 ? rate_delay / delivered : 0.0;
    return rec;
}

SmoothedSeries running_mean(const std::vector<double>& series, int window_slots) {
    if (window_slots < 1) throw std::invalid_argument("running_mean: window must be >= 1");
    SmoothedSeries out;
    out.start = static_cast<std::size_t>(window_slots / 2);
    if (out.start >= series.size()) return out;
    double acc = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        acc += series[i];
        if (i >= static_cast<std::size_t>(window_slots)) acc -= series[i - window_slots];
        if (i >= out.start) {
            std::size_t span = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window_slots));
            out.values.push_back(acc / static_cast<double>(span));
        }
    }
    return out;
}

AggregateSeries aggregate_runs(const std::vector<std::vector<double>>& runs) {
    if (runs.empty()) throw std::invalid_argument("aggregate_runs: no runs");
    std::size_t len = runs.front().size();
    for (const auto& r : runs)
        if (r.size() != len) throw std::invalid_argument("aggregate_runs: length mismatch");
    AggregateSeries out;
    out.mean.assign(len, 0.0);
    out.stddev.assign(len, 0.0);
    double n = static_cast<double>(runs.size());
    for (std::size_t i = 0; i < len; ++i) {
        double sum = 0.0;
        for (const auto& r : runs) sum += r[i];
        double mean = sum / n;
        out.mean[i] = mean;
        if (runs.size() > 1) {
            double ss = 0.0;
            for (const auto& r : runs) ss += (r[i] - mean) * (r[i] - mean);
            out.stddev[i] = std::sqrt(ss / (n - 1.0));
        }
    }
    return out;
}

std::string metrics_csv(const std::vector<MetricsRecord>& records, const std::string& router,
                        std::uint64_t seed) {
    std::string out =
        "slot,utc_s,router,seed,cost_s,drop_rate,throughput_bps,generated_bps,avg_hops,"
        "avg_delay_s\n";
    char buf[320];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%s,%llu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      r.slot, r.utc_s, router.c_str(), static_cast<unsigned long long>(seed),
                      r.cost_s, r.drop_rate, r.throughput_bps, r.generated_bps, r.avg_hops,
                      r.avg_delivered_delay_s);
        out += buf;
    }
    return out;
}

void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records,
                       const std::string& router, std::uint64_t seed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write metrics csv: " + path);
    out << metrics_csv(records, router, seed);
}

}  // namespace leosim
