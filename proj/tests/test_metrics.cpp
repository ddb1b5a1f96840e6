#include <algorithm>

#include "doctest.h"
#include "leosim/metrics.hpp"

using namespace leosim;

namespace {

SlotOutcome outcome_for(std::vector<double> generated, std::vector<double> delivered,
                        std::vector<double> rate_delay, std::vector<double> rate_hops) {
    SlotOutcome out;
    out.t_max_s = 0.2;
    out.generated_bps = std::move(generated);
    out.delivered_rate_bps = std::move(delivered);
    out.delivered_rate_delay = std::move(rate_delay);
    out.delivered_rate_hops = std::move(rate_hops);
    out.dropped_rate_bps.assign(out.generated_bps.size(), 0.0);
    for (std::size_t i = 0; i < out.generated_bps.size(); ++i)
        out.dropped_rate_bps[i] = out.generated_bps[i] - out.delivered_rate_bps[i];
    return out;
}

}  // namespace

TEST_CASE("slot metrics on full delivery and full drop") {
    auto full = outcome_for({1e9, 2e9}, {1e9, 2e9}, {1e9 * 0.01, 2e9 * 0.02},
                            {1e9 * 1.0, 2e9 * 2.0});
    auto rec = slot_metrics(full);
    CHECK(rec.drop_rate == 0.0);
    CHECK(rec.throughput_bps == doctest::Approx(3e9));
    CHECK(rec.generated_bps == doctest::Approx(3e9));
    CHECK(rec.avg_delivered_delay_s == doctest::Approx((0.01 + 2 * 0.02) / 3.0));

    auto nothing = outcome_for({1e9}, {0.0}, {0.0}, {0.0});
    rec = slot_metrics(nothing);
    CHECK(rec.drop_rate == doctest::Approx(1.0));
    CHECK(rec.throughput_bps == 0.0);
    CHECK(rec.cost_s == doctest::Approx(0.2));
}

TEST_CASE("bent-pipe-shaped outcomes report exactly one hop") {
    // Every delivered bundle crossed gsl + fiber: two links, one space hop.
    SlotOutcome out;
    out.t_max_s = 0.2;
    out.generated_bps = {1e9, 5e8};
    out.delivered_rate_bps = {1e9, 5e8};
    out.delivered_rate_delay = {1e9 * 0.008, 5e8 * 0.009};
    out.delivered_rate_hops = {1e9 * (2 - 1.0), 5e8 * (2 - 1.0)};
    out.dropped_rate_bps = {0.0, 0.0};
    out.delivered.push_back({0, 1e9, 0.008, 2});
    out.delivered.push_back({1, 5e8, 0.009, 2});
    CHECK(slot_metrics(out).avg_hops == doctest::Approx(1.0));
}

TEST_CASE("zero generation is all zeros by convention") {
    SlotOutcome idle;
    idle.t_max_s = 0.2;
    idle.generated_bps = {0.0};
    idle.delivered_rate_bps = {0.0};
    idle.delivered_rate_delay = {0.0};
    idle.delivered_rate_hops = {0.0};
    idle.dropped_rate_bps = {0.0};
    auto rec = slot_metrics(idle);
    CHECK(rec.drop_rate == 0.0);
    CHECK(rec.throughput_bps == 0.0);
    CHECK(rec.cost_s == 0.0);
}

TEST_CASE("running mean") {
    SUBCASE("window one is the identity") {
        std::vector<double> series{3.0, 1.0, 4.0, 1.0, 5.0};
        auto out = running_mean(series, 1);
        CHECK(out.start == 0);
        CHECK(out.values == series);
    }

    SUBCASE("constant series stays constant") {
        std::vector<double> series(50, 2.5);
        auto out = running_mean(series, 8);
        for (double v : out.values) CHECK(v == doctest::Approx(2.5));
    }

    SUBCASE("trailing window arithmetic") {
        std::vector<double> series{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        auto out = running_mean(series, 5);
        CHECK(out.start == 2);
        // at index 9: mean(6..10) = 8
        CHECK(out.values.back() == doctest::Approx(8.0));
        // at index 2: only 3 values have elapsed
        CHECK(out.values.front() == doctest::Approx(2.0));
    }

    SUBCASE("stays within the series bounds") {
        std::vector<double> series;
        for (int i = 0; i < 200; ++i) series.push_back(std::sin(i * 0.37) * 3.0 + 1.0);
        double lo = *std::min_element(series.begin(), series.end());
        double hi = *std::max_element(series.begin(), series.end());
        auto out = running_mean(series, 16);
        for (double v : out.values) {
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }

    CHECK_THROWS_AS(running_mean({1.0}, 0), std::invalid_argument);
}

TEST_CASE("aggregate runs") {
    SUBCASE("single run: mean is the input, deviation zero") {
        std::vector<std::vector<double>> runs{{1.0, 2.0, 3.0}};
        auto agg = aggregate_runs(runs);
        CHECK(agg.mean == runs[0]);
        CHECK(agg.stddev == std::vector<double>{0.0, 0.0, 0.0});
    }

    SUBCASE("two runs give the sample deviation") {
        std::vector<std::vector<double>> runs{{1.0}, {3.0}};
        auto agg = aggregate_runs(runs);
        CHECK(agg.mean[0] == doctest::Approx(2.0));
        CHECK(agg.stddev[0] == doctest::Approx(std::sqrt(2.0)));
    }

    SUBCASE("order of runs does not matter") {
        std::vector<std::vector<double>> runs{{1.0, 5.0}, {2.0, 6.0}, {4.0, 2.0}};
        auto agg1 = aggregate_runs(runs);
        std::swap(runs[0], runs[2]);
        auto agg2 = aggregate_runs(runs);
        for (std::size_t i = 0; i < 2; ++i) {
            CHECK(agg1.mean[i] == doctest::Approx(agg2.mean[i]));
            CHECK(agg1.stddev[i] == doctest::Approx(agg2.stddev[i]));
        }
    }

    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(aggregate_runs({{1.0, 2.0}, {1.0}}), std::invalid_argument);
    }
}

TEST_CASE("metrics csv carries the documented header and rows") {
    MetricsRecord rec;
    rec.slot = 3;
    rec.utc_s = 45.0;
    rec.cost_s = 0.01;
    rec.drop_rate = 0.25;
    rec.throughput_bps = 7.5e8;
    rec.generated_bps = 1e9;
    rec.avg_hops = 1.5;
    rec.avg_delivered_delay_s = 0.009;
    auto text = metrics_csv({rec}, "skylink", 7);
    CHECK(text.find("slot,utc_s,router,seed,cost_s,drop_rate,throughput_bps,generated_bps,"
                    "avg_hops,avg_delay_s\n") == 0);
    CHECK(text.find("3,45,skylink,7,0.01,0.25,750000000,1000000000,1.5,0.009\n") !=
          std::string::npos);
}
