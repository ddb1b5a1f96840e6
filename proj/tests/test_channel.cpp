#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "leosim/channel.hpp"

using namespace leosim;

namespace {

// Independent scalar evaluation of the ISL link budget, kept deliberately
// separate from the library implementation.
double isl_capacity_oracle(double d_m, const ChannelParams& p) {
    double numerator = constants::kPi * std::pow(0.5 * p.isl_aperture_m, 2.0);
    double denominator = constants::kPi * std::pow(d_m * p.isl_beam_divergence_rad, 2.0);
    double p_rx = p.isl_tx_power_w * p.isl_pointing_loss * numerator / denominator;
    double p_noise = 1.380649e-23 * p.isl_noise_temp_k * p.isl_bandwidth_hz;
    return p.upload_scale * p.isl_bandwidth_hz * std::log(1.0 + p_rx / p_noise) / std::log(2.0);
}

// Independent scalar evaluation of the GSL link budget.
double gsl_capacity_oracle(double d_m, double a_atmos_db, const ChannelParams& p) {
    double fspl = 20.0 * std::log10(4.0 * constants::kPi * d_m * p.gsl_carrier_hz / 2.99792458e8);
    double p_rx = std::exp(std::log(10.0) * (p.gsl_eirp_dbw - fspl + p.gsl_rx_gain_db - a_atmos_db) / 10.0);
    double t_sky = p.gsl_mr_temp_k * (1.0 - std::pow(10.0, -a_atmos_db / 10.0)) +
                   2.7 * std::pow(10.0, -a_atmos_db / 10.0);
    double p_noise = 1.380649e-23 * t_sky * p.gsl_bandwidth_hz;
    return p.gsl_bandwidth_hz * std::log2(1.0 + p_rx / p_noise);
}

double implied_isl_snr(double capacity, const ChannelParams& p) {
    return std::exp2(capacity / (p.upload_scale * p.isl_bandwidth_hz)) - 1.0;
}

}  // namespace

TEST_CASE("isl capacity matches the independent oracle at 1000 km") {
    ChannelParams p;
    double got = isl_capacity_bps(1.0e6, p);
    double expected = isl_capacity_oracle(1.0e6, p);
    CHECK(std::abs(got - expected) / expected < 1e-9);
    // about 6.07 Gbit/s at the default operating point
    CHECK(got > 6.0e9);
    CHECK(got < 6.2e9);
}

TEST_CASE("received power falls with the square of distance") {
    ChannelParams p;
    double snr1 = implied_isl_snr(isl_capacity_bps(1.0e6, p), p);
    double snr2 = implied_isl_snr(isl_capacity_bps(2.0e6, p), p);
    CHECK(snr2 == doctest::Approx(snr1 / 4.0).epsilon(1e-9));
}

TEST_CASE("zero upload scale yields zero capacity") {
    ChannelParams p;
    p.upload_scale = 0.0;
    CHECK(isl_capacity_bps(1.0e6, p) == 0.0);
}

TEST_CASE("isl capacity rejects zero distance") {
    ChannelParams p;
    CHECK_THROWS_AS(isl_capacity_bps(0.0, p), std::invalid_argument);
}

TEST_CASE("attenuation table interpolation") {
    ChannelParams p;
    p.atmos_table = {{25.0, 1.2}, {90.0, 0.5}};
    CHECK(atmospheric_attenuation_db(90.0, p) == doctest::Approx(0.5));
    CHECK(atmospheric_attenuation_db(57.5, p) == doctest::Approx(0.85));
    CHECK(atmospheric_attenuation_db(10.0, p) == doctest::Approx(1.2));  // clamped low end
    CHECK_THROWS_AS(atmospheric_attenuation_db(0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(atmospheric_attenuation_db(-5.0, p), std::invalid_argument);
}

TEST_CASE("attenuation is monotone non-increasing in elevation") {
    ChannelParams p;
    for (double e = 1.0; e < 89.0; e += 0.7)
        CHECK(atmospheric_attenuation_db(e, p) >= atmospheric_attenuation_db(e + 1.0, p));
}

TEST_CASE("fspl at 1200 km and 19 GHz") {
    double got = fspl_db(1.2e6, 1.9e10);
    CHECK(std::abs(got - 179.61) < 0.01);
}

TEST_CASE("gsl capacity matches the independent oracle") {
    ChannelParams p;
    p.atmos_table = {{25.0, 1.2}, {90.0, 0.5}};  // zenith -> 0.5 dB
    double got = gsl_capacity_bps(1.2e6, 90.0, p);
    double expected = gsl_capacity_oracle(1.2e6, 0.5, p);
    CHECK(std::abs(got - expected) / expected < 1e-9);
    // about 96 Mbit/s under the default parameters
    CHECK(got > 9.0e7);
    CHECK(got < 1.0e8);
}

TEST_CASE("extreme attenuation drives capacity to zero") {
    ChannelParams p;
    p.atmos_table = {{25.0, 400.0}, {90.0, 300.0}};
    double c = gsl_capacity_bps(1.2e6, 90.0, p);
    CHECK(c < 1.0);  // bit/s; T_sky -> 2.7 K but P_rx -> 0 far faster
}

TEST_CASE("capacities decrease with distance, gsl grows with elevation") {
    ChannelParams p;
    double prev = isl_capacity_bps(2.0e5, p);
    for (double d = 4.0e5; d < 6.0e6; d += 2.0e5) {
        double c = isl_capacity_bps(d, p);
        CHECK(c < prev);
        CHECK(c >= 0.0);
        CHECK(std::isfinite(c));
        prev = c;
    }
    prev = gsl_capacity_bps(2.0e6, 5.0, p);
    for (double e = 15.0; e <= 90.0; e += 10.0) {
        double c = gsl_capacity_bps(2.0e6, e, p);
        CHECK(c >= prev);
        prev = c;
    }
    double near = gsl_capacity_bps(1.3e6, 45.0, p);
    double far = gsl_capacity_bps(1.9e6, 45.0, p);
    CHECK(far < near);
}

TEST_CASE("shannon composition stays coherent when bandwidth scales") {
    ChannelParams p;
    double snr = implied_isl_snr(isl_capacity_bps(1.0e6, p), p);
    ChannelParams wide = p;
    wide.isl_bandwidth_hz *= 2.0;
    double snr_wide = implied_isl_snr(isl_capacity_bps(1.0e6, wide), wide);
    // Noise power tracks bandwidth, so doubling B halves the SNR.
    CHECK(snr_wide == doctest::Approx(snr / 2.0).epsilon(1e-9));
}

TEST_CASE("propagation delay") {
    ChannelParams p;
    CHECK(propagation_delay_s(0.0, p) == 0.0);
    CHECK(propagation_delay_s(2.99792458e8, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(propagation_delay_s(1.0e6, p) == doctest::Approx(3.336e-3).epsilon(1e-3));
}

TEST_CASE("fiber delay model") {
    ChannelParams p;
    p.fiber_delay_lo_s = 3.0e-3;
    p.fiber_delay_hi_s = 3.0e-3;
    p.fiber_delay_noise_std_s = 0.0;

    Rng rng(11);
    double base = fiber_delay_base_s(rng, p);
    CHECK(base == doctest::Approx(3.0e-3).epsilon(1e-12));
    for (int slot = 0; slot < 5; ++slot)
        CHECK(fiber_delay_slot_s(base, rng, p) == doctest::Approx(3.0e-3).epsilon(1e-12));

    // Same seed, same sequence.
    p.fiber_delay_lo_s = 1.0e-3;
    p.fiber_delay_hi_s = 5.0e-3;
    p.fiber_delay_noise_std_s = 2.0e-4;
    Rng a(42), b(42);
    double base_a = fiber_delay_base_s(a, p);
    double base_b = fiber_delay_base_s(b, p);
    CHECK(base_a == base_b);
    for (int slot = 0; slot < 20; ++slot) {
        double da = fiber_delay_slot_s(base_a, a, p);
        double db = fiber_delay_slot_s(base_b, b, p);
        CHECK(da == db);
        CHECK(da >= 0.0);
    }
}
