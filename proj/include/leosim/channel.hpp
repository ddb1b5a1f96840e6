#pragma once

#include <utility>
#include <vector>

#include "leosim/geo.hpp"
#include "leosim/rng.hpp"

namespace leosim {

/// Link-budget parameters. Defaults follow the standard operating point used
/// throughout the bundled scenarios.
struct ChannelParams {
    // Optical inter-satellite links.
    double isl_bandwidth_hz = 5.0e9;
    double isl_tx_power_w = 0.1;
    double isl_pointing_loss = 0.9;           // (0, 1]
    double isl_aperture_m = 0.10;             // receiver aperture diameter
    double isl_beam_divergence_rad = 1.744e-5;
    double isl_noise_temp_k = 290.0;
    double upload_scale = 0.08;               // share of ISL capacity for uplink data

    // Radio ground-satellite links.
    double gsl_bandwidth_hz = 2.5e8;
    double gsl_eirp_dbw = 34.6;
    double gsl_rx_gain_db = 10.8;
    double gsl_carrier_hz = 1.9e10;
    double gsl_mr_temp_k = 275.0;             // atmospheric mean radiating temperature

    double boltzmann_j_per_k = constants::kBoltzmannJPerK;
    double light_speed_mps = constants::kSpeedOfLightMps;

    // Ground-internet fiber.
    double fiber_capacity_bps = 5.0e10;       // default; stations may override
    double fiber_delay_lo_s = 1.0e-3;
    double fiber_delay_hi_s = 5.0e-3;
    double fiber_delay_noise_std_s = 2.0e-4;

    // Elevation-keyed attenuation table (deg -> dB), strictly decreasing in
    // elevation once sorted ascending by angle.
    std::vector<std::pair<double, double>> atmos_table = {
        {10.0, 3.0}, {25.0, 1.2}, {40.0, 0.8}, {60.0, 0.6}, {90.0, 0.5}};
};

/// ISL Shannon capacity at distance d. Received power follows the beam-spread
/// model P_tx * L_pointing * (0.5*aperture)^2 / (d*theta)^2; noise is
/// k*T*B; the upload_scale factor reserves only part of the link for user
/// upload traffic. Throws std::invalid_argument for d <= 0 (singular beam
/// spread).
double isl_capacity_bps(double d_m, const ChannelParams& p);

/// Linear interpolation in the attenuation table; clamped at the table ends.
/// Elevation must be in (0, 90].
double atmospheric_attenuation_db(double elevation_deg, const ChannelParams& p);

/// GSL Shannon capacity: EIRP - FSPL + G_rx - A_atmos (dB) converted to
/// watts, against sky-noise k*T_sky*B where T_sky blends the atmosphere with
/// the 2.7 K background. No upload_scale factor on GSLs.
double gsl_capacity_bps(double d_m, double elevation_deg, const ChannelParams& p);

/// Free-space path loss in dB: 20*log10(4*pi*d*f/c).
double fspl_db(double d_m, double f_hz, double c_mps = constants::kSpeedOfLightMps);

/// Propagation delay d/c.
double propagation_delay_s(double d_m, const ChannelParams& p);

/// Per-ground-station fiber delay: one base draw per run, Gaussian noise per
/// slot, clamped at zero.
double fiber_delay_base_s(Rng& rng, const ChannelParams& p);
double fiber_delay_slot_s(double base_s, Rng& rng, const ChannelParams& p);

}  // namespace leosim
