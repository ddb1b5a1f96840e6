#include "leosim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leosim {

double isl_capacity_bps(double d_m, const ChannelParams& p) {
    if (d_m <= 0.0) throw std::invalid_argument("isl_capacity: distance must be positive");
    double intercept = (0.5 * p.isl_aperture_m) * (0.5 * p.isl_aperture_m) /
                       ((d_m * p.isl_beam_divergence_rad) * (d_m * p.isl_beam_divergence_rad));
    double p_rx = p.isl_tx_power_w * p.isl_pointing_loss * intercept;
    double p_noise = p.boltzmann_j_per_k * p.isl_noise_temp_k * p.isl_bandwidth_hz;
    return p.upload_scale * p.isl_bandwidth_hz * std::log2(1.0 + p_rx / p_noise);
}

double atmospheric_attenuation_db(double elevation_deg, const ChannelParams& p) {
    if (elevation_deg <= 0.0)
        throw std::invalid_argument("atmospheric_attenuation: elevation must be positive");
    auto table = p.atmos_table;
    std::sort(table.begin(), table.end());
    if (table.empty()) return 0.0;
    if (elevation_deg <= table.front().first) return table.front().second;
    if (elevation_deg >= table.back().first) return table.back().second;
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (elevation_deg <= table[i].first) {
            double e0 = table[i - 1].first, a0 = table[i - 1].second;
            double e1 = table[i].first, a1 = table[i].second;
            double f = (elevation_deg - e0) / (e1 - e0);
            return a0 + f * (a1 - a0);
        }
    }
    return table.back().second;
}

double fspl_db(double d_m, double f_hz, double c_mps) {
    return 20.0 * std::log10(4.0 * constants::kPi * d_m * f_hz / c_mps);
}

double gsl_capacity_bps(double d_m, double elevation_deg, const ChannelParams& p) {
    if (d_m <= 0.0) throw std::invalid_argument("gsl_capacity: distance must be positive");
    double a_atmos = atmospheric_attenuation_db(elevation_deg, p);
    double fspl = fspl_db(d_m, p.gsl_carrier_hz, p.light_speed_mps);
    double p_rx = std::pow(10.0, (p.gsl_eirp_dbw - fspl + p.gsl_rx_gain_db - a_atmos) / 10.0);
    double transmit = std::pow(10.0, -a_atmos / 10.0);
    double t_sky = p.gsl_mr_temp_k * (1.0 - transmit) + 2.7 * transmit;
    double p_noise = p.boltzmann_j_per_k * t_sky * p.gsl_bandwidth_hz;
    return p.gsl_bandwidth_hz * std::log2(1.0 + p_rx / p_noise);
}

double propagation_delay_s(double d_m, const ChannelParams& p) {
    return d_m / p.light_speed_mps;
}

double fiber_delay_base_s(Rng& rng, const ChannelParams& p) {
    return rng.uniform(p.fiber_delay_lo_s, p.fiber_delay_hi_s);
}

double fiber_delay_slot_s(double base_s, Rng& rng, const ChannelParams& p) {
    double d = base_s + rng.normal(0.0, p.fiber_delay_noise_std_s);
    return d < 0.0 ? 0.0 : d;
}

}  // namespace leosim
