#include "leosim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "leosim/toml.hpp"

namespace leosim {

namespace {

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

std::vector<double> float_list(const toml::Value& v) {
    std::vector<double> out;
    for (const auto& item : v.as_array()) out.push_back(item.as_float());
    return out;
}

}  // namespace

SimConfig parse_config(const std::string& toml_text) {
    toml::Table root;
    try {
        root = toml::parse(toml_text);
    } catch (const toml::ParseError& e) {
        throw ConfigError(e.what());
    }
    try {
        SimConfig cfg;

        cfg.slots = static_cast<int>(toml::get_int(root, "run.slots", 1));
        cfg.slot_duration_s = toml::get_float(root, "run.slot_duration_s", 15.0);
        cfg.start_utc_s = toml::get_float(root, "run.start_utc_s", 0.0);
        check(cfg.slots >= 1, "run.slots must be >= 1");
        check(cfg.slot_duration_s > 0.0, "run.slot_duration_s must be positive");
        if (const auto* seeds = toml::find(root, "run.seeds")) {
            cfg.seeds.clear();
            for (const auto& s : seeds->as_array())
                cfg.seeds.push_back(static_cast<std::uint64_t>(s.as_integer()));
        }
        check(!cfg.seeds.empty(), "run.seeds must list at least one seed");

        cfg.walker.num_planes =
            static_cast<int>(toml::get_int(root, "constellation.num_planes", 1));
        cfg.walker.sats_per_plane =
            static_cast<int>(toml::get_int(root, "constellation.sats_per_plane", 1));
        cfg.walker.inclination_deg = toml::get_float(root, "constellation.inclination_deg", 90.0);
        cfg.walker.altitude_m = toml::get_float(root, "constellation.altitude_m", 1200000.0);
        cfg.walker.phasing_offset_deg =
            toml::get_float(root, "constellation.phasing_offset_deg", 0.0);
        cfg.walker.epoch_utc_s = toml::get_float(root, "constellation.epoch_utc_s", 0.0);
        check(cfg.walker.num_planes >= 1, "constellation.num_planes must be >= 1");
        check(cfg.walker.sats_per_plane >= 1, "constellation.sats_per_plane must be >= 1");
        check(cfg.walker.altitude_m > 0.0, "constellation.altitude_m must be positive");
        check(cfg.walker.altitude_m <= 2.0e6, "constellation.altitude_m beyond the LEO band");
        std::string eph = toml::get_string(root, "constellation.ephemeris_path", "");
        if (!eph.empty()) cfg.ephemeris_path = eph;
        cfg.layout = {cfg.walker.num_planes, cfg.walker.sats_per_plane};

        cfg.topology.min_elevation_deg = toml::get_float(root, "topology.min_elevation_deg", 25.0);
        cfg.topology.cross_seam_isls = toml::get_bool(root, "topology.cross_seam_isls", false);

        std::string catalog = toml::get_string(root, "ground.catalog", "");
        if (!catalog.empty()) cfg.stations = load_station_catalog(catalog);
        if (const auto* list = toml::find(root, "ground.station")) {
            for (const auto& t : list->as_table_array()) {
                GroundStation gs;
                gs.name = toml::get_string(t, "name", "gs" + std::to_string(cfg.stations.size()));
                gs.location.latitude_deg = toml::require_float(t, "lat_deg");
                gs.location.longitude_deg =
                    normalize_longitude_deg(toml::require_float(t, "lon_deg"));
                gs.num_antennas = static_cast<int>(toml::get_int(t, "num_antennas", 2));
                gs.fiber_capacity_bps = toml::get_float(t, "fiber_capacity_bps", 0.0);
                check(gs.location.latitude_deg >= -90.0 && gs.location.latitude_deg <= 90.0,
                      "ground.station lat_deg out of range");
                check(gs.num_antennas >= 1, "ground.station num_antennas must be >= 1");
                cfg.stations.push_back(gs);
            }
        }

        auto& ch = cfg.channel;
        ch.isl_bandwidth_hz = toml::get_float(root, "channel.isl_bandwidth_hz", ch.isl_bandwidth_hz);
        ch.isl_tx_power_w = toml::get_float(root, "channel.isl_tx_power_w", ch.isl_tx_power_w);
        ch.isl_pointing_loss =
            toml::get_float(root, "channel.isl_pointing_loss", ch.isl_pointing_loss);
        ch.isl_aperture_m = toml::get_float(root, "channel.isl_aperture_m", ch.isl_aperture_m);
        ch.isl_beam_divergence_rad =
            toml::get_float(root, "channel.isl_beam_divergence_rad", ch.isl_beam_divergence_rad);
        ch.isl_noise_temp_k =
            toml::get_float(root, "channel.isl_noise_temp_k", ch.isl_noise_temp_k);
        ch.upload_scale = toml::get_float(root, "channel.upload_scale", ch.upload_scale);
        ch.gsl_bandwidth_hz = toml::get_float(root, "channel.gsl_bandwidth_hz", ch.gsl_bandwidth_hz);
        ch.gsl_eirp_dbw = toml::get_float(root, "channel.gsl_eirp_dbw", ch.gsl_eirp_dbw);
        ch.gsl_rx_gain_db = toml::get_float(root, "channel.gsl_rx_gain_db", ch.gsl_rx_gain_db);
        ch.gsl_carrier_hz = toml::get_float(root, "channel.gsl_carrier_hz", ch.gsl_carrier_hz);
        ch.gsl_mr_temp_k = toml::get_float(root, "channel.gsl_mr_temp_k", ch.gsl_mr_temp_k);
        ch.fiber_capacity_bps =
            toml::get_float(root, "channel.fiber_capacity_bps", ch.fiber_capacity_bps);
        ch.fiber_delay_lo_s = toml::get_float(root, "channel.fiber_delay_lo_s", ch.fiber_delay_lo_s);
        ch.fiber_delay_hi_s = toml::get_float(root, "channel.fiber_delay_hi_s", ch.fiber_delay_hi_s);
        ch.fiber_delay_noise_std_s =
            toml::get_float(root, "channel.fiber_delay_noise_std_s", ch.fiber_delay_noise_std_s);
        check(ch.fiber_delay_lo_s <= ch.fiber_delay_hi_s,
              "channel.fiber_delay_lo_s must not exceed fiber_delay_hi_s");
        check(ch.upload_scale > 0.0 && ch.upload_scale <= 1.0,
              "channel.upload_scale must be in (0, 1]");
        check(ch.isl_pointing_loss > 0.0 && ch.isl_pointing_loss <= 1.0,
              "channel.isl_pointing_loss must be in (0, 1]");
        if (const auto* table = toml::find(root, "channel.atmos_table")) {
            ch.atmos_table.clear();
            for (const auto& pair : table->as_array()) {
                auto vals = float_list(pair);
                check(vals.size() == 2, "channel.atmos_table entries are [elevation_deg, db]");
                ch.atmos_table.push_back({vals[0], vals[1]});
            }
            check(!ch.atmos_table.empty(), "channel.atmos_table must not be empty");
            auto sorted = ch.atmos_table;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t i = 1; i < sorted.size(); ++i)
                check(sorted[i].second < sorted[i - 1].second,
                      "channel.atmos_table must be strictly decreasing in elevation");
        }

        auto& tr = cfg.traffic;
        tr.devices_per_person =
            toml::get_float(root, "traffic.devices_per_person", tr.devices_per_person);
        tr.rate_per_device_bps =
            toml::get_float(root, "traffic.rate_per_device_bps", tr.rate_per_device_bps);
        check(tr.devices_per_person >= 0.0, "traffic.devices_per_person must be >= 0");
        check(tr.rate_per_device_bps >= 0.0, "traffic.rate_per_device_bps must be >= 0");
        if (const auto* diurnal = toml::find(root, "traffic.diurnal")) {
            auto vals = float_list(*diurnal);
            check(vals.size() == 24, "traffic.diurnal needs exactly 24 entries");
            for (std::size_t h = 0; h < 24; ++h) {
                check(vals[h] >= 0.0, "traffic.diurnal entries must be >= 0");
                tr.diurnal[h] = vals[h];
            }
        }
        std::string pop = toml::get_string(root, "traffic.population", "");
        if (!pop.empty()) cfg.population_path = pop;
        if (const auto* hotspots = toml::find(root, "traffic.hotspot")) {
            for (const auto& t : hotspots->as_table_array()) {
                Hotspot h;
                h.lat_deg = toml::require_float(t, "lat_deg");
                h.lon_deg = toml::require_float(t, "lon_deg");
                h.population = toml::require_float(t, "population");
                h.spread_deg = toml::get_float(t, "spread_deg", 5.0);
                check(h.population >= 0.0, "traffic.hotspot population must be >= 0");
                check(h.spread_deg > 0.0, "traffic.hotspot spread_deg must be positive");
                cfg.hotspots.push_back(h);
            }
        }
        check(cfg.population_path.has_value() || !cfg.hotspots.empty(),
              "traffic needs either a population file or hotspots");

        cfg.buffers.satellite_buffer_bits =
            toml::get_float(root, "buffers.satellite_bits", cfg.buffers.satellite_buffer_bits);
        cfg.buffers.ground_buffer_bits =
            toml::get_float(root, "buffers.ground_bits", cfg.buffers.ground_buffer_bits);
        check(cfg.buffers.satellite_buffer_bits > 0.0, "buffers.satellite_bits must be positive");
        check(cfg.buffers.ground_buffer_bits > 0.0, "buffers.ground_bits must be positive");

        cfg.ttl.t_max_s = toml::get_float(root, "ttl.t_max_s", cfg.ttl.t_max_s);
        cfg.ttl.hop_cap = static_cast<int>(toml::get_int(root, "ttl.hop_cap", cfg.ttl.hop_cap));
        check(cfg.ttl.t_max_s > 0.0, "ttl.t_max_s must be positive");
        check(cfg.ttl.hop_cap >= 1, "ttl.hop_cap must be >= 1");

        std::string kind = toml::get_string(root, "router.kind", "skylink");
        auto parsed = parse_router_kind(kind);
        check(parsed.has_value(), "router.kind '" + kind + "' is not a known router");
        cfg.router = *parsed;
        cfg.k_paths = static_cast<int>(toml::get_int(root, "router.k", 4));
        check(cfg.k_paths >= 1, "router.k must be >= 1");
        cfg.skylink.sigma = toml::get_float(root, "router.sigma", cfg.skylink.sigma);
        check(cfg.skylink.sigma > 0.0 && cfg.skylink.sigma <= 1.0,
              "router.sigma must be in (0, 1]");
        cfg.skylink.tiles.tile_width_m =
            toml::get_float(root, "router.tile_width_m", cfg.skylink.tiles.tile_width_m);
        cfg.skylink.tiles.num_partitions = static_cast<int>(
            toml::get_int(root, "router.tile_partitions", cfg.skylink.tiles.num_partitions));
        cfg.skylink.tiles.max_distance_m =
            toml::get_float(root, "router.tile_max_distance_m", cfg.skylink.tiles.max_distance_m);
        check(cfg.skylink.tiles.tile_width_m > 0.0, "router.tile_width_m must be positive");
        check(cfg.skylink.tiles.num_partitions >= 1, "router.tile_partitions must be >= 1");
        check(cfg.skylink.tiles.max_distance_m > 0.0,
              "router.tile_max_distance_m must be positive");
        cfg.skylink.update_all_used_links =
            toml::get_bool(root, "router.update_all_used_links", false);
        cfg.skylink.t_max_s = cfg.ttl.t_max_s;

        if (toml::find(root, "failure") != nullptr) {
            FailureSchedule f;
            f.fraction = toml::get_float(root, "failure.fraction", 0.0);
            f.start_slot = static_cast<int>(toml::get_int(root, "failure.start_slot", 0));
            f.end_slot = static_cast<int>(toml::get_int(root, "failure.end_slot", 0));
            f.selection_seed =
                static_cast<std::uint64_t>(toml::get_int(root, "failure.selection_seed", 0));
            check(f.fraction >= 0.0 && f.fraction <= 1.0, "failure.fraction must be in [0, 1]");
            check(f.start_slot <= f.end_slot, "failure.start_slot must not exceed end_slot");
            check(f.end_slot <= cfg.slots, "failure.end_slot must not exceed run.slots");
            cfg.failure = f;
        }

        return cfg;
    } catch (const toml::ParseError& e) {
        throw ConfigError(e.what());
    }
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string desk_preset_toml() {
    return R"(# Desk-scale scenario: small Walker constellation over synthetic hotspots,
# with fiber capacity deliberately undersized so congestion differentiates
# the routers. Completes in seconds per seed.

[run]
slots = 2000
slot_duration_s = 15.0
start_utc_s = 0.0
seeds = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10]

[constellation]
# Altitude/inclination are scenario choices (circular near-polar orbits).
num_planes = 8
sats_per_plane = 8
inclination_deg = 87.0
altitude_m = 1200000.0
phasing_offset_deg = 5.625

[topology]
min_elevation_deg = 10.0
cross_seam_isls = false

[ground]
[[ground.station]]
name = "alpha"
lat_deg = 48.0
lon_deg = 8.0
num_antennas = 2
fiber_capacity_bps = 1.2e9

[[ground.station]]
name = "bravo"
lat_deg = 40.0
lon_deg = -98.0
num_antennas = 2
fiber_capacity_bps = 1.2e9

[[ground.station]]
name = "charlie"
lat_deg = -28.0
lon_deg = 134.0
num_antennas = 2
fiber_capacity_bps = 1.2e9

[[ground.station]]
name = "delta"
lat_deg = -8.0
lon_deg = -52.0
num_antennas = 2
fiber_capacity_bps = 1.2e9

[channel]
isl_bandwidth_hz = 5.0e9
isl_tx_power_w = 0.1
isl_pointing_loss = 0.9
isl_aperture_m = 0.1
isl_beam_divergence_rad = 1.744e-5
isl_noise_temp_k = 290.0
upload_scale = 0.08
gsl_bandwidth_hz = 2.5e8
gsl_eirp_dbw = 34.6
gsl_rx_gain_db = 10.8
gsl_carrier_hz = 1.9e10
gsl_mr_temp_k = 275.0
fiber_delay_lo_s = 1.0e-3
fiber_delay_hi_s = 5.0e-3
fiber_delay_noise_std_s = 2.0e-4
atmos_table = [[10.0, 3.0], [25.0, 1.2], [40.0, 0.8], [60.0, 0.6], [90.0, 0.5]]

[traffic]
devices_per_person = 0.003175
rate_per_device_bps = 22980.0

[[traffic.hotspot]]
lat_deg = 50.0
lon_deg = 10.0
population = 5.0e6
spread_deg = 8.0

[[traffic.hotspot]]
lat_deg = 40.0
lon_deg = -95.0
population = 5.0e6
spread_deg = 8.0

[[traffic.hotspot]]
lat_deg = -30.0
lon_deg = 140.0
population = 4.0e6
spread_deg = 8.0

[[traffic.hotspot]]
lat_deg = -10.0
lon_deg = -55.0
population = 4.0e6
spread_deg = 8.0

[[traffic.hotspot]]
lat_deg = 20.0
lon_deg = 78.0
population = 4.0e6
spread_deg = 8.0

[[traffic.hotspot]]
lat_deg = 35.0
lon_deg = 115.0
population = 4.0e6
spread_deg = 8.0

[buffers]
satellite_bits = 4.0e8
# Scaled with the smaller desk fiber so a congested station queues for a
# survivable fraction of the TTL, as the full-scale numbers do.
ground_bits = 1.6e8

[ttl]
t_max_s = 0.2
hop_cap = 32

[router]
kind = "skylink"
k = 4
sigma = 0.9
tile_width_m = 500000.0
tile_partitions = 2
tile_max_distance_m = 6000000.0
)";
}

std::string paper_shape_preset_toml() {
    return R"(# Full-scale scenario shape: a week at 15 s slots over a 636-satellite
# near-polar constellation. Ground stations and the population raster are
# external datasets; point the two paths below at local copies
# (formats: stations CSV `name,lat_deg,lon_deg,num_antennas,fiber_capacity_bps`,
# population CSV `lat_deg,lon_deg,population` on 1-degree centers).

[run]
slots = 40320
slot_duration_s = 15.0
start_utc_s = 0.0
seeds = [1]

[constellation]
# Circular near-polar approximation of a OneWeb-class constellation; the
# true system flies propagated TLEs, which can be supplied instead via
# ephemeris_path (CSV `slot,node_id,x_m,y_m,z_m`).
num_planes = 12
sats_per_plane = 53
inclination_deg = 87.9
altitude_m = 1200000.0
phasing_offset_deg = 0.566

[topology]
min_elevation_deg = 25.0
cross_seam_isls = false

[ground]
catalog = "stations.csv"

[channel]
isl_bandwidth_hz = 5.0e9
isl_tx_power_w = 0.1
isl_pointing_loss = 0.9
isl_aperture_m = 0.1
isl_beam_divergence_rad = 1.744e-5
isl_noise_temp_k = 290.0
upload_scale = 0.08
gsl_bandwidth_hz = 2.5e8
gsl_eirp_dbw = 34.6
gsl_rx_gain_db = 10.8
gsl_carrier_hz = 1.9e10
gsl_mr_temp_k = 275.0
fiber_capacity_bps = 5.0e10
fiber_delay_lo_s = 1.0e-3
fiber_delay_hi_s = 5.0e-3
fiber_delay_noise_std_s = 2.0e-4
atmos_table = [[10.0, 3.0], [25.0, 1.2], [40.0, 0.8], [60.0, 0.6], [90.0, 0.5]]

[traffic]
# 25.4M users; scale the user base through devices_per_person.
devices_per_person = 0.003175
rate_per_device_bps = 22980.0
population = "population.csv"

[buffers]
satellite_bits = 4.0e8
ground_bits = 8.0e9

[ttl]
t_max_s = 0.2
hop_cap = 32

[router]
kind = "skylink"
k = 4
sigma = 0.9
tile_width_m = 500000.0
tile_partitions = 2
tile_max_distance_m = 6000000.0
)";
}

}  // namespace leosim
