#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leosim/channel.hpp"
#include "leosim/ephemeris.hpp"
#include "leosim/flow.hpp"
#include "leosim/skylink.hpp"
#include "leosim/topology.hpp"
#include "leosim/traffic.hpp"

namespace leosim {

/// Scheduled GSL outage: a fixed subset of ceil(fraction * N) satellites,
/// drawn once from selection_seed, loses every GSL while
/// start_slot <= slot < end_slot.
struct FailureSchedule {
    double fraction = 0.0;
    int start_slot = 0;
    int end_slot = 0;
    std::uint64_t selection_seed = 0;
};

/// Full scenario description; mirrors the config file tree.
struct SimConfig {
    // [run]
    int slots = 1;
    double slot_duration_s = 15.0;
    double start_utc_s = 0.0;
    std::vector<std::uint64_t> seeds = {1};

    // [constellation]
    WalkerConfig walker;
    std::optional<std::string> ephemeris_path;  // overrides the generator
    PlaneLayout layout;

    // [topology] + [ground]
    TopologyOptions topology;
    std::vector<GroundStation> stations;

    // [channel]
    ChannelParams channel;

    // [traffic]
    TrafficParams traffic;
    std::optional<std::string> population_path;
    std::vector<Hotspot> hotspots;

    // [buffers], [ttl]
    BufferSpec buffers;
    TtlConfig ttl;

    // [router]
    RouterKind router = RouterKind::SkyLink;
    int k_paths = 4;
    SkyLinkParams skylink;

    // [failure]
    std::optional<FailureSchedule> failure;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses and validates a scenario file; throws ConfigError with the
/// offending key on inconsistencies.
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& toml_text);

/// Bundled scenario presets, emitted as commented TOML text.
std::string desk_preset_toml();
std::string paper_shape_preset_toml();

}  // namespace leosim
