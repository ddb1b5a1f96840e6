#pragma once

#include <string>
#include <vector>

#include "leosim/geo.hpp"

namespace leosim {

/// Walker-Star-style constellation: evenly spaced circular near-polar planes
/// with uniform in-plane phasing.
struct WalkerConfig {
    int num_planes = 1;
    int sats_per_plane = 1;
    double inclination_deg = 90.0;
    double altitude_m = 1200000.0;
    double phasing_offset_deg = 0.0;
    double epoch_utc_s = 0.0;

    int num_sats() const { return num_planes * sats_per_plane; }
};

/// Pre-computed per-slot satellite positions. Immutable after construction.
class EphemerisTable {
public:
    EphemerisTable(int num_slots, double slot_duration_s, int num_nodes)
        : num_slots_(num_slots),
          slot_duration_s_(slot_duration_s),
          num_nodes_(num_nodes),
          positions_(static_cast<std::size_t>(num_slots) * num_nodes) {}

    int num_slots() const { return num_slots_; }
    int num_nodes() const { return num_nodes_; }
    double slot_duration_s() const { return slot_duration_s_; }

    const EcefPosition& at(int slot, int node) const {
        return positions_[static_cast<std::size_t>(slot) * num_nodes_ + node];
    }
    EcefPosition& at(int slot, int node) {
        return positions_[static_cast<std::size_t>(slot) * num_nodes_ + node];
    }

    std::vector<EcefPosition> slot_positions(int slot) const;

private:
    int num_slots_;
    double slot_duration_s_;
    int num_nodes_;
    std::vector<EcefPosition> positions_;
};

/// Satellite positions for one slot. Satellite index is plane-major:
/// id = plane * sats_per_plane + slot_in_plane. Plane p has
/// RAAN = p*360/num_planes; in-plane phase s*360/sats_per_plane plus the
/// per-plane phasing offset, advanced at the circular-orbit rate. ECEF is
/// the inertial frame rotated back by the Earth rotation accumulated since
/// slot 0. Throws std::invalid_argument on a degenerate config.
std::vector<EcefPosition> generate_walker_star(const WalkerConfig& cfg, int slot,
                                               double slot_duration_s,
                                               double earth_radius_m = constants::kEarthRadiusM);

/// Tabulates generate_walker_star over [0, num_slots).
EphemerisTable build_walker_table(const WalkerConfig& cfg, int num_slots,
                                  double slot_duration_s,
                                  double earth_radius_m = constants::kEarthRadiusM);

/// Circular-orbit period 2*pi*sqrt(a^3/GM).
double orbital_period_s(double altitude_m, double earth_radius_m = constants::kEarthRadiusM);

/// Reads a `slot,node_id,x_m,y_m,z_m` CSV. Every (slot, node) pair must be
/// present and finite; violations throw std::runtime_error naming the line
/// or the missing entry.
EphemerisTable load_ephemeris(const std::string& path, double slot_duration_s);

/// Writes the table in the same CSV format with round-trip precision.
void save_ephemeris(const EphemerisTable& table, const std::string& path);

}  // namespace leosim
