#include "leosim/ephemeris.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace leosim {

std::vector<EcefPosition> EphemerisTable::slot_positions(int slot) const {
    std::vector<EcefPosition> out(num_nodes_);
    for (int n = 0; n < num_nodes_; ++n) out[n] = at(slot, n);
    return out;
}

double orbital_period_s(double altitude_m, double earth_radius_m) {
    double a = earth_radius_m + altitude_m;
    return 2.0 * constants::kPi * std::sqrt(a * a * a / constants::kEarthMuM3S2);
}

std::vector<EcefPosition> generate_walker_star(const WalkerConfig& cfg, int slot,
                                               double slot_duration_s,
                                               double earth_radius_m) {
    if (cfg.num_planes < 1 || cfg.sats_per_plane < 1)
        throw std::invalid_argument("walker config needs at least one plane and one satellite");
    if (cfg.altitude_m <= 0.0)
        throw std::invalid_argument("walker config needs a positive altitude");

    double a = earth_radius_m + cfg.altitude_m;
    double mean_motion = std::sqrt(constants::kEarthMuM3S2 / (a * a * a));
    double t = static_cast<double>(slot) * slot_duration_s;
    double earth_angle = constants::kEarthRotationRadS * t;
    double inc = deg2rad(cfg.inclination_deg);
    double cos_i = std::cos(inc), sin_i = std::sin(inc);

    std::vector<EcefPosition> out;
    out.reserve(static_cast<std::size_t>(cfg.num_sats()));
    for (int p = 0; p < cfg.num_planes; ++p) {
        double raan = deg2rad(p * 360.0 / cfg.num_planes);
        double cos_o = std::cos(raan), sin_o = std::sin(raan);
        for (int s = 0; s < cfg.sats_per_plane; ++s) {
            double u = deg2rad(s * 360.0 / cfg.sats_per_plane + p * cfg.phasing_offset_deg) +
                       mean_motion * t;
            // Orbital plane -> inertial: rotate by inclination about x, RAAN about z.
            double xp = a * std::cos(u);
            double yp = a * std::sin(u) * cos_i;
            double zp = a * std::sin(u) * sin_i;
            double xi = xp * cos_o - yp * sin_o;
            double yi = xp * sin_o + yp * cos_o;
            // Inertial -> Earth-fixed.
            double ce = std::cos(earth_angle), se = std::sin(earth_angle);
            out.push_back({xi * ce + yi * se, -xi * se + yi * ce, zp});
        }
    }
    return out;
}

EphemerisTable build_walker_table(const WalkerConfig& cfg, int num_slots,
                                  double slot_duration_s, double earth_radius_m) {
    EphemerisTable table(num_slots, slot_duration_s, cfg.num_sats());
    for (int t = 0; t < num_slots; ++t) {
        auto pos = generate_walker_star(cfg, t, slot_duration_s, earth_radius_m);
        for (int n = 0; n < cfg.num_sats(); ++n) table.at(t, n) = pos[n];
    }
    return table;
}

EphemerisTable load_ephemeris(const std::string& path, double slot_duration_s) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ephemeris file: " + path);

    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("empty ephemeris file: " + path);
    ++line_no;

    std::map<std::pair<int, int>, EcefPosition> entries;
    int max_slot = -1, max_node = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        int slot, node;
        double x, y, z;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &slot, &node, &x, &y, &z) != 5)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed ephemeris row");
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": non-finite coordinate");
        if (slot < 0 || node < 0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": negative slot or node id");
        entries[{slot, node}] = {x, y, z};
        max_slot = std::max(max_slot, slot);
        max_node = std::max(max_node, node);
    }
    if (max_slot < 0) throw std::runtime_error("ephemeris file has no rows: " + path);

    EphemerisTable table(max_slot + 1, slot_duration_s, max_node + 1);
    for (int t = 0; t <= max_slot; ++t) {
        for (int n = 0; n <= max_node; ++n) {
            auto it = entries.find({t, n});
            if (it == entries.end())
                throw std::runtime_error("incomplete ephemeris: missing node " +
                                         std::to_string(n) + " at slot " + std::to_string(t));
            table.at(t, n) = it->second;
        }
    }
    return table;
}

void save_ephemeris(const EphemerisTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write ephemeris file: " + path);
    out << "slot,node_id,x_m,y_m,z_m\n";
    char buf[160];
    for (int t = 0; t < table.num_slots(); ++t) {
        for (int n = 0; n < table.num_nodes(); ++n) {
            const auto& p = table.at(t, n);
            std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g\n", t, n, p.x_m, p.y_m,
                          p.z_m);
            out << buf;
        }
    }
}

}  // namespace leosim
