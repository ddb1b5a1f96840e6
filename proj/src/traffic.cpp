#include "leosim/traffic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace leosim {

void PopulationGrid::add(double lat_deg, double lon_deg, double population) {
    if (population < 0.0) throw std::invalid_argument("population must be non-negative");
    if (lat_deg < -90.0 || lat_deg > 90.0) throw std::invalid_argument("latitude out of range");
    double lon = normalize_longitude_deg(lon_deg);
    int i = static_cast<int>(std::floor(lat_deg + 90.0));
    int j = static_cast<int>(std::floor(lon + 180.0));
    if (i >= kLatCells) i = kLatCells - 1;  // lat == +90 edge
    if (j >= kLonCells) j = kLonCells - 1;
    population_[static_cast<std::size_t>(i) * kLonCells + j] += population;
    cache_valid_ = false;
}

double PopulationGrid::total_population() const {
    double total = 0.0;
    for (double p : population_) total += p;
    return total;
}

const std::vector<PopulationGrid::Cell>& PopulationGrid::nonzero_cells() const {
    if (!cache_valid_) {
        nonzero_.clear();
        for (int i = 0; i < kLatCells; ++i) {
            for (int j = 0; j < kLonCells; ++j) {
                double pop = population_[static_cast<std::size_t>(i) * kLonCells + j];
                if (pop <= 0.0) continue;
                GeodeticCoord c = cell_center(i, j);
                double lat = deg2rad(c.latitude_deg), lon = deg2rad(c.longitude_deg);
                nonzero_.push_back({i, j, pop, std::cos(lat) * std::cos(lon),
                                    std::cos(lat) * std::sin(lon), std::sin(lat)});
            }
        }
        cache_valid_ = true;
    }
    return nonzero_;
}

PopulationGrid load_population_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open population file: " + path);
    PopulationGrid grid;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw std::runtime_error("empty population file: " + path);
    ++line_no;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double lat, lon, pop;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &lat, &lon, &pop) != 3)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": malformed population row");
        grid.add(lat, lon, pop);
    }
    return grid;
}

PopulationGrid synth_population(const std::vector<Hotspot>& hotspots) {
    PopulationGrid grid;
    for (const auto& h : hotspots) {
        int reach = static_cast<int>(std::ceil(3.0 * h.spread_deg));
        double clat = std::floor(h.lat_deg) + 0.5;
        double clon = std::floor(normalize_longitude_deg(h.lon_deg)) + 0.5;
        std::vector<std::pair<std::pair<double, double>, double>> weights;
        double total_w = 0.0;
        for (int di = -reach; di <= reach; ++di) {
            double lat = clat + di;
            if (lat < -89.5 || lat > 89.5) continue;
            for (int dj = -reach; dj <= reach; ++dj) {
                double lon = normalize_longitude_deg(clon + dj);
                double r2 = static_cast<double>(di) * di + static_cast<double>(dj) * dj;
                double w = std::exp(-r2 / (2.0 * h.spread_deg * h.spread_deg));
                if (w < 1e-6) continue;
                weights.push_back({{lat, lon}, w});
                total_w += w;
            }
        }
        for (const auto& [cell, w] : weights)
            grid.add(cell.first, cell.second, h.population * w / total_w);
    }
    return grid;
}

std::array<double, 24> default_diurnal_profile() {
    // Single-peak day curve: slow 16 h climb from the 4 am trough to the
    // 8 pm peak, fast 8 h fall back, glued from two half-cosines and scaled
    // so the 24-sample mean is exactly 1.
    std::array<double, 24> profile{};
    double sum = 0.0;
    for (int h = 0; h < 24; ++h) {
        double v;
        int since_trough = ((h - 4) % 24 + 24) % 24;
        if (since_trough <= 16) {
            v = 0.95 - 0.45 * std::cos(constants::kPi * since_trough / 16.0);
        } else {
            v = 0.95 + 0.45 * std::cos(constants::kPi * (since_trough - 16) / 8.0);
        }
        profile[static_cast<std::size_t>(h)] = v;
        sum += v;
    }
    for (double& v : profile) v *= 24.0 / sum;
    return profile;
}

TrafficParams::TrafficParams() : diurnal(default_diurnal_profile()) {}

std::vector<double> assign_cells(const std::vector<EcefPosition>& sat_positions,
                                 const PopulationGrid& grid) {
    if (sat_positions.empty()) throw std::invalid_argument("assign_cells: no satellites");
    std::vector<double> unit(sat_positions.size() * 3);
    for (std::size_t s = 0; s < sat_positions.size(); ++s) {
        double n = sat_positions[s].norm();
        unit[3 * s + 0] = sat_positions[s].x_m / n;
        unit[3 * s + 1] = sat_positions[s].y_m / n;
        unit[3 * s + 2] = sat_positions[s].z_m / n;
    }
    std::vector<double> pop(sat_positions.size(), 0.0);
    for (const auto& cell : grid.nonzero_cells()) {
        // Maximizing the dot product of unit vectors minimizes the central
        // angle; strict comparison keeps the lowest index on exact ties.
        int best = 0;
        double best_dot = -2.0;
        for (std::size_t s = 0; s < sat_positions.size(); ++s) {
            double dot = unit[3 * s + 0] * cell.ux + unit[3 * s + 1] * cell.uy +
                         unit[3 * s + 2] * cell.uz;
            if (dot > best_dot) {
                best_dot = dot;
                best = static_cast<int>(s);
            }
        }
        pop[static_cast<std::size_t>(best)] += cell.population;
    }
    return pop;
}

double generation_rate_bps(double population, const TrafficParams& params, int local_hour) {
    return population * params.devices_per_person * params.rate_per_device_bps *
           params.diurnal[static_cast<std::size_t>(local_hour)];
}

}  // namespace leosim
