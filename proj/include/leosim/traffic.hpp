#pragma once

#include <array>
#include <string>
#include <vector>

#include "leosim/geo.hpp"

namespace leosim {

/// One-degree population grid. Cell (i, j) covers latitudes [i-90, i-89) and
/// longitudes [j-180, j-179); its center sits at the half-degree point.
class PopulationGrid {
public:
    static constexpr int kLatCells = 180;
    static constexpr int kLonCells = 360;

    struct Cell {
        int lat_idx;
        int lon_idx;
        double population;
        double ux, uy, uz;  // unit vector of the cell center
    };

    PopulationGrid() : population_(kLatCells * kLonCells, 0.0) {}

    void add(double lat_deg, double lon_deg, double population);
    double cell_population(int lat_idx, int lon_idx) const {
        return population_[static_cast<std::size_t>(lat_idx) * kLonCells + lon_idx];
    }
    double total_population() const;

    /// Non-empty cells with precomputed center unit vectors.
    const std::vector<Cell>& nonzero_cells() const;

    static GeodeticCoord cell_center(int lat_idx, int lon_idx) {
        return {lat_idx - 90.0 + 0.5, lon_idx - 180.0 + 0.5, 0.0};
    }

private:
    std::vector<double> population_;
    mutable std::vector<Cell> nonzero_;
    mutable bool cache_valid_ = false;
};

/// Reads `lat_deg,lon_deg,population` CSV; rows are binned into the 1-degree
/// grid and summed. Cells absent from the file stay zero.
PopulationGrid load_population_csv(const std::string& path);

/// Synthetic population hotspot for desk-scale scenarios. Population is
/// spread over cells within three spreads of the center with Gaussian
/// falloff, scaled so the total equals `population`.
struct Hotspot {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double population = 0.0;
    double spread_deg = 5.0;
};

PopulationGrid synth_population(const std::vector<Hotspot>& hotspots);

struct TrafficParams {
    double devices_per_person = 0.003175;
    double rate_per_device_bps = 22980.0;
    std::array<double, 24> diurnal;  // per local solar hour

    TrafficParams();
};

/// Single-peak default daily profile: peak at hour 20, trough at hour 4,
/// normalized to mean exactly 1.0.
std::array<double, 24> default_diurnal_profile();

struct BufferSpec {
    double satellite_buffer_bits = 4.0e8;  // 50 MB
    double ground_buffer_bits = 8.0e9;     // 1 GB
};

/// Assigns every non-empty cell to the satellite whose sub-point is nearest
/// to the cell center by great-circle distance (ties: lowest satellite
/// index); returns summed population per satellite.
std::vector<double> assign_cells(const std::vector<EcefPosition>& sat_positions,
                                 const PopulationGrid& grid);

/// R = Pop * d * nu * diurnal[local hour].
double generation_rate_bps(double population, const TrafficParams& params, int local_hour);

}  // namespace leosim
