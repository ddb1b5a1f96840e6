#pragma once

#include <cmath>

namespace leosim {

namespace constants {
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kEarthMuM3S2 = 3.986004418e14;      // GM
inline constexpr double kEarthRotationRadS = 7.2921159e-5;
inline constexpr double kSpeedOfLightMps = 2.99792458e8;
inline constexpr double kBoltzmannJPerK = 1.380649e-23;
}  // namespace constants

inline double deg2rad(double deg) { return deg * constants::kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / constants::kPi; }

/// Wraps a longitude into [-180, 180).
double normalize_longitude_deg(double lon_deg);

/// Geodetic coordinate on the (spherical) Earth model.
struct GeodeticCoord {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180)
    double altitude_m = 0.0;     // >= 0
};

/// Earth-centered Earth-fixed position, meters.
struct EcefPosition {
    double x_m = 0.0;
    double y_m = 0.0;
    double z_m = 0.0;

    double norm() const { return std::sqrt(x_m * x_m + y_m * y_m + z_m * z_m); }
};

/// Spherical-Earth geodetic -> ECEF conversion.
EcefPosition geodetic_to_ecef(const GeodeticCoord& g,
                              double earth_radius_m = constants::kEarthRadiusM);

/// Euclidean distance between two ECEF positions, meters.
double distance_m(const EcefPosition& a, const EcefPosition& b);

/// Elevation of `sat` above the local horizon plane at `ground`, degrees
/// in [-90, 90]. 90 means the satellite is on the outward radial.
double elevation_angle_deg(const EcefPosition& ground, const EcefPosition& sat);

/// Local solar hour index 0..23: floor((UTC hour + longitude/15) mod 24).
int local_solar_hour(double longitude_deg, double utc_s);

/// Sub-satellite point (altitude set to 0) on the spherical Earth.
GeodeticCoord subsatellite_point(const EcefPosition& sat);

}  // namespace leosim
