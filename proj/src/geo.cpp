#include "leosim/geo.hpp"

namespace leosim {

double normalize_longitude_deg(double lon_deg) {
    double lon = std::fmod(lon_deg + 180.0, 360.0);
    if (lon < 0.0) lon += 360.0;
    return lon - 180.0;
}

EcefPosition geodetic_to_ecef(const GeodeticCoord& g, double earth_radius_m) {
    double r = earth_radius_m + g.altitude_m;
    double lat = deg2rad(g.latitude_deg);
    double lon = deg2rad(g.longitude_deg);
    return {r * std::cos(lat) * std::cos(lon),
            r * std::cos(lat) * std::sin(lon),
            r * std::sin(lat)};
}

double distance_m(const EcefPosition& a, const EcefPosition& b) {
    double dx = a.x_m - b.x_m;
    double dy = a.y_m - b.y_m;
    double dz = a.z_m - b.z_m;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double elevation_angle_deg(const EcefPosition& ground, const EcefPosition& sat) {
    // elevation = atan2(<up, los>, |up x los|) with `up` the outward radial
    // at the ground point; the atan2 form stays well conditioned at zenith.
    double gn = ground.norm();
    EcefPosition los{sat.x_m - ground.x_m, sat.y_m - ground.y_m, sat.z_m - ground.z_m};
    double ln = los.norm();
    if (gn == 0.0 || ln == 0.0) return 90.0;  // degenerate: treat as zenith
    double dot = ground.x_m * los.x_m + ground.y_m * los.y_m + ground.z_m * los.z_m;
    double cx = ground.y_m * los.z_m - ground.z_m * los.y_m;
    double cy = ground.z_m * los.x_m - ground.x_m * los.z_m;
    double cz = ground.x_m * los.y_m - ground.y_m * los.x_m;
    double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    return rad2deg(std::atan2(dot, cross));
}

int local_solar_hour(double longitude_deg, double utc_s) {
    double hours = utc_s / 3600.0 + longitude_deg / 15.0;
    double wrapped = std::fmod(hours, 24.0);
    if (wrapped < 0.0) wrapped += 24.0;
    int h = static_cast<int>(std::floor(wrapped));
    return h == 24 ? 0 : h;  // guard the fmod boundary
}

GeodeticCoord subsatellite_point(const EcefPosition& sat) {
    double n = sat.norm();
    GeodeticCoord g;
    if (n == 0.0) return g;
    g.latitude_deg = rad2deg(std::asin(sat.z_m / n));
    g.longitude_deg = normalize_longitude_deg(rad2deg(std::atan2(sat.y_m, sat.x_m)));
    g.altitude_m = 0.0;
    return g;
}

}  // namespace leosim
