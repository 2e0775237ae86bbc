#pragma once

#include <cmath>

namespace bestad {

inline constexpr double kEarthRadiusM = 6371008.8;
inline constexpr double kPi = 3.14159265358979323846;

struct LatLon {
    double lat = 0.0;  // degrees, WGS84
    double lon = 0.0;  // degrees, WGS84
};

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

inline bool valid_coords(double lat, double lon) {
    return std::isfinite(lat) && std::isfinite(lon) &&
           lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

/// Great-circle distance in meters.
inline double haversine_m(const LatLon& a, const LatLon& b) {
    const double phi1 = deg2rad(a.lat);
    const double phi2 = deg2rad(b.lat);
    const double dphi = phi2 - phi1;
    const double dlam = deg2rad(b.lon - a.lon);
    const double s = std::sin(dphi / 2.0);
    const double t = std::sin(dlam / 2.0);
    const double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace bestad
