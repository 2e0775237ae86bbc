#include "bestad/hexgrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bestad {

namespace {

// Average cell area at resolution 0, km^2. Each finer resolution divides the
// area by 7; resolution 10 comes out at ~0.01506 km^2.
constexpr double kRes0AreaKm2 = 4.25e6;

constexpr double kSqrt3 = 1.7320508075688772;

double size_for_resolution(int res) {
    const double area_m2 = kRes0AreaKm2 * 1e6 / std::pow(7.0, res);
    // regular hexagon: area = (3*sqrt(3)/2) * s^2
    return std::sqrt(2.0 * area_m2 / (3.0 * kSqrt3));
}

}  // namespace

HexGrid::HexGrid(int resolution) : resolution_(resolution) {
    if (resolution < 0 || resolution > 15)
        throw std::invalid_argument("HexGrid: resolution must be in [0, 15]");
    size_ = size_for_resolution(resolution);
}

double HexGrid::cell_area_m2() const { return 1.5 * kSqrt3 * size_ * size_; }

HexGrid::Planar HexGrid::to_plane(const LatLon& p) const {
    return {kEarthRadiusM * deg2rad(p.lon), kEarthRadiusM * deg2rad(p.lat)};
}

LatLon HexGrid::from_plane(double x, double y) const {
    return {rad2deg(y / kEarthRadiusM), rad2deg(x / kEarthRadiusM)};
}

std::pair<std::int32_t, std::int32_t> HexGrid::axial_of(double x, double y) const {
    // fractional axial coords, pointy-top orientation
    const double qf = (kSqrt3 / 3.0 * x - y / 3.0) / size_;
    const double rf = (2.0 / 3.0 * y) / size_;
    // cube rounding
    const double sf = -qf - rf;
    double q = std::round(qf), r = std::round(rf), s = std::round(sf);
    const double dq = std::abs(q - qf), dr = std::abs(r - rf), ds = std::abs(s - sf);
    if (dq > dr && dq > ds)
        q = -r - s;
    else if (dr > ds)
        r = -q - s;
    return {static_cast<std::int32_t>(q), static_cast<std::int32_t>(r)};
}

HexGrid::CellId HexGrid::pack(std::int32_t q, std::int32_t r) {
    const std::uint64_t uq = static_cast<std::uint32_t>(q);
    const std::uint64_t ur = static_cast<std::uint32_t>(r);
    return (uq << 32) | ur;
}

std::pair<std::int32_t, std::int32_t> HexGrid::unpack(CellId id) {
    return {static_cast<std::int32_t>(id >> 32),
            static_cast<std::int32_t>(id & 0xFFFFFFFFULL)};
}

HexGrid::CellId HexGrid::cell_of(const LatLon& p) const {
    const auto pl = to_plane(p);
    const auto [q, r] = axial_of(pl.x, pl.y);
    return pack(q, r);
}

LatLon HexGrid::center_of(CellId id) const {
    const auto [q, r] = unpack(id);
    const double x = size_ * kSqrt3 * (static_cast<double>(q) + static_cast<double>(r) / 2.0);
    const double y = size_ * 1.5 * static_cast<double>(r);
    return from_plane(x, y);
}

std::vector<HexGrid::CellId> HexGrid::disk_cells(const LatLon& center,
                                                 double radius_m) const {
    const auto pl = to_plane(center);
    // the projection compresses east-west distances by cos(lat); widen the
    // planar search box accordingly, plus one cell of margin
    const double coslat = std::max(0.05, std::cos(deg2rad(center.lat)));
    const double margin = 2.0 * size_;
    const double half_x = radius_m / coslat + margin;
    const double half_y = radius_m + margin;

    const double r_lo_f = (pl.y - half_y) * (2.0 / 3.0) / size_;
    const double r_hi_f = (pl.y + half_y) * (2.0 / 3.0) / size_;
    const auto r_lo = static_cast<std::int32_t>(std::floor(r_lo_f)) - 1;
    const auto r_hi = static_cast<std::int32_t>(std::ceil(r_hi_f)) + 1;

    std::vector<CellId> out;
    for (std::int32_t r = r_lo; r <= r_hi; ++r) {
        const double q_center_lo = ((pl.x - half_x) / (kSqrt3 * size_)) - r / 2.0;
        const double q_center_hi = ((pl.x + half_x) / (kSqrt3 * size_)) - r / 2.0;
        const auto q_lo = static_cast<std::int32_t>(std::floor(q_center_lo)) - 1;
        const auto q_hi = static_cast<std::int32_t>(std::ceil(q_center_hi)) + 1;
        for (std::int32_t q = q_lo; q <= q_hi; ++q) {
            const CellId id = pack(q, r);
            if (haversine_m(center, center_of(id)) <= radius_m) out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<HexGrid::CellId> HexGrid::polyline_cells(
    std::span<const LatLon> path) const {
    std::vector<CellId> out;
    if (path.empty()) return out;
    out.push_back(cell_of(path[0]));
    const double step = size_ / 4.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto a = to_plane(path[i]);
        const auto b = to_plane(path[i + 1]);
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        for (int k = 1; k <= n; ++k) {
            const double t = static_cast<double>(k) / n;
            const double x = a.x + t * (b.x - a.x);
            const double y = a.y + t * (b.y - a.y);
            const auto [q, r] = axial_of(x, y);
            out.push_back(pack(q, r));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<HexGrid::CellId> HexGrid::polygon_cells(
    std::span<const LatLon> ring) const {
    std::vector<CellId> out;
    if (ring.size() < 3) return out;

    double lat_lo = 90.0, lat_hi = -90.0, lon_lo = 180.0, lon_hi = -180.0;
    for (const auto& p : ring) {
        lat_lo = std::min(lat_lo, p.lat);
        lat_hi = std::max(lat_hi, p.lat);
        lon_lo = std::min(lon_lo, p.lon);
        lon_hi = std::max(lon_hi, p.lon);
    }

    auto inside = [&](const LatLon& p) {
        // even-odd ray casting in the lon/lat plane
        bool in = false;
        std::size_t n = ring.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const auto& a = ring[i];
            const auto& b = ring[j];
            if ((a.lat > p.lat) != (b.lat > p.lat)) {
                const double x =
                    (b.lon - a.lon) * (p.lat - a.lat) / (b.lat - a.lat) + a.lon;
                if (p.lon < x) in = !in;
            }
        }
        return in;
    };

    const auto lo = to_plane({lat_lo, lon_lo});
    const auto hi = to_plane({lat_hi, lon_hi});
    const double margin = 2.0 * size_;
    const auto r_lo = static_cast<std::int32_t>(std::floor((lo.y - margin) * (2.0 / 3.0) / size_)) - 1;
    const auto r_hi = static_cast<std::int32_t>(std::ceil((hi.y + margin) * (2.0 / 3.0) / size_)) + 1;
    for (std::int32_t r = r_lo; r <= r_hi; ++r) {
        const auto q_lo = static_cast<std::int32_t>(
                              std::floor((lo.x - margin) / (kSqrt3 * size_) - r / 2.0)) - 1;
        const auto q_hi = static_cast<std::int32_t>(
                              std::ceil((hi.x + margin) / (kSqrt3 * size_) - r / 2.0)) + 1;
        for (std::int32_t q = q_lo; q <= q_hi; ++q) {
            const CellId id = pack(q, r);
            if (inside(center_of(id))) out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bestad
