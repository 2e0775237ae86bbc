#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bestad/geo.hpp"

namespace bestad {

/// Hexagonal spatial grid for cell-level feature aggregation.
///
/// Cells are pointy-top hexagons in an equirectangular plane
/// (x = R*lon_rad, y = R*lat_rad, equatorial meters) addressed by axial
/// coordinates (q, r) packed into a 64-bit id. The average cell area at
/// resolution k matches the hierarchical-hex convention of dividing by 7 per
/// level, so resolution 10 cells cover ~0.015 km^2. Cell identity is a fixed
/// global function of position; all distance tests against cell centers use
/// great-circle distance, so east-west distortion of the projection only
/// perturbs cell shape, not query correctness.
class HexGrid {
public:
    using CellId = std::uint64_t;

    /// resolution must be in [0, 15].
    explicit HexGrid(int resolution);

    int resolution() const { return resolution_; }
    /// Cell circumradius (center to vertex) in equatorial meters.
    double cell_size_m() const { return size_; }
    double cell_area_m2() const;

    CellId cell_of(const LatLon& p) const;
    LatLon center_of(CellId id) const;

    /// Cells whose center lies within great-circle distance radius_m of
    /// `center`. Sorted by cell id.
    std::vector<CellId> disk_cells(const LatLon& center, double radius_m) const;

    /// Cells traversed by the path (dense sampling along segments).
    /// Sorted, deduplicated.
    std::vector<CellId> polyline_cells(std::span<const LatLon> path) const;

    /// Cells whose center lies inside the polygon ring (even-odd rule in the
    /// lat/lon plane). The ring need not be explicitly closed. Sorted.
    std::vector<CellId> polygon_cells(std::span<const LatLon> ring) const;

    static CellId pack(std::int32_t q, std::int32_t r);
    static std::pair<std::int32_t, std::int32_t> unpack(CellId id);

private:
    struct Planar {
        double x, y;
    };
    Planar to_plane(const LatLon& p) const;
    LatLon from_plane(double x, double y) const;
    std::pair<std::int32_t, std::int32_t> axial_of(double x, double y) const;

    int resolution_;
    double size_;  // circumradius in equatorial meters
};

}  // namespace bestad
