#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "bestad/geo.hpp"
#include "bestad/hexgrid.hpp"

namespace bestad {

enum class GeometryKind { point, polyline, polygon };

struct GeoFeature {
    GeometryKind kind = GeometryKind::point;
    std::vector<LatLon> coords;  // 1 point, polyline path, or polygon ring
    int category = 0;            // index into the configured category list
};

/// Maps raw feature properties to one of the configured categories.
/// Rules are `key=value` or `key=*` OSM tag patterns, checked in order; a
/// feature whose `category` property already names a configured category is
/// taken as-is.
struct CategoryMapping {
    std::vector<std::string> categories;
    std::vector<std::pair<std::string, std::string>> rules;  // pattern -> category

    int index_of(const std::string& category) const;
};

/// The 13 default feature categories. The working list is configuration; this
/// is only the default.
const std::vector<std::string>& default_categories();
CategoryMapping default_category_mapping();

/// Loads a category mapping from its JSON config form:
/// {"categories": [...], "rules": [{"match": "building=*", "category": "building"}]}
CategoryMapping load_category_mapping(std::istream& in);

struct SkippedFeature {
    std::size_t index = 0;  // position in the input collection
    std::string reason;
};

struct GeoJsonLoadResult {
    std::vector<GeoFeature> features;
    std::vector<SkippedFeature> skipped;
};

/// Parses a GeoJSON FeatureCollection. Supported geometries: Point,
/// LineString, Polygon (outer ring), and their Multi* variants. Features that
/// fail category mapping or carry invalid geometry are skipped and reported.
GeoJsonLoadResult load_geojson_features(std::istream& in, const CategoryMapping& mapping);

/// Hexagonal-cell -> per-category count index. Absent cells are implicitly
/// all-zero.
class SpatialFeatureIndex {
public:
    SpatialFeatureIndex(int resolution, int num_categories);

    int resolution() const { return grid_.resolution(); }
    int num_categories() const { return num_categories_; }
    const HexGrid& grid() const { return grid_; }
    std::size_t num_cells() const { return counts_.size(); }

    const std::vector<std::uint32_t>* cell_counts(HexGrid::CellId id) const;
    void add(HexGrid::CellId id, int category, std::uint32_t amount = 1);

    /// Cell-wise sum; other must share resolution and category count.
    void merge(const SpatialFeatureIndex& other);

    const std::unordered_map<HexGrid::CellId, std::vector<std::uint32_t>>& cells() const {
        return counts_;
    }

    void save(std::ostream& os) const;
    static SpatialFeatureIndex load(std::istream& is);

private:
    HexGrid grid_;
    int num_categories_;
    std::unordered_map<HexGrid::CellId, std::vector<std::uint32_t>> counts_;
};

/// Builds the index: points increment their containing cell, polylines every
/// traversed cell, polygons every cell whose center lies inside; one count
/// per cell per feature. Invalid features are skipped and reported.
SpatialFeatureIndex build_index(const std::vector<GeoFeature>& features,
                                int resolution, int num_categories,
                                std::vector<SkippedFeature>* skipped = nullptr);

/// Per-radius cumulative category counts around a staypoint. Row i holds the
/// counts of all indexed cells whose center lies within radii[i] meters, so
/// rows are monotone non-decreasing in the radius.
struct BufferCountMatrix {
    std::vector<double> radii_m;
    Eigen::MatrixXd values;  // radii.size() x num_categories
};

/// radii must be non-empty and strictly increasing (error otherwise). A
/// staypoint outside the indexed region yields a zero matrix.
BufferCountMatrix buffer_counts(const SpatialFeatureIndex& index, double lat,
                                double lon, const std::vector<double>& radii_m);

/// Flattens row-major and applies log(1+x); length = radii * categories
/// (39 with the defaults).
Eigen::VectorXd normalize_spatial(const BufferCountMatrix& matrix);

}  // namespace bestad
