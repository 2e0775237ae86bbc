#include "bestad/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bestad/binio.hpp"

namespace bestad {

using nlohmann::json;

const std::vector<std::string>& default_categories() {
    static const std::vector<std::string> cats = {
        "building",        "landuse_residential", "landuse_commercial",
        "landuse_industrial", "road_major",        "road_minor",
        "rail",            "water",               "park_green",
        "poi_food",        "poi_shop",            "poi_education_health",
        "natural_area",
    };
    return cats;
}

int CategoryMapping::index_of(const std::string& category) const {
    for (std::size_t i = 0; i < categories.size(); ++i)
        if (categories[i] == category) return static_cast<int>(i);
    return -1;
}

CategoryMapping default_category_mapping() {
    CategoryMapping m;
    m.categories = default_categories();
    m.rules = {
        {"building=*", "building"},
        {"landuse=residential", "landuse_residential"},
        {"landuse=commercial", "landuse_commercial"},
        {"landuse=retail", "landuse_commercial"},
        {"landuse=industrial", "landuse_industrial"},
        {"highway=motorway", "road_major"},
        {"highway=trunk", "road_major"},
        {"highway=primary", "road_major"},
        {"highway=secondary", "road_major"},
        {"highway=*", "road_minor"},
        {"railway=*", "rail"},
        {"natural=water", "water"},
        {"waterway=*", "water"},
        {"leisure=park", "park_green"},
        {"landuse=grass", "park_green"},
        {"amenity=restaurant", "poi_food"},
        {"amenity=cafe", "poi_food"},
        {"amenity=fast_food", "poi_food"},
        {"amenity=bar", "poi_food"},
        {"shop=*", "poi_shop"},
        {"amenity=school", "poi_education_health"},
        {"amenity=university", "poi_education_health"},
        {"amenity=hospital", "poi_education_health"},
        {"amenity=clinic", "poi_education_health"},
        {"natural=*", "natural_area"},
    };
    return m;
}

CategoryMapping load_category_mapping(std::istream& in) {
    json j;
    in >> j;
    CategoryMapping m;
    if (j.contains("categories")) {
        for (const auto& c : j.at("categories")) m.categories.push_back(c.get<std::string>());
    } else {
        m.categories = default_categories();
    }
    if (m.categories.empty())
        throw std::runtime_error("category mapping: empty category list");
    for (const auto& r : j.value("rules", json::array())) {
        m.rules.emplace_back(r.at("match").get<std::string>(),
                             r.at("category").get<std::string>());
    }
    for (const auto& [pat, cat] : m.rules) {
        if (m.index_of(cat) < 0)
            throw std::runtime_error("category mapping: rule '" + pat +
                                     "' targets unknown category '" + cat + "'");
    }
    return m;
}

namespace {

std::string json_scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number()) return std::to_string(v.get<double>());
    return {};
}

int map_category(const json& props, const CategoryMapping& mapping) {
    if (props.contains("category")) {
        const int idx = mapping.index_of(json_scalar_to_string(props.at("category")));
        if (idx >= 0) return idx;
    }
    for (const auto& [pattern, cat] : mapping.rules) {
        const auto eq = pattern.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = pattern.substr(0, eq);
        const std::string val = pattern.substr(eq + 1);
        if (!props.contains(key)) continue;
        if (val == "*" || json_scalar_to_string(props.at(key)) == val)
            return mapping.index_of(cat);
    }
    return -1;
}

bool read_position(const json& pos, LatLon& out) {
    if (!pos.is_array() || pos.size() < 2) return false;
    // GeoJSON order is [lon, lat]
    const double lon = pos[0].get<double>();
    const double lat = pos[1].get<double>();
    if (!valid_coords(lat, lon)) return false;
    out = {lat, lon};
    return true;
}

bool read_ring(const json& ring, std::vector<LatLon>& out) {
    if (!ring.is_array() || ring.size() < 3) return false;
    out.clear();
    for (const auto& pos : ring) {
        LatLon p;
        if (!read_position(pos, p)) return false;
        out.push_back(p);
    }
    return true;
}

}  // namespace

GeoJsonLoadResult load_geojson_features(std::istream& in,
                                        const CategoryMapping& mapping) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("geojson: parse error: ") + e.what());
    }
    if (!j.is_object() || j.value("type", "") != "FeatureCollection" ||
        !j.contains("features"))
        throw std::runtime_error("geojson: expected a FeatureCollection");

    GeoJsonLoadResult res;
    std::size_t idx = 0;
    for (const auto& f : j.at("features")) {
        const std::size_t i = idx++;
        auto skip = [&](const std::string& why) { res.skipped.push_back({i, why}); };
        if (!f.is_object() || !f.contains("geometry") || f.at("geometry").is_null()) {
            skip("missing geometry");
            continue;
        }
        const json props = f.value("properties", json::object());
        const int category = map_category(props, mapping);
        if (category < 0) {
            skip("no category mapping matched");
            continue;
        }
        const json& g = f.at("geometry");
        const std::string type = g.value("type", "");
        const json coords = g.value("coordinates", json::array());

        auto emit_point = [&](const json& pos) {
            LatLon p;
            if (!read_position(pos, p)) return false;
            res.features.push_back({GeometryKind::point, {p}, category});
            return true;
        };
        auto emit_line = [&](const json& line) {
            std::vector<LatLon> path;
            if (!line.is_array() || line.size() < 2) return false;
            for (const auto& pos : line) {
                LatLon p;
                if (!read_position(pos, p)) return false;
                path.push_back(p);
            }
            res.features.push_back({GeometryKind::polyline, std::move(path), category});
            return true;
        };
        auto emit_polygon = [&](const json& rings) {
            // outer ring only; holes are out of scope
            std::vector<LatLon> ring;
            if (!rings.is_array() || rings.empty() || !read_ring(rings[0], ring))
                return false;
            res.features.push_back({GeometryKind::polygon, std::move(ring), category});
            return true;
        };

        bool ok = false;
        if (type == "Point") {
            ok = emit_point(coords);
        } else if (type == "MultiPoint") {
            ok = coords.is_array() && !coords.empty();
            for (const auto& pos : coords) ok = ok && emit_point(pos);
        } else if (type == "LineString") {
            ok = emit_line(coords);
        } else if (type == "MultiLineString") {
            ok = coords.is_array() && !coords.empty();
            for (const auto& line : coords) ok = ok && emit_line(line);
        } else if (type == "Polygon") {
            ok = emit_polygon(coords);
        } else if (type == "MultiPolygon") {
            ok = coords.is_array() && !coords.empty();
            for (const auto& poly : coords) ok = ok && emit_polygon(poly);
        } else {
            skip("unsupported geometry type: " + type);
            continue;
        }
        if (!ok) skip("invalid geometry coordinates");
    }
    return res;
}

SpatialFeatureIndex::SpatialFeatureIndex(int resolution, int num_categories)
    : grid_(resolution), num_categories_(num_categories) {
    if (num_categories <= 0)
        throw std::invalid_argument("SpatialFeatureIndex: num_categories must be > 0");
}

const std::vector<std::uint32_t>* SpatialFeatureIndex::cell_counts(
    HexGrid::CellId id) const {
    const auto it = counts_.find(id);
    return it == counts_.end() ? nullptr : &it->second;
}

void SpatialFeatureIndex::add(HexGrid::CellId id, int category, std::uint32_t amount) {
    if (category < 0 || category >= num_categories_)
        throw std::out_of_range("SpatialFeatureIndex::add: category out of range");
    auto& vec = counts_[id];
    if (vec.empty()) vec.assign(num_categories_, 0);
    vec[category] += amount;
}

void SpatialFeatureIndex::merge(const SpatialFeatureIndex& other) {
    if (other.resolution() != resolution() ||
        other.num_categories_ != num_categories_)
        throw std::invalid_argument("SpatialFeatureIndex::merge: shape mismatch");
    for (const auto& [id, vec] : other.counts_) {
        auto& dst = counts_[id];
        if (dst.empty()) dst.assign(num_categories_, 0);
        for (int c = 0; c < num_categories_; ++c) dst[c] += vec[c];
    }
}

namespace {
constexpr char kIndexMagic[] = "BSTIDX01";
}

void SpatialFeatureIndex::save(std::ostream& os) const {
    os.write(kIndexMagic, 8);
    binio::put_u32(os, 1);
    binio::put_u32(os, static_cast<std::uint32_t>(resolution()));
    binio::put_u32(os, static_cast<std::uint32_t>(num_categories_));
    std::vector<HexGrid::CellId> ids;
    ids.reserve(counts_.size());
    for (const auto& [id, _] : counts_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    binio::put_u64(os, ids.size());
    for (const auto id : ids) {
        binio::put_u64(os, id);
        for (const auto c : counts_.at(id)) binio::put_u32(os, c);
    }
}

SpatialFeatureIndex SpatialFeatureIndex::load(std::istream& is) {
    binio::expect_magic(is, kIndexMagic, "index file");
    const auto version = binio::get_u32(is);
    if (version != 1) throw std::runtime_error("index file: unsupported version");
    const int resolution = static_cast<int>(binio::get_u32(is));
    const int ncat = static_cast<int>(binio::get_u32(is));
    SpatialFeatureIndex idx(resolution, ncat);
    const auto n = binio::get_u64(is);
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto id = binio::get_u64(is);
        auto& vec = idx.counts_[id];
        vec.assign(ncat, 0);
        for (int c = 0; c < ncat; ++c) vec[c] = binio::get_u32(is);
    }
    return idx;
}

SpatialFeatureIndex build_index(const std::vector<GeoFeature>& features,
                                int resolution, int num_categories,
                                std::vector<SkippedFeature>* skipped) {
    SpatialFeatureIndex index(resolution, num_categories);
    std::size_t i = 0;
    for (const auto& f : features) {
        const std::size_t at = i++;
        auto skip = [&](const std::string& why) {
            if (skipped) skipped->push_back({at, why});
        };
        if (f.category < 0 || f.category >= num_categories) {
            skip("category out of range");
            continue;
        }
        if (f.coords.empty()) {
            skip("empty geometry");
            continue;
        }
        bool coords_ok = true;
        for (const auto& p : f.coords)
            coords_ok = coords_ok && valid_coords(p.lat, p.lon);
        if (!coords_ok) {
            skip("invalid coordinates");
            continue;
        }
        switch (f.kind) {
            case GeometryKind::point:
                index.add(index.grid().cell_of(f.coords[0]), f.category);
                break;
            case GeometryKind::polyline: {
                if (f.coords.size() < 2) {
                    skip("polyline needs >= 2 points");
                    continue;
                }
                for (const auto id : index.grid().polyline_cells(f.coords))
                    index.add(id, f.category);
                break;
            }
            case GeometryKind::polygon: {
                if (f.coords.size() < 3) {
                    skip("polygon needs >= 3 points");
                    continue;
                }
                for (const auto id : index.grid().polygon_cells(f.coords))
                    index.add(id, f.category);
                break;
            }
        }
    }
    return index;
}

BufferCountMatrix buffer_counts(const SpatialFeatureIndex& index, double lat,
                                double lon, const std::vector<double>& radii_m) {
    if (radii_m.empty())
        throw std::invalid_argument("buffer_counts: radii list must be non-empty");
    for (std::size_t i = 0; i + 1 < radii_m.size(); ++i)
        if (!(radii_m[i] < radii_m[i + 1]))
            throw std::invalid_argument("buffer_counts: radii must be strictly increasing");

    const int rows = static_cast<int>(radii_m.size());
    const int cols = index.num_categories();
    BufferCountMatrix out;
    out.radii_m = radii_m;
    out.values = Eigen::MatrixXd::Zero(rows, cols);

    const LatLon sp{lat, lon};
    for (const auto id : index.grid().disk_cells(sp, radii_m.back())) {
        const auto* counts = index.cell_counts(id);
        if (!counts) continue;
        const double d = haversine_m(sp, index.grid().center_of(id));
        for (int r = 0; r < rows; ++r) {
            if (d <= radii_m[r]) {
                for (int c = 0; c < cols; ++c)
                    out.values(r, c) += static_cast<double>((*counts)[c]);
            }
        }
    }
    return out;
}

Eigen::VectorXd normalize_spatial(const BufferCountMatrix& matrix) {
    const int rows = static_cast<int>(matrix.values.rows());
    const int cols = static_cast<int>(matrix.values.cols());
    Eigen::VectorXd v(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            v[r * cols + c] = std::log1p(matrix.values(r, c));
    return v;
}

}  // namespace bestad
