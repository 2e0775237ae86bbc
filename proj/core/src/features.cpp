#include "bestad/features.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "bestad/binio.hpp"
#include "bestad/parallel.hpp"
#include "bestad/temporal.hpp"

namespace bestad {

std::vector<TripFeatures> build_trip_features(const std::vector<Trip>& trips,
                                              const SpatialFeatureIndex& index,
                                              const std::vector<double>& radii_m,
                                              double tz_offset_hours,
                                              std::int64_t boundary) {
    std::vector<TripFeatures> out(trips.size());
    const int spatial_dim = static_cast<int>(radii_m.size()) * index.num_categories();
    parallel_for(trips.size(), [&](std::size_t i) {
        const Trip& trip = trips[i];
        TripFeatures tf;
        tf.individual_id = trip.individual_id;
        tf.trip_id = trip.trip_id;
        tf.t_start = trip.start_time();
        tf.test_period = tf.t_start >= boundary;
        const int len = static_cast<int>(trip.staypoints.size());
        tf.temporal.resize(len, kTemporalDim);
        tf.spatial.resize(len, spatial_dim);
        for (int s = 0; s < len; ++s) {
            const StayPoint& sp = trip.staypoints[s];
            tf.temporal.row(s) = encode_temporal(sp, tz_offset_hours).transpose();
            const auto counts = buffer_counts(index, sp.lat, sp.lon, radii_m);
            tf.spatial.row(s) = normalize_spatial(counts).transpose();
        }
        out[i] = std::move(tf);
    });
    return out;
}

namespace {
constexpr char kFeaturesMagic[] = "BSTFEAT1";

void put_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) binio::put_f64(os, m(r, c));
}

void get_matrix(std::istream& is, Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = binio::get_f64(is);
}
}  // namespace

void save_features(std::ostream& os, const std::vector<TripFeatures>& feats) {
    os.write(kFeaturesMagic, 8);
    binio::put_u32(os, 1);
    const std::uint32_t dt = feats.empty() ? kTemporalDim
                                           : static_cast<std::uint32_t>(feats[0].temporal.cols());
    const std::uint32_t ds = feats.empty() ? 0
                                           : static_cast<std::uint32_t>(feats[0].spatial.cols());
    binio::put_u32(os, dt);
    binio::put_u32(os, ds);
    binio::put_u64(os, feats.size());
    for (const auto& f : feats) {
        binio::put_str(os, f.individual_id);
        binio::put_u32(os, static_cast<std::uint32_t>(f.trip_id));
        binio::put_i64(os, f.t_start);
        binio::put_u32(os, f.test_period ? 1 : 0);
        binio::put_u64(os, static_cast<std::uint64_t>(f.temporal.rows()));
        put_matrix(os, f.temporal);
        put_matrix(os, f.spatial);
    }
}

std::vector<TripFeatures> load_features(std::istream& is) {
    binio::expect_magic(is, kFeaturesMagic, "features file");
    const auto version = binio::get_u32(is);
    if (version != 1) throw std::runtime_error("features file: unsupported version");
    const int dt = static_cast<int>(binio::get_u32(is));
    const int ds = static_cast<int>(binio::get_u32(is));
    const auto n = binio::get_u64(is);
    std::vector<TripFeatures> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        TripFeatures f;
        f.individual_id = binio::get_str(is);
        f.trip_id = static_cast<int>(binio::get_u32(is));
        f.t_start = binio::get_i64(is);
        f.test_period = binio::get_u32(is) != 0;
        const auto len = static_cast<Eigen::Index>(binio::get_u64(is));
        f.temporal.resize(len, dt);
        f.spatial.resize(len, ds);
        get_matrix(is, f.temporal);
        get_matrix(is, f.spatial);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace bestad
