#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bestad/spatial.hpp"
#include "bestad/staypoints.hpp"

namespace bestad {

/// Per-trip input tensors for the cluster model: one row per staypoint.
struct TripFeatures {
    std::string individual_id;
    int trip_id = 0;
    std::int64_t t_start = 0;
    bool test_period = false;
    Eigen::MatrixXd temporal;  // length x 42
    Eigen::MatrixXd spatial;   // length x (radii * categories), log1p-normalized

    int length() const { return static_cast<int>(temporal.rows()); }
};

/// Encodes every staypoint of every trip (temporal encoding + multi-radius
/// buffer counts). Trips are tagged test_period by first-staypoint t_start
/// against `boundary`. Order of the output matches the input trip order;
/// computation is parallel across trips.
std::vector<TripFeatures> build_trip_features(const std::vector<Trip>& trips,
                                              const SpatialFeatureIndex& index,
                                              const std::vector<double>& radii_m,
                                              double tz_offset_hours,
                                              std::int64_t boundary);

void save_features(std::ostream& os, const std::vector<TripFeatures>& feats);
std::vector<TripFeatures> load_features(std::istream& is);

}  // namespace bestad
