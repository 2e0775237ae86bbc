#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bestad {

/// One dwell observation: an individual at (lat, lon) during [t_start, t_end].
/// Timestamps are UTC epoch seconds.
struct StayPoint {
    std::string individual_id;
    double lat = 0.0;
    double lon = 0.0;
    std::int64_t t_start = 0;
    std::int64_t t_end = 0;
};

/// A maximal time-contiguous run of staypoints for one individual.
struct Trip {
    std::string individual_id;
    int trip_id = 0;  // sequence number within the individual
    std::vector<StayPoint> staypoints;

    std::int64_t start_time() const { return staypoints.front().t_start; }
};

struct PeriodSplit {
    std::int64_t boundary = 0;
    std::vector<Trip> train_trips;
    std::vector<Trip> test_trips;
};

struct RejectedRow {
    std::size_t line = 0;  // 1-based line number in the input
    std::string reason;
};

struct IngestResult {
    // per-individual staypoints, each list sorted by t_start
    std::map<std::string, std::vector<StayPoint>> by_individual;
    std::vector<RejectedRow> rejected;
    std::size_t rows_accepted = 0;
};

/// Parses an ISO-8601 timestamp ("2024-01-05T08:30:00", optional fractional
/// seconds, optional 'Z' or +hh:mm offset, 'T' or ' ' separator) or a plain
/// integer epoch-seconds value. Returns nullopt on malformed input.
std::optional<std::int64_t> parse_timestamp(const std::string& text);

/// Reads delimited text with header `individual_id,lat,lon,t_start,t_end`.
/// Malformed rows are rejected with their line number; empty input yields an
/// empty result.
IngestResult ingest_staypoints(std::istream& in, char delimiter = ',');

/// Writes the rejection report as `line,reason` rows.
void write_rejection_report(std::ostream& out, const std::vector<RejectedRow>& rows);

struct SegmentationStats {
    std::size_t overlaps_dropped = 0;   // later point of an overlapping pair
    std::size_t segments_discarded = 0; // shorter than min_trip_length
};

/// Splits one individual's time-sorted staypoints into trips. A gap
/// (t_start[i+1] - t_end[i]) strictly greater than gap_threshold_s starts a
/// new segment; a gap exactly equal to the threshold does not. Segments
/// shorter than min_trip_length are discarded. Overlapping staypoints are
/// resolved by dropping the later one.
std::vector<Trip> segment_trips(const std::vector<StayPoint>& staypoints,
                                double gap_threshold_s = 1800.0,
                                int min_trip_length = 4,
                                SegmentationStats* stats = nullptr);

/// Assigns each trip by the t_start of its first staypoint:
/// < boundary -> train, >= boundary -> test.
PeriodSplit split_periods(std::vector<Trip> trips, std::int64_t boundary);

// Trip artifact persistence (versioned binary).
void save_trips(std::ostream& os, const std::vector<Trip>& trips);
std::vector<Trip> load_trips(std::istream& is);

}  // namespace bestad
