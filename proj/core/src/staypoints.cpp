#include "bestad/staypoints.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "bestad/binio.hpp"
#include "bestad/geo.hpp"

namespace bestad {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::optional<double> parse_double(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    const auto* end = t.data() + t.size();
    auto [p, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc{} || p != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool all_digits(const std::string& s, std::size_t from = 0) {
    if (from >= s.size()) return false;
    for (std::size_t i = from; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

std::optional<std::int64_t> parse_timestamp(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;

    // plain epoch seconds (optionally signed)
    if (all_digits(t) || (t[0] == '-' && all_digits(t, 1))) {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec == std::errc{} && p == t.data() + t.size()) return v;
        return std::nullopt;
    }

    // ISO-8601: YYYY-MM-DD[T ]hh:mm:ss[.frac][Z|+hh:mm|-hh:mm]
    int y, mo, d, h, mi, se;
    if (t.size() < 19) return std::nullopt;
    auto num = [&](std::size_t pos, std::size_t len, int& out) {
        auto [p, ec] = std::from_chars(t.data() + pos, t.data() + pos + len, out);
        return ec == std::errc{} && p == t.data() + pos + len;
    };
    if (!num(0, 4, y) || t[4] != '-' || !num(5, 2, mo) || t[7] != '-' ||
        !num(8, 2, d))
        return std::nullopt;
    if (t[10] != 'T' && t[10] != ' ') return std::nullopt;
    if (!num(11, 2, h) || t[13] != ':' || !num(14, 2, mi) || t[16] != ':' ||
        !num(17, 2, se))
        return std::nullopt;

    std::size_t pos = 19;
    if (pos < t.size() && t[pos] == '.') {  // fractional seconds: ignored
        ++pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    }
    int offset_s = 0;
    if (pos < t.size()) {
        if (t[pos] == 'Z' && pos + 1 == t.size()) {
            // UTC marker
        } else if ((t[pos] == '+' || t[pos] == '-') && pos + 6 == t.size() &&
                   t[pos + 3] == ':') {
            int oh, om;
            if (!num(pos + 1, 2, oh) || !num(pos + 4, 2, om)) return std::nullopt;
            offset_s = (oh * 3600 + om * 60) * (t[pos] == '+' ? 1 : -1);
        } else {
            return std::nullopt;
        }
    }

    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60)
        return std::nullopt;

    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                             day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::int64_t>(days) * 86400 + h * 3600 + mi * 60 + se -
           offset_s;
}

IngestResult ingest_staypoints(std::istream& in, char delimiter) {
    IngestResult res;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            // first non-empty line is the header
            continue;
        }
        const auto f = split_line(line, delimiter);
        if (f.size() != 5) {
            res.rejected.push_back({lineno, "expected 5 fields, got " +
                                                std::to_string(f.size())});
            continue;
        }
        const std::string id = trim(f[0]);
        if (id.empty()) {
            res.rejected.push_back({lineno, "empty individual_id"});
            continue;
        }
        const auto lat = parse_double(f[1]);
        const auto lon = parse_double(f[2]);
        if (!lat || !lon || !valid_coords(*lat, *lon)) {
            res.rejected.push_back({lineno, "invalid coordinates"});
            continue;
        }
        const auto ts = parse_timestamp(f[3]);
        const auto te = parse_timestamp(f[4]);
        if (!ts || !te) {
            res.rejected.push_back({lineno, "unparseable timestamp"});
            continue;
        }
        if (*te < *ts) {
            res.rejected.push_back({lineno, "t_end before t_start"});
            continue;
        }
        res.by_individual[id].push_back({id, *lat, *lon, *ts, *te});
        ++res.rows_accepted;
    }
    for (auto& [id, pts] : res.by_individual) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const StayPoint& a, const StayPoint& b) {
                             return a.t_start < b.t_start;
                         });
    }
    return res;
}

void write_rejection_report(std::ostream& out, const std::vector<RejectedRow>& rows) {
    out << "line,reason\n";
    for (const auto& r : rows) out << r.line << "," << r.reason << "\n";
}

std::vector<Trip> segment_trips(const std::vector<StayPoint>& staypoints,
                                double gap_threshold_s, int min_trip_length,
                                SegmentationStats* stats) {
    SegmentationStats local;
    std::vector<Trip> trips;
    std::vector<StayPoint> segment;
    int next_trip_id = 0;

    auto flush = [&] {
        if (static_cast<int>(segment.size()) >= min_trip_length) {
            Trip t;
            t.individual_id = segment.front().individual_id;
            t.trip_id = next_trip_id++;
            t.staypoints = std::move(segment);
            trips.push_back(std::move(t));
        } else if (!segment.empty()) {
            ++local.segments_discarded;
        }
        segment.clear();
    };

    for (const auto& sp : staypoints) {
        if (segment.empty()) {
            segment.push_back(sp);
            continue;
        }
        const auto& prev = segment.back();
        const double gap = static_cast<double>(sp.t_start - prev.t_end);
        if (gap < 0.0) {
            // overlapping pair: drop the later point
            ++local.overlaps_dropped;
            continue;
        }
        if (gap > gap_threshold_s) {
            flush();
        }
        segment.push_back(sp);
    }
    flush();

    if (stats) *stats = local;
    return trips;
}

PeriodSplit split_periods(std::vector<Trip> trips, std::int64_t boundary) {
    PeriodSplit out;
    out.boundary = boundary;
    for (auto& t : trips) {
        if (t.start_time() < boundary)
            out.train_trips.push_back(std::move(t));
        else
            out.test_trips.push_back(std::move(t));
    }
    return out;
}

namespace {
constexpr char kTripsMagic[] = "BSTTRIP1";
}

void save_trips(std::ostream& os, const std::vector<Trip>& trips) {
    os.write(kTripsMagic, 8);
    binio::put_u32(os, 1);  // version
    binio::put_u64(os, trips.size());
    for (const auto& t : trips) {
        binio::put_str(os, t.individual_id);
        binio::put_u32(os, static_cast<std::uint32_t>(t.trip_id));
        binio::put_u64(os, t.staypoints.size());
        for (const auto& sp : t.staypoints) {
            binio::put_f64(os, sp.lat);
            binio::put_f64(os, sp.lon);
            binio::put_i64(os, sp.t_start);
            binio::put_i64(os, sp.t_end);
        }
    }
}

std::vector<Trip> load_trips(std::istream& is) {
    binio::expect_magic(is, kTripsMagic, "trips file");
    const auto version = binio::get_u32(is);
    if (version != 1) throw std::runtime_error("trips file: unsupported version");
    const auto n = binio::get_u64(is);
    std::vector<Trip> trips;
    trips.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Trip t;
        t.individual_id = binio::get_str(is);
        t.trip_id = static_cast<int>(binio::get_u32(is));
        const auto m = binio::get_u64(is);
        t.staypoints.reserve(m);
        for (std::uint64_t j = 0; j < m; ++j) {
            StayPoint sp;
            sp.individual_id = t.individual_id;
            sp.lat = binio::get_f64(is);
            sp.lon = binio::get_f64(is);
            sp.t_start = binio::get_i64(is);
            sp.t_end = binio::get_i64(is);
            t.staypoints.push_back(std::move(sp));
        }
        trips.push_back(std::move(t));
    }
    return trips;
}

}  // namespace bestad
