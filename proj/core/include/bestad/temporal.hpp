#pragma once

#include <Eigen/Core>

#include "bestad/staypoints.hpp"

namespace bestad {

// Layout of the 42-wide temporal vector:
//   [0,24)   hour-of-day one-hot
//   [24,31)  day-of-week one-hot (0 = Monday)
//   [31,35)  time-period one-hot: night [0,6), morning [6,12),
//            afternoon [12,18), evening [18,24)
//   35       weekend flag
//   36       dwell duration, normalized by 24 h and clipped at 1
//   37       season scalar: Dec-Feb 0, Mar-May 1/3, Jun-Aug 2/3, Sep-Nov 1
//   38,39    sin/cos of 2*pi*hour_frac/24 (hour_frac includes minutes)
//   40,41    sin/cos of 2*pi*dow/7
struct TemporalLayout {
    static constexpr int kHour = 0;
    static constexpr int kDayOfWeek = 24;
    static constexpr int kPeriod = 31;
    static constexpr int kWeekend = 35;
    static constexpr int kDuration = 36;
    static constexpr int kSeason = 37;
    static constexpr int kSinHour = 38;
    static constexpr int kCosHour = 39;
    static constexpr int kSinDow = 40;
    static constexpr int kCosDow = 41;
    static constexpr int kDim = 42;
};

inline constexpr int kTemporalDim = TemporalLayout::kDim;

/// Encodes a staypoint's temporal context. Local time is t_start shifted by
/// a fixed tz_offset (hours); no daylight-saving handling.
Eigen::VectorXd encode_temporal(const StayPoint& sp, double tz_offset_hours);

}  // namespace bestad
