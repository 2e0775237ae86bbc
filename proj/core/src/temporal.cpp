#include "bestad/temporal.hpp"

#include <chrono>
#include <cmath>

#include "bestad/geo.hpp"

namespace bestad {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    return a - floor_div(a, b) * b;
}

}  // namespace

Eigen::VectorXd encode_temporal(const StayPoint& sp, double tz_offset_hours) {
    using L = TemporalLayout;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(L::kDim);

    const std::int64_t local =
        sp.t_start + static_cast<std::int64_t>(std::llround(tz_offset_hours * 3600.0));
    const std::int64_t sec_of_day = floor_mod(local, 86400);
    const std::int64_t epoch_day = floor_div(local, 86400);

    const double hour_frac = static_cast<double>(sec_of_day) / 3600.0;
    const int hour = static_cast<int>(sec_of_day / 3600);
    // epoch day 0 (1970-01-01) is a Thursday; Monday = 0
    const int dow = static_cast<int>(floor_mod(epoch_day + 3, 7));

    v[L::kHour + hour] = 1.0;
    v[L::kDayOfWeek + dow] = 1.0;
    v[L::kPeriod + hour / 6] = 1.0;
    v[L::kWeekend] = (dow >= 5) ? 1.0 : 0.0;

    const double duration_s = static_cast<double>(sp.t_end - sp.t_start);
    v[L::kDuration] = std::min(duration_s / 86400.0, 1.0);

    using namespace std::chrono;
    const year_month_day ymd{sys_days{std::chrono::days{epoch_day}}};
    const unsigned month = static_cast<unsigned>(ymd.month());
    // meteorological seasons, Dec-Feb first
    double season;
    if (month == 12 || month <= 2)
        season = 0.0;
    else if (month <= 5)
        season = 1.0 / 3.0;
    else if (month <= 8)
        season = 2.0 / 3.0;
    else
        season = 1.0;
    v[L::kSeason] = season;

    const double hour_angle = 2.0 * kPi * hour_frac / 24.0;
    v[L::kSinHour] = std::sin(hour_angle);
    v[L::kCosHour] = std::cos(hour_angle);
    const double dow_angle = 2.0 * kPi * static_cast<double>(dow) / 7.0;
    v[L::kSinDow] = std::sin(dow_angle);
    v[L::kCosDow] = std::cos(dow_angle);

    return v;
}

}  // namespace bestad
