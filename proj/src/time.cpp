#include "suntrack/time.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace suntrack {

namespace {

constexpr double kSecondsPerDay = 86400.0;

} // namespace

double utc_from_civil(int year, int month, int day, int hour, int minute, double second) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                             std::chrono::day{static_cast<unsigned>(day)}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<double>(days) * kSecondsPerDay + hour * 3600.0 + minute * 60.0 + second;
}

double utc_day_start(double t) { return std::floor(t / kSecondsPerDay) * kSecondsPerDay; }

std::string format_utc(double t) {
    using namespace std::chrono;
    const double day_start = utc_day_start(t);
    const auto days = sys_days{std::chrono::days{static_cast<long>(day_start / kSecondsPerDay)}};
    const year_month_day ymd{days};
    long secs = std::lround(t - day_start);
    if (secs >= 86400) secs = 86399;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), secs / 3600,
                  (secs / 60) % 60, secs % 60);
    return buf;
}

double parse_utc(const std::string &text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double s = 0.0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%n", &y, &mo, &d, &consumed) != 3)
        throw std::invalid_argument("cannot parse UTC time: " + text);
    std::string rest = text.substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest != "Z") {
        if (rest.front() != 'T' && rest.front() != ' ')
            throw std::invalid_argument("cannot parse UTC time: " + text);
        const int n = std::sscanf(rest.c_str() + 1, "%d:%d:%lf", &h, &mi, &s);
        if (n < 2) throw std::invalid_argument("cannot parse UTC time: " + text);
    }
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0.0 || s >= 61.0)
        throw std::invalid_argument("time of day out of range: " + text);
    return utc_from_civil(y, mo, d, h, mi, s);
}

double solar_hours(double t, double longitude_deg) {
    const double hours = (t - utc_day_start(t)) / 3600.0 + longitude_deg / 15.0;
    return std::fmod(std::fmod(hours, 24.0) + 24.0, 24.0);
}

double utc_from_solar_hours(double day_start, double hours, double longitude_deg) {
    return day_start + (hours - longitude_deg / 15.0) * 3600.0;
}

} // namespace suntrack
