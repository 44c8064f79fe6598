#include "suntrack/ephemeris.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "suntrack/angles.hpp"
#include "suntrack/time.hpp"

namespace suntrack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEarthMeanRadiusKm = 6371.01;
constexpr double kAstronomicalUnitKm = 149597890.0;
constexpr double kUnixEpochJulianDay = 2440587.5;
constexpr double kJ2000 = 2451545.0;

} // namespace

ObserverLocation::ObserverLocation(double latitude_deg, double longitude_deg)
    : latitude_(latitude_deg), longitude_(longitude_deg) {
    if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
        throw std::invalid_argument("latitude must be within [-90, 90] degrees");
    if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0))
        throw std::invalid_argument("longitude must be within [-180, 180] degrees");
}

double ephemeris_valid_from() { return utc_from_civil(1999, 1, 1); }
double ephemeris_valid_until() { return utc_from_civil(2051, 1, 1); }

SolarAngles solar_position(double utc_seconds, const ObserverLocation &location) {
    static const double valid_from = ephemeris_valid_from();
    static const double valid_until = ephemeris_valid_until();
    if (!(utc_seconds >= valid_from && utc_seconds < valid_until))
        throw EphemerisRangeError("timestamp outside the 1999-2050 ephemeris validity window");

    const double day_start = utc_day_start(utc_seconds);
    const double decimal_hours = (utc_seconds - day_start) / 3600.0;
    const double elapsed_days = utc_seconds / 86400.0 + kUnixEpochJulianDay - kJ2000;

    // Ecliptic coordinates, radians, not reduced to [0, 2pi).
    const double omega = 2.1429 - 0.0010394594 * elapsed_days;
    const double mean_longitude = 4.8950630 + 0.017202791698 * elapsed_days;
    const double mean_anomaly = 6.2400600 + 0.0172019699 * elapsed_days;
    const double ecliptic_longitude = mean_longitude + 0.03341607 * std::sin(mean_anomaly) +
                                      0.00034894 * std::sin(2.0 * mean_anomaly) - 0.0001134 -
                                      0.0000203 * std::sin(omega);
    const double ecliptic_obliquity =
        0.4090928 - 6.2140e-9 * elapsed_days + 0.0000396 * std::cos(omega);

    // Celestial coordinates.
    const double sin_ecliptic_longitude = std::sin(ecliptic_longitude);
    double right_ascension = std::atan2(std::cos(ecliptic_obliquity) * sin_ecliptic_longitude,
                                        std::cos(ecliptic_longitude));
    if (right_ascension < 0.0) right_ascension += kTwoPi;
    const double declination = std::asin(std::sin(ecliptic_obliquity) * sin_ecliptic_longitude);

    // Local coordinates.
    const double gmst = 6.6974243242 + 0.0657098283 * elapsed_days + decimal_hours;
    const double lmst = (gmst * 15.0 + location.longitude()) * kDegToRad;
    const double hour_angle = lmst - right_ascension;
    const double latitude = location.latitude() * kDegToRad;
    const double cos_latitude = std::cos(latitude);
    const double sin_latitude = std::sin(latitude);
    const double cos_hour_angle = std::cos(hour_angle);

    double zenith = std::acos(std::clamp(cos_latitude * cos_hour_angle * std::cos(declination) +
                                             std::sin(declination) * sin_latitude,
                                         -1.0, 1.0));
    const double dy = -std::sin(hour_angle);
    const double dx = std::tan(declination) * cos_latitude - sin_latitude * cos_hour_angle;
    double azimuth = std::atan2(dy, dx);
    if (azimuth < 0.0) azimuth += kTwoPi;

    const double parallax = (kEarthMeanRadiusKm / kAstronomicalUnitKm) * std::sin(zenith);
    zenith += parallax;

    return SolarAngles{wrap_360(azimuth * kRadToDeg), 90.0 - zenith * kRadToDeg};
}

} // namespace suntrack
