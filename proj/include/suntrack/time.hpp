#pragma once

#include <string>

namespace suntrack {

// Simulation time is carried as UTC seconds since the Unix epoch.

/// Converts a UTC civil date/time to seconds since the Unix epoch.
double utc_from_civil(int year, int month, int day, int hour = 0, int minute = 0,
                      double second = 0.0);

/// Midnight (UTC) of the day containing `t`.
double utc_day_start(double t);

/// ISO 8601 rendering with whole seconds, e.g. "2020-10-02T12:00:00Z".
std::string format_utc(double t);

/// Parses "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM[:SS][Z]". Throws std::invalid_argument.
double parse_utc(const std::string &text);

/// Display-only solar time in hours of day: UTC + longitude/15 h, no equation
/// of time.
double solar_hours(double t, double longitude_deg);

/// UTC instant at which the display solar time on the UTC day of `day_start`
/// reads `hours`.
double utc_from_solar_hours(double day_start, double hours, double longitude_deg);

} // namespace suntrack
