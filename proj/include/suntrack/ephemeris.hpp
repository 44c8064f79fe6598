#pragma once

#include <stdexcept>

namespace suntrack {

/// Observer position on the Earth, degrees. East longitude is positive.
class ObserverLocation {
public:
    ObserverLocation(double latitude_deg, double longitude_deg);

    double latitude() const { return latitude_; }
    double longitude() const { return longitude_; }

private:
    double latitude_;
    double longitude_;
};

/// Sun direction in the geographic frame. Azimuth is clockwise from north in
/// [0, 360); elevation in [-90, 90] includes the parallax correction.
struct SolarAngles {
    double azimuth = 0.0;
    double elevation = 0.0;
};

/// Raised when a timestamp falls outside the 1999-2050 validity window.
class EphemerisRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// First and one-past-last valid UTC instants (1999-01-01 .. 2051-01-01).
double ephemeris_valid_from();
double ephemeris_valid_until();

/// PSA sun position (Blanco-Muriel et al., 2001 coefficients) for UTC seconds
/// since the Unix epoch. Pure; throws EphemerisRangeError outside the
/// validity window.
SolarAngles solar_position(double utc_seconds, const ObserverLocation &location);

} // namespace suntrack
