"""Python access to the tracker simulation core."""

from ._suntrack import (
    AnalysisError,
    Axis,
    EphemerisRangeError,
    PiController,
    analyze,
    efficiency_of,
    estimate_timestamp,
    format_utc,
    parse_utc,
    profile_value,
    relative_efficiency,
    run_comparison,
    run_scenario,
    run_surface_scan,
    solar_position,
    utc_from_civil,
)

__all__ = [
    "AnalysisError",
    "Axis",
    "EphemerisRangeError",
    "PiController",
    "analyze",
    "efficiency_of",
    "estimate_timestamp",
    "format_utc",
    "parse_utc",
    "profile_value",
    "relative_efficiency",
    "run_comparison",
    "run_scenario",
    "run_surface_scan",
    "solar_position",
    "utc_from_civil",
]
