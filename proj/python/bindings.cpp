#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "suntrack/analysis.hpp"
#include "suntrack/controller.hpp"
#include "suntrack/dsp.hpp"
#include "suntrack/ephemeris.hpp"
#include "suntrack/harness.hpp"
#include "suntrack/optics.hpp"
#include "suntrack/time.hpp"

namespace py = pybind11;
using namespace suntrack;

namespace {

py::dict metrics_dict(const DayMetrics &m) {
    py::dict d;
    d["mean_daylight_efficiency"] = m.mean_daylight_efficiency;
    d["energy_wh"] = m.energy_wh;
    d["daylight_samples"] = m.daylight_samples;
    d["movements"] = m.movements;
    d["cycles"] = m.cycles;
    d["accepted_orientation"] = m.accepted_orientation;
    d["accepted_elevation"] = m.accepted_elevation;
    d["labels_orientation"] = m.labels_orientation;
    d["labels_elevation"] = m.labels_elevation;
    d["final_offsets"] = py::make_tuple(m.final_offsets.azimuth, m.final_offsets.elevation);
    d["invariant_violations"] = m.invariant_violations;
    return d;
}

EfficiencyTrajectory make_trajectory(const std::vector<double> &ts, const std::vector<double> &eta,
                                     const std::vector<double> &theta, Axis axis) {
    if (ts.size() != eta.size() || ts.size() != theta.size())
        throw std::invalid_argument("ts, eta and theta must have equal length");
    EfficiencyTrajectory t;
    t.axis = axis;
    t.ts = ts;
    t.eta = eta;
    t.theta = theta;
    return t;
}

} // namespace

PYBIND11_MODULE(_suntrack, m) {
    m.doc() = "Solar tracker simulation core";

    py::register_exception<EphemerisRangeError>(m, "EphemerisRangeError", PyExc_ValueError);
    py::register_exception<AnalysisError>(m, "AnalysisError", PyExc_RuntimeError);

    m.def("utc_from_civil", &utc_from_civil, py::arg("year"), py::arg("month"), py::arg("day"),
          py::arg("hour") = 0, py::arg("minute") = 0, py::arg("second") = 0.0);
    m.def("parse_utc", &parse_utc);
    m.def("format_utc", &format_utc);

    m.def(
        "solar_position",
        [](double t, double lat, double lon) {
            const SolarAngles s = solar_position(t, ObserverLocation(lat, lon));
            return py::make_tuple(s.azimuth, s.elevation);
        },
        py::arg("utc_seconds"), py::arg("latitude"), py::arg("longitude"),
        "(azimuth, elevation) in degrees");

    m.def("profile_value", &profile_value, py::arg("u"), py::arg("alpha"), py::arg("sharpness") = 4.0);
    m.def(
        "relative_efficiency",
        [](double x, double y, double alpha, double sharpness) {
            ConcentratorSpec spec;
            spec.alpha = alpha;
            spec.rolloff_sharpness = sharpness;
            return relative_efficiency({x, y}, spec);
        },
        py::arg("x"), py::arg("y"), py::arg("alpha") = 1.14, py::arg("sharpness") = 4.0);
    m.def("efficiency_of", &efficiency_of, py::arg("power"), py::arg("irradiance"), py::arg("catchment_area"),
          py::arg("irradiance_threshold") = 50.0);

    py::enum_<Axis>(m, "Axis").value("orientation", Axis::orientation).value("elevation", Axis::elevation);

    m.def(
        "analyze",
        [](const std::vector<double> &ts, const std::vector<double> &eta, const std::vector<double> &theta,
           Axis axis, double threshold_fraction) {
            AnalyzerConfig cfg;
            cfg.threshold_fraction = threshold_fraction;
            cfg.validate();
            const SunEstimate e = analyze(make_trajectory(ts, eta, theta, axis), cfg);
            return py::make_tuple(std::string(label_name(e.label)), e.theta_hat, e.ts_hat);
        },
        py::arg("ts"), py::arg("eta"), py::arg("theta"), py::arg("axis") = Axis::orientation,
        py::arg("threshold_fraction") = 0.92, "(label, theta_hat, ts_hat) for one efficiency trajectory");

    m.def(
        "estimate_timestamp",
        [](std::optional<double> t_ori, std::optional<double> t_ele) {
            std::optional<SunEstimate> o, e;
            if (t_ori) o = SunEstimate{Axis::orientation, TrajectoryLabel::T2, 0.0, *t_ori};
            if (t_ele) e = SunEstimate{Axis::elevation, TrajectoryLabel::T2, 0.0, *t_ele};
            return estimate_timestamp(o, e);
        },
        py::arg("t_ori").none(true), py::arg("t_ele").none(true));

    py::class_<PiController>(m, "PiController")
        .def(py::init([](double kp, double ki, double limit, double initial) {
                 return PiController({kp, ki}, limit, initial);
             }),
             py::arg("kp"), py::arg("ki"), py::arg("output_limit") = 5.0, py::arg("initial_output") = 0.0)
        .def("update", &PiController::update)
        .def_property_readonly("output", &PiController::output)
        .def_property_readonly("error_sum", &PiController::error_sum);

    m.def(
        "run_scenario",
        [](const std::filesystem::path &path, const std::vector<std::string> &overrides,
           std::optional<std::filesystem::path> out) {
            ScenarioResult r;
            {
                py::gil_scoped_release release;
                r = run_scenario(load_scenario(path, overrides));
                if (out) write_artifacts(r, *out);
            }
            return metrics_dict(r.metrics);
        },
        py::arg("path"), py::arg("overrides") = std::vector<std::string>{}, py::arg("out") = py::none(),
        "Runs one day and returns its metrics; writes artifacts when `out` is given.");

    m.def(
        "run_comparison",
        [](const std::filesystem::path &path, const std::vector<std::string> &overrides) {
            ComparisonResult r;
            {
                py::gil_scoped_release release;
                r = run_comparison(load_scenario(path, overrides));
            }
            py::dict d;
            d["closed_loop"] = metrics_dict(r.closed_loop.metrics);
            py::list open;
            for (std::size_t i = 0; i < r.open_loop.size(); ++i) {
                py::dict o = metrics_dict(r.open_loop[i].metrics);
                o["period"] = r.open_loop[i].config.open_loop_period;
                o["relative_gain"] = r.relative_gain(i);
                o["movement_ratio"] = r.movement_ratio(i);
                open.append(o);
            }
            d["open_loop"] = open;
            return d;
        },
        py::arg("path"), py::arg("overrides") = std::vector<std::string>{});

    m.def(
        "run_surface_scan",
        [](const std::filesystem::path &path, const std::vector<std::string> &overrides) {
            const ScanResult s = run_surface_scan(load_scenario(path, overrides));
            py::dict d;
            d["alpha_x"] = s.alpha_x;
            d["alpha_y"] = s.alpha_y;
            d["alpha"] = s.alpha();
            d["configured_alpha"] = s.configured_alpha;
            d["rows"] = s.rows;
            d["columns"] = s.columns;
            return d;
        },
        py::arg("path"), py::arg("overrides") = std::vector<std::string>{});
}
