#include <map>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdecor/cli.hpp"
#include "gdecor/errors.hpp"
#include "gdecor/geometry.hpp"

namespace py = pybind11;

namespace {

gdecor::config::RunConfig to_config(const std::map<std::string, std::string>& kv)
{
    gdecor::config::RunConfig cfg;
    for (const auto& [k, v] : kv)
    {
        cfg.set(k, v);
    }
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    using namespace gdecor;
    m.doc() = "Native core of gdecor; the gdecor package wraps these.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<RegimeError>(m, "RegimeError", base.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    m.def(
        "proper_time_radial",
        [](double r_lo, double r_hi, double mass_length) {
            return geometry::proper_time_radial(
                {r_lo, r_hi}, geometry::SchwarzschildBackground(mass_length));
        },
        py::arg("r_lo"), py::arg("r_hi"), py::arg("mass_length"));
    m.def(
        "coordinate_flight_time",
        [](double r_lo, double r_hi, double mass_length) {
            return geometry::coordinate_flight_time(
                {r_lo, r_hi}, geometry::SchwarzschildBackground(mass_length));
        },
        py::arg("r_lo"), py::arg("r_hi"), py::arg("mass_length"));

    m.def("predict_json", [](const std::map<std::string, std::string>& kv) {
        return report::to_json(cli::cmd_predict(to_config(kv))).dump();
    });
    m.def("compare_json", [](const std::map<std::string, std::string>& kv) {
        const auto [mode, event] = cli::cmd_compare(to_config(kv));
        return nlohmann::json{{"mode", report::to_json(mode)},
                              {"event", report::to_json(event)}}
            .dump();
    });
    m.def("sweep_json", [](const std::map<std::string, std::string>& kv) {
        const auto table = cli::cmd_sweep(to_config(kv));
        return report::sweep_json(table.axis, table.rows).dump();
    });
    m.def("sweep_csv", [](const std::map<std::string, std::string>& kv) {
        const auto table = cli::cmd_sweep(to_config(kv));
        return report::sweep_csv(table.axis, table.metadata, table.rows);
    });
    m.def("threshold", [](const std::map<std::string, std::string>& kv) {
        return cli::cmd_threshold(to_config(kv));
    });
    m.def(
        "validate_json",
        [](bool inject_mass_sign_flip) {
            cli::ValidateOptions opts;
            opts.inject_mass_sign_flip = inject_mass_sign_flip;
            return cli::cmd_validate(opts).to_json().dump();
        },
        py::arg("inject_mass_sign_flip") = false);
}
