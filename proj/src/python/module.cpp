#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>

#include "blowup/diagnostics.hpp"
#include "blowup/fields.hpp"
#include "blowup/ode.hpp"
#include "blowup/residual.hpp"

namespace py = pybind11;
using namespace blowup;

namespace {

std::array<double, 3> to_point(const std::vector<double>& x) {
    if (x.empty() || x.size() > 3)
        fail(ErrorKind::BadInput, "point needs 1..3 coordinates");
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    return out;
}

py::object json_loads(const std::string& text) {
    return py::module_::import("json").attr("loads")(text);
}

ResidualMode mode_from_string(const std::string& mode) {
    if (mode == "analytic") return ResidualMode::Analytic;
    if (mode == "fd") return ResidualMode::FD;
    fail(ErrorKind::BadInput, "mode must be 'analytic' or 'fd'");
}

struct SystemChoice {
    SweepSystem sweep;
    bool oldroyd_pair = false;  // report both forms for "oldroyd"
};

SystemChoice system_from_string(const std::string& s) {
    if (s == "oldroyd") return {SweepSystem::OldroydTransformed, true};
    if (s == "oldroyd-transformed") return {SweepSystem::OldroydTransformed};
    if (s == "oldroyd-original") return {SweepSystem::OldroydOriginal};
    if (s == "ns2d") return {SweepSystem::NS2D};
    if (s == "ns3d") return {SweepSystem::NS3D};
    if (s == "nsac2d") return {SweepSystem::NSAC2D};
    if (s == "nsac3d") return {SweepSystem::NSAC3D};
    fail(ErrorKind::BadInput, "unknown system: " + s);
}

SweepParams pack_params(const py::object& params) {
    SweepParams sp;
    if (py::isinstance<OldroydParams>(params))
        sp.oldroyd = params.cast<OldroydParams>();
    else if (py::isinstance<NSParams>(params))
        sp.ns = params.cast<NSParams>();
    else if (py::isinstance<PhaseFieldParams>(params))
        sp.phase = params.cast<PhaseFieldParams>();
    else
        fail(ErrorKind::BadInput, "unsupported params object");
    return sp;
}

py::dict residual_components(const ResidualVector& rv) {
    py::dict out;
    for (const auto& c : rv.components) {
        py::dict entry;
        entry["value"] = c.value;
        entry["scale"] = c.scale;
        entry["rel"] = c.relative();
        out[py::str(c.name)] = entry;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact finite-time blow-up solutions and their verification "
              "toolbox: closed-form families, residual sweeps, ODE "
              "reduction, blow-up diagnostics.";

    py::register_exception<Error>(m, "VerificationError");

    py::class_<OldroydParams>(m, "OldroydParams")
        .def(py::init([](double f0, double alpha, double beta, double nu,
                         double lambda_) {
                 OldroydParams p{f0, alpha, beta, nu, lambda_};
                 validate(p);
                 return p;
             }),
             py::arg("f0") = 1.0, py::arg("alpha") = 3.0, py::arg("beta") = 1.0,
             py::arg("nu") = 1.0, py::arg("lambda_") = 1.0)
        .def_readonly("f0", &OldroydParams::f0)
        .def_readonly("alpha", &OldroydParams::alpha)
        .def_readonly("beta", &OldroydParams::beta)
        .def_readonly("nu", &OldroydParams::nu)
        .def_readonly("lambda_", &OldroydParams::lambda)
        .def("__repr__", [](const OldroydParams& p) {
            return "OldroydParams(" + to_json(p) + ")";
        });

    py::class_<NSParams>(m, "NSParams")
        .def(py::init([](double t, double nu, double c1, double c2, double c3,
                         double c4, double c5) {
                 NSParams p{t, nu, c1, c2, c3, c4, c5};
                 validate(p);
                 return p;
             }),
             py::arg("t") = 1.0, py::arg("nu") = 1.0, py::arg("c1") = 0.0,
             py::arg("c2") = 0.0, py::arg("c3") = 0.0, py::arg("c4") = 0.0,
             py::arg("c5") = 0.0)
        .def_readonly("t", &NSParams::t)
        .def_readonly("nu", &NSParams::nu)
        .def_readonly("c1", &NSParams::c1)
        .def_readonly("c2", &NSParams::c2)
        .def_readonly("c3", &NSParams::c3)
        .def_readonly("c4", &NSParams::c4)
        .def_readonly("c5", &NSParams::c5)
        .def("__repr__", [](const NSParams& p) {
            return "NSParams(" + to_json(p) + ")";
        });

    py::class_<PhaseFieldParams>(m, "PhaseFieldParams")
        .def(py::init([](double t, double nu, double c1, double c2, double c3,
                         double c4, double c5, double lambda_, double gamma,
                         double epsilon, int dimension,
                         const std::string& variant) {
                 PhaseFieldParams p;
                 p.ns = NSParams{t, nu, c1, c2, c3, c4, c5};
                 p.lambda = lambda_;
                 p.gamma = gamma;
                 p.epsilon = epsilon;
                 p.dimension = dimension;
                 p.variant = phase_variant_from_string(variant);
                 validate(p);
                 return p;
             }),
             py::arg("t") = 1.0, py::arg("nu") = 1.0, py::arg("c1") = 0.0,
             py::arg("c2") = 0.0, py::arg("c3") = 0.0, py::arg("c4") = 0.0,
             py::arg("c5") = 0.0, py::arg("lambda_") = 1.0,
             py::arg("gamma") = 1.0, py::arg("epsilon") = 0.1,
             py::arg("dimension") = 2, py::arg("variant") = "allen-cahn")
        .def_readonly("lambda_", &PhaseFieldParams::lambda)
        .def_readonly("gamma", &PhaseFieldParams::gamma)
        .def_readonly("epsilon", &PhaseFieldParams::epsilon)
        .def_readonly("dimension", &PhaseFieldParams::dimension)
        .def_property_readonly("variant",
                               [](const PhaseFieldParams& p) {
                                   return std::string(to_string(p.variant));
                               })
        .def("__repr__", [](const PhaseFieldParams& p) {
            return "PhaseFieldParams(" + to_json(p) + ")";
        });

    py::class_<FieldSample>(m, "FieldSample")
        .def_property_readonly("u",
                               [](const FieldSample& s) {
                                   std::vector<double> u(s.u.begin(),
                                                         s.u.begin() + s.dim);
                                   return u;
                               })
        .def_property_readonly("P",
                               [](const FieldSample& s) {
                                   return s.P ? py::cast(*s.P) : py::none();
                               })
        .def_property_readonly("p",
                               [](const FieldSample& s) {
                                   return s.p ? py::cast(*s.p) : py::none();
                               })
        .def_property_readonly("phi",
                               [](const FieldSample& s) {
                                   return s.phi ? py::cast(*s.phi) : py::none();
                               })
        .def_property_readonly(
            "phi_vec",
            [](const FieldSample& s) {
                return s.phi_vec ? py::cast(*s.phi_vec) : py::none();
            })
        .def_property_readonly(
            "F_diag",
            [](const FieldSample& s) {
                return s.F_diag ? py::cast(*s.F_diag) : py::none();
            });

    py::class_<ReducedState>(m, "ReducedState")
        .def_readonly("f", &ReducedState::f)
        .def_readonly("g", &ReducedState::g)
        .def_readonly("g1", &ReducedState::g1)
        .def_readonly("g2", &ReducedState::g2)
        .def_readonly("h1", &ReducedState::h1)
        .def_readonly("h2", &ReducedState::h2);

    m.def(
        "blow_up_time",
        [](const OldroydParams& p) -> py::object {
            const BlowUpTime bt = blow_up_time(validate(p));
            return bt.finite() ? py::cast(*bt.t_star) : py::none();
        },
        py::arg("params"),
        "Finite blow-up time of the viscoelastic family, or None.");

    m.def(
        "oldroyd_eval",
        [](const OldroydParams& p, const std::vector<double>& x, double t,
           bool continuation) {
            return oldroyd_eval(p, to_point(x), t, continuation);
        },
        py::arg("params"), py::arg("x"), py::arg("t"),
        py::arg("continuation") = false);

    m.def(
        "ns_eval",
        [](const NSParams& p, const std::vector<double>& x, double t) {
            return ns_eval(p, to_point(x), t, static_cast<int>(x.size()));
        },
        py::arg("params"), py::arg("x"), py::arg("t"),
        "Velocity and pressure; the dimension follows len(x).");

    m.def(
        "nsac_eval",
        [](const PhaseFieldParams& p, const std::vector<double>& x, double t) {
            return nsac_eval(p, to_point(x), t);
        },
        py::arg("params"), py::arg("x"), py::arg("t"));

    m.def(
        "oldroyd_residual",
        [](const OldroydParams& p, const std::vector<double>& x, double t,
           const std::string& mode, bool original) {
            const auto rv =
                original ? residual_oldroyd_original(p, to_point(x), t,
                                                     mode_from_string(mode))
                         : residual_oldroyd_transformed(p, to_point(x), t,
                                                        mode_from_string(mode));
            return residual_components(rv);
        },
        py::arg("params"), py::arg("x"), py::arg("t"),
        py::arg("mode") = "analytic", py::arg("original") = false);

    m.def(
        "ns_residual",
        [](const NSParams& p, const std::vector<double>& x, double t,
           const std::string& mode) {
            return residual_components(residual_ns(
                p, to_point(x), t, mode_from_string(mode),
                static_cast<int>(x.size())));
        },
        py::arg("params"), py::arg("x"), py::arg("t"),
        py::arg("mode") = "analytic");

    m.def(
        "nsac_residual",
        [](const PhaseFieldParams& p, const std::vector<double>& x, double t,
           const std::string& mode) {
            return residual_components(
                residual_nsac(p, to_point(x), t, mode_from_string(mode)));
        },
        py::arg("params"), py::arg("x"), py::arg("t"),
        py::arg("mode") = "analytic");

    m.def(
        "residual_report",
        [](const std::string& system, const py::object& params,
           const std::string& mode) {
            const SystemChoice choice = system_from_string(system);
            const SweepParams sp = pack_params(params);
            const ResidualMode rm = mode_from_string(mode);
            const StencilSpec stencil{};
            auto sweep = [&](SweepSystem sys) {
                return residual_sweep(
                    sys, sp, standard_sweep_grid(sys, sp, rm, stencil), rm,
                    stencil);
            };
            if (!choice.oldroyd_pair)
                return json_loads(to_json(sweep(choice.sweep)));
            auto merged = sweep(SweepSystem::OldroydTransformed);
            const auto original = sweep(SweepSystem::OldroydOriginal);
            merged.system = "oldroyd";
            for (auto& c : merged.components) c.name = "transformed_" + c.name;
            for (const auto& c : original.components) {
                auto copy = c;
                copy.name = "original_" + copy.name;
                merged.components.push_back(copy);
            }
            return json_loads(to_json(merged));
        },
        py::arg("system"), py::arg("params"), py::arg("mode") = "analytic",
        "Residual sweep over the standard grid; returns the report as a "
        "dict.");

    m.def("closed_form_reduced", &closed_form_reduced, py::arg("params"),
          py::arg("t"));

    m.def(
        "integrate_reduced",
        [](const OldroydParams& p, double t_end, double dt) {
            std::vector<std::pair<double, ReducedState>> out;
            for (const auto& pt : integrate_reduced(p, t_end, dt))
                out.emplace_back(pt.t, pt.state);
            return out;
        },
        py::arg("params"), py::arg("t_end"), py::arg("dt"));

    m.def(
        "compare_ode",
        [](const OldroydParams& p, double t_end, double dt) {
            const OdeErrorReport rep = compare_ode(p, t_end, dt);
            py::dict d;
            d["f"] = rep.f;
            d["g"] = rep.g;
            d["g1"] = rep.g1;
            d["g2"] = rep.g2;
            d["h1"] = rep.h1;
            d["h2"] = rep.h2;
            d["max"] = rep.max_error();
            return d;
        },
        py::arg("params"), py::arg("t_end"), py::arg("dt"));

    m.def(
        "check_assumptions",
        [](const OldroydParams& p, const std::vector<double>& ladder,
           std::size_t density, double near_zero_tol) {
            return json_loads(
                to_json(check_assumptions(p, ladder, density, near_zero_tol)));
        },
        py::arg("params"), py::arg("l_ladder") = std::vector<double>{1, 2, 4, 8},
        py::arg("density") = 33, py::arg("near_zero_tol") = 1e-6);

    m.def(
        "blowup_profile",
        [](const std::string& system, const py::object& params,
           const std::vector<double>& point, std::size_t count, double ratio,
           const std::string& diagnostic) {
            const auto diag = profile_diagnostic_from_string(diagnostic);
            ProfileSeries series;
            if (system == "oldroyd") {
                series = blowup_profile(params.cast<OldroydParams>(),
                                        to_point(point), count, ratio, diag);
            } else if (system == "ns2d" || system == "ns3d") {
                series = blowup_profile_ns(params.cast<NSParams>(),
                                           system == "ns2d" ? 2 : 3,
                                           to_point(point), count, ratio, diag);
            } else if (system == "nsac2d" || system == "nsac3d") {
                series = blowup_profile_nsac(params.cast<PhaseFieldParams>(),
                                             to_point(point), count, ratio,
                                             diag);
            } else {
                fail(ErrorKind::BadInput, "unknown system: " + system);
            }
            const ExponentFit fit = fit_exponent(series, series.t_blow);
            py::dict d;
            d["label"] = series.label;
            d["t_blow"] = series.t_blow;
            d["points"] = series.points;
            d["slope"] = fit.slope;
            d["slope_stderr"] = fit.stderr_slope;
            return d;
        },
        py::arg("system"), py::arg("params"), py::arg("point"),
        py::arg("count") = 12, py::arg("ratio") = 0.5,
        py::arg("diagnostic") = "speed");

    m.def(
        "deformation_metrics",
        [](const OldroydParams& p, double t) {
            const DeformationMetrics m_ = deformation_metrics(p, t);
            return std::make_pair(m_.det, m_.anisotropy);
        },
        py::arg("params"), py::arg("t"),
        "Returns (det F, anisotropy) at time t.");

    m.def("interface_width", &interface_width, py::arg("epsilon"),
          py::arg("theta"),
          "Width between the -theta and +theta level sets of the kink.");

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "0.1.0";
#endif
}
