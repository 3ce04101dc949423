// Batch front end: evaluate the closed-form families over grids, run
// residual verification sweeps, FD convergence studies, ODE reduction
// checks, blow-up profiles and assumption audits. All output is CSV or
// JSON; identical invocations produce byte-identical files.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "blowup/diagnostics.hpp"
#include "blowup/fields.hpp"
#include "blowup/ode.hpp"
#include "blowup/residual.hpp"
#include "blowup/textio.hpp"

namespace {

using blowup::Error;
using blowup::ErrorKind;
using json = nlohmann::ordered_json;

struct Cli {
    std::string command;
    std::string system;
    std::string params_file;
    std::string grid_str;
    std::string times_str;
    std::string mode = "analytic";
    std::string out;
    std::string config_file;
    std::string perturb = "none";
    std::string point_str;
    std::string h_list_str = "4e-3,2e-3,1e-3";
    std::string ladder_str = "1,2,4,8";
    std::string diagnostic = "speed";
    std::string csv_path;
    double h = 1e-3, k = 1e-3;
    int order = 2;
    double tol = std::nan("");
    bool continuation = false;
    bool dump_config = false;
    double t_end = std::nan("");
    double dt = 1e-4;
    double ratio = 0.5;
    double near_zero_tol = 1e-6;
    std::size_t count = 12;
    std::size_t density = 33;
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            blowup::fail(ErrorKind::BadInput, "bad number in list: " + item);
        }
    }
    if (out.empty()) blowup::fail(ErrorKind::BadInput, "empty list");
    return out;
}

std::vector<blowup::GridAxis> parse_grid_axes(const std::string& text) {
    std::vector<blowup::GridAxis> axes;
    std::stringstream ss(text);
    std::string axis;
    while (std::getline(ss, axis, ',')) {
        blowup::GridAxis a;
        double n = 0.0;
        if (std::sscanf(axis.c_str(), "%lf:%lf:%lf", &a.lo, &a.hi, &n) != 3 ||
            n < 1.0)
            blowup::fail(ErrorKind::BadInput,
                         "bad grid axis (want lo:hi:n): " + axis);
        a.count = static_cast<std::size_t>(n);
        axes.push_back(a);
    }
    if (axes.empty()) blowup::fail(ErrorKind::BadInput, "empty grid spec");
    return axes;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) blowup::fail(ErrorKind::BadInput, "cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) blowup::fail(ErrorKind::BadInput, "cannot write file: " + path);
    out << content;
    if (content.empty() || content.back() != '\n') out << '\n';
}

blowup::Perturbation parse_perturbation(const std::string& s) {
    if (s == "none") return blowup::Perturbation::None;
    if (s == "flip-h1-exponent") return blowup::Perturbation::FlipH1Exponent;
    if (s == "wrong-wave-speed") return blowup::Perturbation::WrongWaveSpeed;
    blowup::fail(ErrorKind::BadInput, "unknown perturbation: " + s);
}

int system_dim(const std::string& system) {
    if (system == "ns3d" || system == "nsac3d") return 3;
    return 2;
}

bool is_oldroyd(const std::string& s) { return s == "oldroyd"; }
bool is_ns(const std::string& s) { return s == "ns2d" || s == "ns3d"; }
bool is_nsac(const std::string& s) { return s == "nsac2d" || s == "nsac3d"; }

// Everything a run needs, fully resolved; this is what --dump-config
// emits and --config reads back.
struct RunPlan {
    std::string command;
    std::string system;
    json params;  // inline object, defaults filled in
    blowup::SweepParams sweep_params;
    blowup::GridSpec grid;
    bool grid_used = false;
    blowup::StencilSpec stencil;
    blowup::ResidualMode mode = blowup::ResidualMode::Analytic;
    blowup::Perturbation perturb = blowup::Perturbation::None;
    double tol = 0.0;
    std::string out;
    bool continuation = false;
    json options = json::object();
};

json params_defaults(const std::string& system) {
    if (is_oldroyd(system))
        return json::parse(blowup::to_json(blowup::OldroydParams{}));
    if (is_ns(system)) return json::parse(blowup::to_json(blowup::NSParams{}));
    blowup::PhaseFieldParams p;
    p.dimension = system_dim(system);
    return json::parse(blowup::to_json(p));
}

void resolve_params(RunPlan& plan) {
    if (is_nsac(plan.system)) {
        if (!plan.params.contains("dimension"))
            plan.params["dimension"] = system_dim(plan.system);
        else if (plan.params["dimension"] != system_dim(plan.system))
            blowup::fail(ErrorKind::BadInput,
                         "params dimension conflicts with --system");
    }
    const std::string text = plan.params.dump();
    if (is_oldroyd(plan.system)) {
        plan.sweep_params.oldroyd = blowup::oldroyd_params_from_json(text);
        plan.params = json::parse(blowup::to_json(plan.sweep_params.oldroyd));
    } else if (is_ns(plan.system)) {
        plan.sweep_params.ns = blowup::ns_params_from_json(text);
        plan.params = json::parse(blowup::to_json(plan.sweep_params.ns));
    } else if (is_nsac(plan.system)) {
        plan.sweep_params.phase = blowup::phase_field_params_from_json(text);
        plan.params = json::parse(blowup::to_json(plan.sweep_params.phase));
    } else {
        blowup::fail(ErrorKind::BadInput, "unknown system: " + plan.system);
    }
}

blowup::SweepSystem primary_sweep_system(const std::string& system) {
    if (system == "oldroyd") return blowup::SweepSystem::OldroydTransformed;
    if (system == "ns2d") return blowup::SweepSystem::NS2D;
    if (system == "ns3d") return blowup::SweepSystem::NS3D;
    if (system == "nsac2d") return blowup::SweepSystem::NSAC2D;
    if (system == "nsac3d") return blowup::SweepSystem::NSAC3D;
    blowup::fail(ErrorKind::BadInput, "unknown system: " + system);
}

json grid_to_json(const blowup::GridSpec& grid) {
    json axes = json::array();
    for (const auto& a : grid.axes)
        axes.push_back({{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
    return json{{"axes", axes}, {"times", grid.times}};
}

blowup::GridSpec grid_from_json(const json& j) {
    blowup::GridSpec grid;
    for (const auto& a : j.at("axes"))
        grid.axes.push_back({a.at("lo").get<double>(), a.at("hi").get<double>(),
                             a.at("count").get<std::size_t>()});
    grid.times = j.at("times").get<std::vector<double>>();
    return grid;
}

json plan_to_json(const RunPlan& plan) {
    json j{{"schema_version", 1},
           {"command", plan.command},
           {"system", plan.system},
           {"params", plan.params},
           {"mode", std::string(to_string(plan.mode))},
           {"stencil",
            {{"h", plan.stencil.h},
             {"k", plan.stencil.k},
             {"order", plan.stencil.order}}},
           {"tol", plan.tol},
           {"out", plan.out},
           {"continuation", plan.continuation},
           {"perturb", plan.perturb == blowup::Perturbation::None
                           ? "none"
                           : (plan.perturb == blowup::Perturbation::FlipH1Exponent
                                  ? "flip-h1-exponent"
                                  : "wrong-wave-speed")},
           {"options", plan.options}};
    if (plan.grid_used) j["grid"] = grid_to_json(plan.grid);
    return j;
}

// ---------------------------------------------------------------------
// command execution
// ---------------------------------------------------------------------

std::string eval_csv(const RunPlan& plan) {
    const auto points = blowup::make_grid(plan.grid);
    std::string out;
    const int dim = system_dim(plan.system);
    if (is_oldroyd(plan.system)) {
        out = "x1,x2,t,u1,u2,P,p,phi1,phi2,F11,F22\n";
    } else if (is_ns(plan.system)) {
        out = dim == 2 ? "x1,x2,t,u1,u2,p\n" : "x1,x2,x3,t,u1,u2,u3,p\n";
    } else {
        out = dim == 2 ? "x1,x2,t,u1,u2,P,phi\n" : "x1,x2,x3,t,u1,u2,u3,P,phi\n";
    }
    auto append = [&out](double v, bool first = false) {
        if (!first) out += ',';
        out += blowup::format_double(v);
    };
    for (const auto& pt : points) {
        append(pt.x[0], true);
        for (int a = 1; a < dim; ++a) append(pt.x[a]);
        append(pt.t);
        if (is_oldroyd(plan.system)) {
            const auto fs = blowup::oldroyd_eval(plan.sweep_params.oldroyd, pt.x,
                                                 pt.t, plan.continuation);
            append(fs.u[0]);
            append(fs.u[1]);
            append(*fs.P);
            append(*fs.p);
            append((*fs.phi_vec)[0]);
            append((*fs.phi_vec)[1]);
            append((*fs.F_diag)[0]);
            append((*fs.F_diag)[1]);
        } else if (is_ns(plan.system)) {
            const auto fs = blowup::ns_eval(plan.sweep_params.ns, pt.x, pt.t, dim);
            for (int a = 0; a < dim; ++a) append(fs.u[a]);
            append(*fs.p);
        } else {
            const auto fs = blowup::nsac_eval(plan.sweep_params.phase, pt.x, pt.t);
            for (int a = 0; a < dim; ++a) append(fs.u[a]);
            append(*fs.P);
            append(*fs.phi);
        }
        out += '\n';
    }
    return out;
}

// For the viscoelastic family the verify report carries both the
// potential form and the deformation-tensor form, with prefixed
// component names.
blowup::ResidualReport run_verify_sweep(const RunPlan& plan) {
    if (is_oldroyd(plan.system)) {
        auto transformed = blowup::residual_sweep(
            blowup::SweepSystem::OldroydTransformed, plan.sweep_params,
            plan.grid, plan.mode, plan.stencil, plan.perturb, plan.continuation);
        const auto original = blowup::residual_sweep(
            blowup::SweepSystem::OldroydOriginal, plan.sweep_params, plan.grid,
            plan.mode, plan.stencil, plan.perturb, plan.continuation);
        blowup::ResidualReport merged = transformed;
        merged.system = "oldroyd";
        for (auto& c : merged.components) c.name = "transformed_" + c.name;
        for (const auto& c : original.components) {
            auto copy = c;
            copy.name = "original_" + copy.name;
            merged.components.push_back(copy);
        }
        return merged;
    }
    return blowup::residual_sweep(primary_sweep_system(plan.system),
                                  plan.sweep_params, plan.grid, plan.mode,
                                  plan.stencil, plan.perturb, plan.continuation);
}

int run_verify(const RunPlan& plan) {
    const auto report = run_verify_sweep(plan);
    write_output(plan.out, blowup::to_json(report));
    return report.max_rel() <= plan.tol ? 0 : 1;
}

int run_convergence(const RunPlan& plan) {
    const auto h_list = plan.options.at("h_list").get<std::vector<double>>();
    if (is_oldroyd(plan.system)) {
        auto a = blowup::residual_convergence(
            blowup::SweepSystem::OldroydTransformed, plan.sweep_params,
            plan.grid, h_list, plan.stencil, plan.perturb);
        const auto b = blowup::residual_convergence(
            blowup::SweepSystem::OldroydOriginal, plan.sweep_params, plan.grid,
            h_list, plan.stencil, plan.perturb);
        for (auto& c : a.components) c.name = "transformed_" + c.name;
        for (const auto& c : b.components) {
            auto copy = c;
            copy.name = "original_" + copy.name;
            a.components.push_back(copy);
        }
        write_output(plan.out, blowup::to_json(a));
        return 0;
    }
    const auto study = blowup::residual_convergence(
        primary_sweep_system(plan.system), plan.sweep_params, plan.grid, h_list,
        plan.stencil, plan.perturb);
    write_output(plan.out, blowup::to_json(study));
    return 0;
}

int run_ode_check(const RunPlan& plan) {
    if (!is_oldroyd(plan.system))
        blowup::fail(ErrorKind::BadInput,
                     "ode-check applies to the oldroyd system");
    const double t_end = plan.options.at("t_end").get<double>();
    const double dt = plan.options.at("dt").get<double>();
    const auto report =
        blowup::compare_ode(plan.sweep_params.oldroyd, t_end, dt);

    const std::string csv = plan.options.value("csv", std::string());
    if (!csv.empty()) {
        const auto trajectory =
            blowup::integrate_reduced(plan.sweep_params.oldroyd, t_end, dt);
        write_output(csv, blowup::trajectory_to_csv(trajectory));
    }

    json j{{"schema_version", 1},
           {"system", plan.system},
           {"t_end", t_end},
           {"dt", dt},
           {"max_rel_error",
            {{"f", report.f},
             {"g", report.g},
             {"g1", report.g1},
             {"g2", report.g2},
             {"h1", report.h1},
             {"h2", report.h2}}},
           {"max", report.max_error()},
           {"tol", plan.tol}};
    write_output(plan.out, j.dump(2));
    return report.max_error() <= plan.tol ? 0 : 1;
}

int run_blowup_profile(const RunPlan& plan) {
    const auto point_v = plan.options.at("point").get<std::vector<double>>();
    std::array<double, 3> point{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < point_v.size() && i < 3; ++i)
        point[i] = point_v[i];
    const auto n = plan.options.at("count").get<std::size_t>();
    const double ratio = plan.options.at("ratio").get<double>();
    const auto diag = blowup::profile_diagnostic_from_string(
        plan.options.at("diagnostic").get<std::string>());

    blowup::ProfileSeries series;
    if (is_oldroyd(plan.system)) {
        series = blowup::blowup_profile(plan.sweep_params.oldroyd, point, n,
                                        ratio, diag);
    } else if (is_ns(plan.system)) {
        series = blowup::blowup_profile_ns(plan.sweep_params.ns,
                                           system_dim(plan.system), point, n,
                                           ratio, diag);
    } else {
        series = blowup::blowup_profile_nsac(plan.sweep_params.phase, point, n,
                                             ratio, diag);
    }
    const auto fit = blowup::fit_exponent(series, series.t_blow);

    const std::string csv = plan.options.value("csv", std::string());
    if (!csv.empty()) write_output(csv, blowup::profile_to_csv(series));

    json j = json::parse(blowup::to_json(series, fit));
    json points = json::array();
    for (const auto& [t, v] : series.points) points.push_back({t, v});
    j["points"] = points;
    write_output(plan.out, j.dump(2));
    return 0;
}

int run_assumptions(const RunPlan& plan) {
    const auto ladder = plan.options.at("l_ladder").get<std::vector<double>>();
    const auto density = plan.options.at("density").get<std::size_t>();
    const double tol = plan.options.at("near_zero_tol").get<double>();
    blowup::AssumptionReport report;
    if (is_oldroyd(plan.system)) {
        report = blowup::check_assumptions(plan.sweep_params.oldroyd, ladder,
                                           density, tol);
    } else if (is_ns(plan.system)) {
        report = blowup::check_assumptions_ns(
            plan.sweep_params.ns, system_dim(plan.system), ladder, density, tol);
    } else {
        report = blowup::check_assumptions_ns(plan.sweep_params.phase.ns,
                                              system_dim(plan.system), ladder,
                                              density, tol);
        report.system = plan.system;
    }
    write_output(plan.out, blowup::to_json(report));
    return 0;
}

// ---------------------------------------------------------------------
// plan assembly
// ---------------------------------------------------------------------

RunPlan build_plan(const Cli& cli, const CLI::App* sub) {
    RunPlan plan;
    plan.command = cli.command;

    json config;
    if (!cli.config_file.empty()) {
        config = json::parse(read_file(cli.config_file), nullptr, false);
        if (config.is_discarded() || !config.is_object())
            blowup::fail(ErrorKind::BadInput, "malformed config JSON");
        if (config.value("command", cli.command) != cli.command)
            blowup::fail(ErrorKind::BadInput,
                         "config was dumped for a different subcommand");
    }

    auto flag_given = [&sub](const std::string& name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    auto pick_str = [&](const std::string& flag, const std::string& cli_value,
                        const char* key, std::string fallback) {
        if (flag_given(flag)) return cli_value;
        if (config.contains(key)) return config.at(key).get<std::string>();
        return fallback;
    };

    plan.system = pick_str("--system", cli.system, "system", "oldroyd");
    plan.out = pick_str("--out", cli.out, "out", "");
    const std::string mode_str = pick_str("--mode", cli.mode, "mode", "analytic");
    if (mode_str != "fd" && mode_str != "analytic")
        blowup::fail(ErrorKind::BadInput, "mode must be analytic or fd");
    plan.mode = mode_str == "fd" ? blowup::ResidualMode::FD
                                 : blowup::ResidualMode::Analytic;
    plan.perturb =
        parse_perturbation(pick_str("--perturb", cli.perturb, "perturb", "none"));

    if (config.contains("continuation"))
        plan.continuation = config.at("continuation").get<bool>();
    if (flag_given("--continuation")) plan.continuation = cli.continuation;

    if (config.contains("stencil")) {
        const auto& st = config.at("stencil");
        plan.stencil.h = st.at("h").get<double>();
        plan.stencil.k = st.at("k").get<double>();
        plan.stencil.order = st.at("order").get<int>();
    }
    if (flag_given("--h")) plan.stencil.h = cli.h;
    if (flag_given("--k")) plan.stencil.k = cli.k;
    if (flag_given("--order")) plan.stencil.order = cli.order;
    blowup::validate(plan.stencil);

    // params: explicit file > config > defaults for the system
    if (flag_given("--params")) {
        json p = json::parse(read_file(cli.params_file), nullptr, false);
        if (p.is_discarded())
            blowup::fail(ErrorKind::BadInput, "malformed params JSON");
        plan.params = p;
    } else if (config.contains("params")) {
        plan.params = config.at("params");
    } else {
        plan.params = params_defaults(plan.system);
    }
    resolve_params(plan);

    // tolerance defaults depend on command and mode
    if (flag_given("--tol")) {
        plan.tol = cli.tol;
    } else if (config.contains("tol")) {
        plan.tol = config.at("tol").get<double>();
    } else if (plan.command == "ode-check") {
        plan.tol = 1e-7;
    } else {
        plan.tol = plan.mode == blowup::ResidualMode::FD ? 1e-3 : 1e-8;
    }

    // grid: explicit flags > config > standard sweep
    const bool needs_grid = plan.command == "eval" || plan.command == "verify" ||
                            plan.command == "convergence";
    if (needs_grid) {
        plan.grid_used = true;
        // Convergence admissibility must hold for the largest step in
        // the list; filter the standard time ladder accordingly.
        blowup::StencilSpec filter = plan.stencil;
        if (plan.command == "convergence") {
            std::vector<double> hs;
            if (!flag_given("--h-list") && config.contains("options") &&
                config.at("options").contains("h_list")) {
                hs = config.at("options").at("h_list").get<std::vector<double>>();
            } else {
                hs = parse_double_list(cli.h_list_str);
            }
            double h_max = 0.0;
            for (double v : hs) h_max = std::max(h_max, v);
            filter.k = (plan.stencil.k / plan.stencil.h) * h_max;
            filter.h = h_max;
            plan.options["h_list"] = hs;
        }
        const auto mode_for_grid = plan.command == "convergence"
                                       ? blowup::ResidualMode::FD
                                       : plan.mode;
        plan.grid = blowup::standard_sweep_grid(primary_sweep_system(plan.system),
                                                plan.sweep_params, mode_for_grid,
                                                filter);
        if (config.contains("grid")) plan.grid = grid_from_json(config.at("grid"));
        if (flag_given("--grid")) plan.grid.axes = parse_grid_axes(cli.grid_str);
        if (flag_given("--times")) plan.grid.times = parse_double_list(cli.times_str);
        blowup::validate(plan.grid);
    }

    auto pick_opt = [&](const char* key, json fallback) {
        if (config.contains("options") && config.at("options").contains(key))
            return config.at("options").at(key);
        return fallback;
    };

    if (plan.command == "ode-check") {
        double t_end;
        if (flag_given("--t-end")) {
            t_end = cli.t_end;
        } else {
            const auto bt = blowup::blow_up_time(plan.sweep_params.oldroyd);
            const double fallback = bt.finite() ? 0.9 * *bt.t_star : 1.0;
            t_end = pick_opt("t_end", fallback).get<double>();
        }
        plan.options["t_end"] = t_end;
        plan.options["dt"] =
            flag_given("--dt") ? cli.dt : pick_opt("dt", cli.dt).get<double>();
        plan.options["csv"] = flag_given("--csv")
                                  ? cli.csv_path
                                  : pick_opt("csv", "").get<std::string>();
    } else if (plan.command == "blowup-profile") {
        std::vector<double> point;
        if (flag_given("--point")) {
            point = parse_double_list(cli.point_str);
        } else if (pick_opt("point", json()).is_array()) {
            point = pick_opt("point", json()).get<std::vector<double>>();
        } else if (is_oldroyd(plan.system)) {
            point = {1.0, 1.0};
        } else {
            point = std::vector<double>(system_dim(plan.system), 0.0);
        }
        plan.options["point"] = point;
        plan.options["ratio"] = flag_given("--ratio")
                                    ? cli.ratio
                                    : pick_opt("ratio", cli.ratio).get<double>();
        plan.options["count"] =
            flag_given("--count") ? cli.count
                                  : pick_opt("count", cli.count).get<std::size_t>();
        plan.options["diagnostic"] =
            flag_given("--diagnostic")
                ? cli.diagnostic
                : pick_opt("diagnostic", cli.diagnostic).get<std::string>();
        plan.options["csv"] = flag_given("--csv")
                                  ? cli.csv_path
                                  : pick_opt("csv", "").get<std::string>();
    } else if (plan.command == "assumptions") {
        plan.options["l_ladder"] =
            flag_given("--l-ladder")
                ? json(parse_double_list(cli.ladder_str))
                : pick_opt("l_ladder", json(parse_double_list(cli.ladder_str)));
        plan.options["density"] =
            flag_given("--density")
                ? cli.density
                : pick_opt("density", cli.density).get<std::size_t>();
        plan.options["near_zero_tol"] =
            flag_given("--near-zero-tol")
                ? cli.near_zero_tol
                : pick_opt("near_zero_tol", cli.near_zero_tol).get<double>();
    }

    return plan;
}

int execute(const RunPlan& plan) {
    if (plan.command == "eval") {
        write_output(plan.out, eval_csv(plan));
        return 0;
    }
    if (plan.command == "verify") return run_verify(plan);
    if (plan.command == "convergence") return run_convergence(plan);
    if (plan.command == "ode-check") return run_ode_check(plan);
    if (plan.command == "blowup-profile") return run_blowup_profile(plan);
    if (plan.command == "assumptions") return run_assumptions(plan);
    blowup::fail(ErrorKind::BadInput, "unknown command: " + plan.command);
}

void emit_error(ErrorKind kind, const std::string& message) {
    json j{{"schema_version", 1},
           {"error",
            {{"kind", std::string(blowup::to_string(kind))},
             {"message", message}}}};
    std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    CLI::App app{"verification laboratory for explicit finite-time blow-up "
                 "solutions"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // keep -h free for --h

    auto add_common = [&cli](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");
        sub->add_option("--system", cli.system,
                        "oldroyd | ns2d | ns3d | nsac2d | nsac3d");
        sub->add_option("--params", cli.params_file, "params JSON file");
        sub->add_option("--out", cli.out, "output path (default stdout)");
        sub->add_option("--config", cli.config_file, "run config JSON file");
        sub->add_flag("--dump-config", cli.dump_config,
                      "print the resolved run config and exit");
        sub->add_flag("--continuation", cli.continuation,
                      "allow viscoelastic evaluation past the blow-up time");
    };
    auto add_grid = [&cli](CLI::App* sub) {
        sub->add_option("--grid", cli.grid_str, "axes as lo:hi:n[,lo:hi:n...]");
        sub->add_option("--times", cli.times_str, "comma-separated times");
    };
    auto add_stencil = [&cli](CLI::App* sub) {
        sub->add_option("--h", cli.h, "FD spatial step");
        sub->add_option("--k", cli.k, "FD temporal step");
        sub->add_option("--order", cli.order, "FD order (2 or 4)");
    };

    CLI::App* eval = app.add_subcommand("eval", "fields over a grid -> CSV");
    add_common(eval);
    add_grid(eval);
    add_stencil(eval);

    CLI::App* verify =
        app.add_subcommand("verify", "residual sweep -> JSON report");
    add_common(verify);
    add_grid(verify);
    add_stencil(verify);
    verify->add_option("--mode", cli.mode, "analytic | fd");
    verify->add_option("--tol", cli.tol,
                       "max relative residual for exit 0 "
                       "(default 1e-8 analytic, 1e-3 fd)");
    verify->add_option("--perturb", cli.perturb,
                       "none | flip-h1-exponent | wrong-wave-speed");

    CLI::App* conv = app.add_subcommand(
        "convergence", "FD order study over an h list -> JSON");
    add_common(conv);
    add_grid(conv);
    add_stencil(conv);
    conv->add_option("--h-list", cli.h_list_str, "decreasing steps");
    conv->add_option("--perturb", cli.perturb,
                     "none | flip-h1-exponent | wrong-wave-speed");

    CLI::App* ode = app.add_subcommand(
        "ode-check", "integrator vs closed forms -> JSON");
    add_common(ode);
    ode->add_option("--t-end", cli.t_end, "integration end (default 0.9 t*)");
    ode->add_option("--dt", cli.dt, "step size");
    ode->add_option("--tol", cli.tol, "max relative error for exit 0");
    ode->add_option("--csv", cli.csv_path, "also write the trajectory CSV");

    CLI::App* prof = app.add_subcommand(
        "blowup-profile", "geometric profile toward blow-up -> JSON (+CSV)");
    add_common(prof);
    prof->add_option("--point", cli.point_str, "sample point x1,x2[,x3]");
    prof->add_option("--ratio", cli.ratio, "geometric ratio in (0,1)");
    prof->add_option("--count", cli.count, "number of samples");
    prof->add_option("--diagnostic", cli.diagnostic,
                     "speed | anisotropy | pressure");
    prof->add_option("--csv", cli.csv_path, "also write the profile CSV");

    CLI::App* assume = app.add_subcommand(
        "assumptions", "small-data assumption audit -> JSON");
    add_common(assume);
    assume->add_option("--l-ladder", cli.ladder_str, "increasing lengths");
    assume->add_option("--density", cli.density, "grid points per axis");
    assume->add_option("--near-zero-tol", cli.near_zero_tol,
                       "threshold for 'near zero'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error(ErrorKind::BadInput, e.what());
        return 2;
    }

    const CLI::App* sub = app.get_subcommands().front();
    cli.command = sub->get_name();

    try {
        const RunPlan plan = build_plan(cli, sub);
        if (cli.dump_config) {
            std::cout << plan_to_json(plan).dump(2) << '\n';
            return 0;
        }
        return execute(plan);
    } catch (const Error& e) {
        emit_error(e.kind(), e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(ErrorKind::BadInput, e.what());
        return 2;
    }
}
