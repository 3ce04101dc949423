#include "blowup/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "blowup/fd.hpp"
#include "blowup/fields.hpp"
#include "blowup/grid.hpp"
#include "blowup/textio.hpp"

namespace blowup {

namespace {

double norm(const std::array<double, 3>& v, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += v[i] * v[i];
    return std::sqrt(s);
}

std::vector<SpaceTimePoint> box_grid(double L, int dim, std::size_t density) {
    GridSpec spec;
    for (int a = 0; a < dim; ++a) spec.axes.push_back({-L, L, density});
    spec.times = {0.0};
    return make_grid(spec);
}

// Satisfied when every ladder witness stays at or below the tolerance.
AssumptionStatus threshold_status(const std::vector<double>& witnesses,
                                  double tol) {
    for (double w : witnesses)
        if (w > tol) return AssumptionStatus::Violated;
    return AssumptionStatus::Satisfied;
}

// Decay surrogate: the outer-shell sup must not grow along the ladder.
AssumptionStatus decay_status(const std::vector<double>& shell_sups,
                              double tol) {
    for (std::size_t i = 1; i < shell_sups.size(); ++i)
        if (shell_sups[i] > shell_sups[i - 1] + tol)
            return AssumptionStatus::SurrogateViolated;
    return AssumptionStatus::SurrogateSatisfied;
}

void check_ladder(const std::vector<double>& ladder) {
    if (ladder.size() < 2)
        fail(ErrorKind::BadInput, "L ladder needs at least 2 lengths");
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        if (!(ladder[i] > 0.0)) fail(ErrorKind::BadInput, "L must be positive");
        if (i > 0 && !(ladder[i] > ladder[i - 1]))
            fail(ErrorKind::BadInput, "L ladder must be strictly increasing");
    }
}

ProfileSeries make_profile(double t_blow, std::size_t n, double ratio,
                           std::string label,
                           const std::function<double(double)>& diag_at) {
    if (n < 3) fail(ErrorKind::BadInput, "profile needs at least 3 samples");
    if (!(ratio > 0.0 && ratio < 1.0))
        fail(ErrorKind::BadInput, "ratio must lie in (0,1)");
    ProfileSeries series;
    series.label = std::move(label);
    series.t_blow = t_blow;
    double r_pow = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
        r_pow *= ratio;
        const double t = t_blow * (1.0 - r_pow);
        series.points.emplace_back(t, diag_at(t));
    }
    return series;
}

}  // namespace

std::string_view to_string(AssumptionStatus status) {
    switch (status) {
        case AssumptionStatus::Satisfied: return "satisfied";
        case AssumptionStatus::Violated: return "violated";
        case AssumptionStatus::SurrogateSatisfied: return "surrogate-satisfied";
        case AssumptionStatus::SurrogateViolated: return "surrogate-violated";
    }
    return "violated";
}

const AssumptionFinding& AssumptionReport::find(std::string_view name) const {
    for (const auto& f : findings)
        if (f.name == name) return f;
    fail(ErrorKind::BadInput, "no such assumption: " + std::string(name));
}

AssumptionReport check_assumptions(const OldroydParams& p,
                                   const std::vector<double>& l_ladder,
                                   std::size_t density, double near_zero_tol) {
    validate(p);
    check_ladder(l_ladder);
    if (density < 3) fail(ErrorKind::BadInput, "density must be >= 3");

    AssumptionReport report;
    report.system = "oldroyd";
    report.l_ladder = l_ladder;
    report.density = density;
    report.near_zero_tol = near_zero_tol;

    std::vector<double> sup_u0, shell_u0;
    std::vector<double> sup_det_err, sup_phi_dist, sup_divF, sup_F_dist,
        shell_F_dist;

    for (double L : l_ladder) {
        double su = 0.0, sh_u = 0.0;
        double det_err = 0.0, phi_dist = 0.0, divF = 0.0, F_dist = 0.0,
               sh_F = 0.0;
        for (const auto& pt : box_grid(L, 2, density)) {
            const FieldSample fs = oldroyd_eval(p, pt.x, 0.0);
            const double speed = norm(fs.u, 2);
            su = std::max(su, speed);
            // phi0 distance from the reference vector a = (-x2, x1)
            const auto& phi = *fs.phi_vec;
            const double pd = std::hypot(phi[0] - (-pt.x[1]), phi[1] - pt.x[0]);
            phi_dist = std::max(phi_dist, pd);
            // F0 = diag(h1(0), h2(0)); h(0) = 1 exactly, so these
            // witnesses are exact zeros for the unperturbed family.
            const auto& Fd = *fs.F_diag;
            det_err = std::max(det_err, std::abs(Fd[0] * Fd[1] - 1.0));
            const double fdist =
                std::max(std::abs(Fd[0] - 1.0), std::abs(Fd[1] - 1.0));
            F_dist = std::max(F_dist, fdist);
            divF = 0.0;  // F is spatially constant

            const double r = norm(pt.x, 2);
            if (r >= 0.5 * L && r <= L) {
                sh_u = std::max(sh_u, speed);
                sh_F = std::max(sh_F, fdist);
            }
        }
        sup_u0.push_back(su);
        shell_u0.push_back(sh_u);
        sup_det_err.push_back(det_err);
        sup_phi_dist.push_back(phi_dist);
        sup_divF.push_back(divF);
        sup_F_dist.push_back(F_dist);
        shell_F_dist.push_back(sh_F);
    }

    const double tol = near_zero_tol;
    report.findings.push_back(
        {"A1", threshold_status(sup_u0, tol), {{"sup_u0", sup_u0}}, {}});
    report.findings.push_back({"A2",
                               threshold_status(sup_det_err, tol) ==
                                           AssumptionStatus::Satisfied &&
                                       threshold_status(sup_phi_dist, tol) ==
                                           AssumptionStatus::Satisfied
                                   ? AssumptionStatus::Satisfied
                                   : AssumptionStatus::Violated,
                               {{"sup_det_gradperp_phi0_minus_1", sup_det_err},
                                {"sup_phi0_minus_a", sup_phi_dist}},
                               {}});
    report.findings.push_back({"A3",
                               decay_status(shell_u0, tol) ==
                                           AssumptionStatus::SurrogateSatisfied &&
                                       decay_status(shell_F_dist, tol) ==
                                           AssumptionStatus::SurrogateSatisfied
                                   ? AssumptionStatus::SurrogateSatisfied
                                   : AssumptionStatus::SurrogateViolated,
                               {{"shell_sup_u0", shell_u0},
                                {"shell_sup_gradperp_phi0_minus_a", shell_F_dist}},
                               {}});
    report.findings.push_back(
        {"A1'", threshold_status(sup_u0, tol), {{"sup_u0", sup_u0}}, {}});
    report.findings.push_back({"A2'",
                               threshold_status(sup_det_err, tol) ==
                                           AssumptionStatus::Satisfied &&
                                       threshold_status(sup_divF, tol) ==
                                           AssumptionStatus::Satisfied &&
                                       threshold_status(sup_F_dist, tol) ==
                                           AssumptionStatus::Satisfied
                                   ? AssumptionStatus::Satisfied
                                   : AssumptionStatus::Violated,
                               {{"sup_det_F0_minus_1", sup_det_err},
                                {"sup_div_F0", sup_divF},
                                {"sup_F0_minus_I", sup_F_dist}},
                               {}});
    report.findings.push_back({"A3'",
                               decay_status(shell_u0, tol) ==
                                           AssumptionStatus::SurrogateSatisfied &&
                                       decay_status(shell_F_dist, tol) ==
                                           AssumptionStatus::SurrogateSatisfied
                                   ? AssumptionStatus::SurrogateSatisfied
                                   : AssumptionStatus::SurrogateViolated,
                               {{"shell_sup_u0", shell_u0},
                                {"shell_sup_F0_minus_I", shell_F_dist}},
                               {}});
    return report;
}

AssumptionReport check_assumptions_ns(const NSParams& p, int dim,
                                      const std::vector<double>& l_ladder,
                                      std::size_t density,
                                      double near_zero_tol) {
    validate(p);
    check_ladder(l_ladder);
    if (density < 3) fail(ErrorKind::BadInput, "density must be >= 3");
    if (dim != 2 && dim != 3) fail(ErrorKind::BadInput, "dim must be 2 or 3");

    AssumptionReport report;
    report.system = dim == 2 ? "ns2d" : "ns3d";
    report.l_ladder = l_ladder;
    report.density = density;
    report.near_zero_tol = near_zero_tol;

    std::vector<double> sup_u0, shell_u0;
    for (double L : l_ladder) {
        double su = 0.0, sh = 0.0;
        for (const auto& pt : box_grid(L, dim, density)) {
            const double speed = norm(ns_eval(p, pt.x, 0.0, dim).u, dim);
            su = std::max(su, speed);
            const double r = norm(pt.x, dim);
            if (r >= 0.5 * L && r <= L) sh = std::max(sh, speed);
        }
        sup_u0.push_back(su);
        shell_u0.push_back(sh);
    }
    report.findings.push_back({"A1", threshold_status(sup_u0, near_zero_tol),
                               {{"sup_u0", sup_u0}}, {}});
    report.findings.push_back({"A3", decay_status(shell_u0, near_zero_tol),
                               {{"shell_sup_u0", shell_u0}}, {}});
    return report;
}

std::string_view to_string(ProfileDiagnostic d) {
    switch (d) {
        case ProfileDiagnostic::Speed: return "speed";
        case ProfileDiagnostic::Anisotropy: return "anisotropy";
        case ProfileDiagnostic::Pressure: return "pressure";
    }
    return "speed";
}

ProfileDiagnostic profile_diagnostic_from_string(std::string_view s) {
    if (s == "speed") return ProfileDiagnostic::Speed;
    if (s == "anisotropy") return ProfileDiagnostic::Anisotropy;
    if (s == "pressure") return ProfileDiagnostic::Pressure;
    fail(ErrorKind::BadInput, "unknown diagnostic: " + std::string(s));
}

ProfileSeries blowup_profile(const OldroydParams& p,
                             const std::array<double, 3>& point, std::size_t n,
                             double ratio, ProfileDiagnostic diag) {
    validate(p);
    const BlowUpTime bt = blow_up_time(p);
    if (!bt.finite())
        fail(ErrorKind::NoBlowUp, "this parameter set does not blow up");
    auto diag_at = [&](double t) -> double {
        switch (diag) {
            case ProfileDiagnostic::Speed: {
                const FieldSample fs = oldroyd_eval(p, point, t);
                return norm(fs.u, 2);
            }
            case ProfileDiagnostic::Anisotropy:
                return deformation_metrics(p, t).anisotropy;
            case ProfileDiagnostic::Pressure:
                return std::abs(*oldroyd_eval(p, point, t).P);
        }
        return 0.0;
    };
    return make_profile(*bt.t_star, n, ratio,
                        "oldroyd " + std::string(to_string(diag)), diag_at);
}

ProfileSeries blowup_profile_ns(const NSParams& p, int dim,
                                const std::array<double, 3>& point,
                                std::size_t n, double ratio,
                                ProfileDiagnostic diag) {
    validate(p);
    if (diag == ProfileDiagnostic::Anisotropy)
        fail(ErrorKind::BadInput,
             "anisotropy applies to the viscoelastic family only");
    auto diag_at = [&](double t) -> double {
        const FieldSample fs = ns_eval(p, point, t, dim);
        if (diag == ProfileDiagnostic::Pressure) return std::abs(*fs.p);
        return norm(fs.u, dim);
    };
    return make_profile(p.t, n, ratio,
                        (dim == 2 ? "ns2d " : "ns3d ") +
                            std::string(to_string(diag)),
                        diag_at);
}

ProfileSeries blowup_profile_nsac(const PhaseFieldParams& p,
                                  const std::array<double, 3>& point,
                                  std::size_t n, double ratio,
                                  ProfileDiagnostic diag) {
    validate(p);
    if (diag == ProfileDiagnostic::Anisotropy)
        fail(ErrorKind::BadInput,
             "anisotropy applies to the viscoelastic family only");
    auto diag_at = [&](double t) -> double {
        const FieldSample fs = nsac_eval(p, point, t);
        if (diag == ProfileDiagnostic::Pressure) return std::abs(*fs.P);
        return norm(fs.u, p.dimension);
    };
    return make_profile(p.ns.t, n, ratio,
                        (p.dimension == 2 ? "nsac2d " : "nsac3d ") +
                            std::string(to_string(diag)),
                        diag_at);
}

ExponentFit fit_exponent(const ProfileSeries& series, double t_blow) {
    if (series.points.size() < 3)
        fail(ErrorKind::BadInput, "exponent fit needs at least 3 points");
    std::vector<double> xs, ys;
    for (const auto& [t, v] : series.points) {
        if (!(v > 0.0))
            fail(ErrorKind::NonPositiveValue,
                 "profile values must be positive for the log fit");
        const double gap = t_blow - t;
        if (!(gap > 0.0))
            fail(ErrorKind::BadInput, "profile time at or past t_blow");
        xs.push_back(std::log(gap));
        ys.push_back(std::log(v));
    }
    const LineFit fit = fit_line(xs, ys);
    return ExponentFit{fit.slope, fit.slope_stderr};
}

DeformationMetrics deformation_metrics(const OldroydParams& p, double t,
                                       bool continuation) {
    const OldroydAmplitudes a = oldroyd_amplitudes(p, t, continuation);
    DeformationMetrics m;
    m.det = a.h1 * a.h2;
    m.anisotropy = std::max(a.h1, a.h2) / std::min(a.h1, a.h2);
    return m;
}

double interface_width(double epsilon, double theta) {
    if (!(epsilon > 0.0)) fail(ErrorKind::NonPositive, "epsilon must be positive");
    if (!(theta > 0.0 && theta < 1.0))
        fail(ErrorKind::BadThreshold, "threshold must lie strictly in (0,1)");
    return 4.0 * epsilon * std::atanh(theta);
}

std::string to_json(const AssumptionReport& report) {
    using json = nlohmann::ordered_json;
    json findings = json::array();
    for (const auto& f : report.findings) {
        json witnesses;
        for (const auto& [name, series] : f.witness_series) witnesses[name] = series;
        for (const auto& [name, value] : f.witness_scalars) witnesses[name] = value;
        findings.push_back({{"name", f.name},
                            {"status", std::string(to_string(f.status))},
                            {"witnesses", witnesses}});
    }
    json j{{"schema_version", 1},
           {"system", report.system},
           {"l_ladder", report.l_ladder},
           {"density", report.density},
           {"near_zero_tol", report.near_zero_tol},
           {"assumptions", findings}};
    return j.dump(2);
}

std::string profile_to_csv(const ProfileSeries& series) {
    std::string out = "t,value\n";
    for (const auto& [t, v] : series.points) {
        out += format_double(t);
        out += ',';
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string to_json(const ProfileSeries& series, const ExponentFit& fit) {
    using json = nlohmann::ordered_json;
    json j{{"schema_version", 1},
           {"label", series.label},
           {"t_blow", series.t_blow},
           {"count", series.points.size()},
           {"slope", fit.slope},
           {"slope_stderr", fit.stderr_slope}};
    return j.dump(2);
}

}  // namespace blowup
