#include "blowup/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace blowup {

namespace {

// Accumulates one equation component as a signed sum of terms while
// tracking the largest term magnitude (the scale reference).
struct TermSum {
    double value = 0.0;
    double scale = 0.0;

    void add(double term) {
        value += term;
        scale = std::max(scale, std::abs(term));
    }
};

ResidualComponent component(std::string name, const TermSum& ts) {
    return ResidualComponent{std::move(name), ts.value, ts.scale};
}

std::string idx_name(const char* base, int i) {
    return std::string(base) + "_" + std::to_string(i + 1);
}

// ---------------------------------------------------------------------
// analytic assembly
// ---------------------------------------------------------------------

// Momentum residual u_t + (u.grad)u + grad_pressure - nu lap(u) +
// lambda * stress_div, one component per spatial index.
void momentum_from_jet(ResidualVector& out, const DerivativeJet& jet, double nu,
                       double lambda, const std::array<double, 3>& grad_pressure,
                       const std::array<double, 3>& stress_div,
                       bool with_stress) {
    for (int i = 0; i < jet.dim; ++i) {
        TermSum ts;
        ts.add(jet.u_t[i]);
        double convect = 0.0;
        for (int k = 0; k < jet.dim; ++k) convect += jet.u[k] * jet.grad_u[i][k];
        ts.add(convect);
        ts.add(grad_pressure[i]);
        ts.add(-nu * jet.lap_u[i]);
        if (with_stress) ts.add(lambda * stress_div[i]);
        out.components.push_back(component(idx_name("momentum", i), ts));
    }
}

void div_u_from_jet(ResidualVector& out, const DerivativeJet& jet) {
    TermSum ts;
    for (int i = 0; i < jet.dim; ++i) ts.add(jet.grad_u[i][i]);
    out.components.push_back(component("div_u", ts));
}

// div(grad phi (x) grad phi)_j = sum_i d_i(d_i phi . d_j phi), expanded
// by the product rule over the jet's first/second derivatives.
std::array<double, 3> stress_div_from_jet(const DerivativeJet& jet) {
    std::array<double, 3> div{0.0, 0.0, 0.0};
    for (int j = 0; j < jet.dim; ++j) {
        double sum = 0.0;
        for (int i = 0; i < jet.dim; ++i) {
            for (int c = 0; c < jet.phi_components; ++c) {
                sum += jet.hess_phi[c][i][i] * jet.grad_phi[c][j] +
                       jet.grad_phi[c][i] * jet.hess_phi[c][i][j];
            }
        }
        div[j] = sum;
    }
    return div;
}

ResidualVector analytic_oldroyd_transformed(const OldroydParams& p,
                                            const DerivativeJet& jet) {
    ResidualVector out;
    momentum_from_jet(out, jet, p.nu, p.lambda, jet.grad_P,
                      stress_div_from_jet(jet), true);
    div_u_from_jet(out, jet);
    for (int c = 0; c < 2; ++c) {
        TermSum ts;
        ts.add(jet.phi_t[c]);
        double convect = 0.0;
        for (int k = 0; k < 2; ++k) convect += jet.u[k] * jet.grad_phi[c][k];
        ts.add(convect);
        out.components.push_back(component(idx_name("transport_phi", c), ts));
    }
    return out;
}

ResidualVector analytic_oldroyd_original(const OldroydParams& p,
                                         const DerivativeJet& jet) {
    ResidualVector out;
    // F = diag(h1, h2) is spatially constant, so div(F F^T) vanishes
    // term by term; the FD path recomputes it from the fields.
    std::array<double, 3> div_fft{0.0, 0.0, 0.0};
    momentum_from_jet(out, jet, p.nu, -p.lambda, jet.grad_p, div_fft, true);
    div_u_from_jet(out, jet);

    const double F[2][2] = {{jet.F_diag[0], 0.0}, {0.0, jet.F_diag[1]}};
    const double F_t[2][2] = {{jet.F_diag_t[0], 0.0}, {0.0, jet.F_diag_t[1]}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            TermSum ts;
            ts.add(F_t[i][j]);
            ts.add(0.0);  // u . grad F: F is spatially constant
            double gradu_f = 0.0;
            for (int k = 0; k < 2; ++k) gradu_f += jet.grad_u[i][k] * F[k][j];
            ts.add(-gradu_f);
            out.components.push_back(component(
                "def_transport_" + std::to_string(i + 1) + std::to_string(j + 1),
                ts));
        }
    }
    for (int j = 0; j < 2; ++j) {
        TermSum ts;
        for (int i = 0; i < 2; ++i) ts.add(0.0);  // d_i F_ij = 0
        out.components.push_back(component(idx_name("div_F", j), ts));
    }
    return out;
}

ResidualVector analytic_ns(const NSParams& p, const DerivativeJet& jet) {
    ResidualVector out;
    momentum_from_jet(out, jet, p.nu, 0.0, jet.grad_p, {}, false);
    div_u_from_jet(out, jet);
    return out;
}

ResidualVector analytic_nsac(const PhaseFieldParams& p, const DerivativeJet& jet) {
    ResidualVector out;
    momentum_from_jet(out, jet, p.ns.nu, p.lambda, jet.grad_P,
                      stress_div_from_jet(jet), true);
    div_u_from_jet(out, jet);

    TermSum ts;
    ts.add(jet.phi_t[0]);
    double convect = 0.0;
    for (int k = 0; k < jet.dim; ++k) convect += jet.u[k] * jet.grad_phi[0][k];
    ts.add(convect);
    const double phi = jet.phi[0];
    const double lap_phi = jet.dim * jet.hess_phi[0][0][0];
    switch (p.variant) {
        case PhaseVariant::AllenCahn:
            ts.add(-p.gamma * lap_phi);
            ts.add(p.gamma * double_well_prime(phi, p.epsilon));
            break;
        case PhaseVariant::CahnHilliard: {
            // The phase function depends on space through s alone, so
            // Lap^2 phi = dim^2 phi_ssss and Lap f(phi) expands by the
            // chain rule in s. Both terms are evaluated independently;
            // their near-cancellation is the point of the check.
            const double bih_phi = jet.dim * jet.dim * jet.phi_s4;
            const double phi_s = jet.grad_phi[0][0];
            const double phi_ss = jet.hess_phi[0][0][0];
            const double eps2 = p.epsilon * p.epsilon;
            const double fp = (3.0 * phi * phi - 1.0) / eps2;
            const double fpp = 6.0 * phi / eps2;
            const double lap_f = jet.dim * (fp * phi_ss + fpp * phi_s * phi_s);
            ts.add(p.gamma * bih_phi);
            ts.add(-p.gamma * lap_f);
            break;
        }
        case PhaseVariant::TransportOnly:
            break;
    }
    out.components.push_back(component("phase", ts));
    return out;
}

// ---------------------------------------------------------------------
// finite-difference assembly
// ---------------------------------------------------------------------

double fd_t_max(double t_blow) {
    return std::isfinite(t_blow) ? 0.99 * t_blow
                                 : std::numeric_limits<double>::infinity();
}

using FieldFn = std::function<double(const std::array<double, 3>&, double)>;

ScalarField field(FieldFn fn, double t_max) {
    return ScalarField{std::move(fn), 0.0, t_max};
}

struct FdMomentumInput {
    std::array<ScalarField, 3> u;
    ScalarField pressure;
    std::array<double, 3> u_value;  // undifferentiated velocity at the point
    int dim;
};

void fd_momentum(ResidualVector& out, const FdMomentumInput& in,
                 const std::array<double, 3>& x, double t, double nu,
                 double lambda, const std::array<double, 3>& stress_div,
                 bool with_stress, const StencilSpec& spec) {
    for (int i = 0; i < in.dim; ++i) {
        TermSum ts;
        ts.add(fd_partial(in.u[i], x, t, time_axis, spec));
        double convect = 0.0;
        for (int k = 0; k < in.dim; ++k)
            convect += in.u_value[k] * fd_partial(in.u[i], x, t, k, spec);
        ts.add(convect);
        ts.add(fd_partial(in.pressure, x, t, i, spec));
        ts.add(-nu * fd_laplacian(in.u[i], x, t, in.dim, spec));
        if (with_stress) ts.add(lambda * stress_div[i]);
        out.components.push_back(component(idx_name("momentum", i), ts));
    }
}

void fd_div_u(ResidualVector& out, const std::array<ScalarField, 3>& u, int dim,
              const std::array<double, 3>& x, double t,
              const StencilSpec& spec) {
    TermSum ts;
    for (int i = 0; i < dim; ++i) ts.add(fd_partial(u[i], x, t, i, spec));
    out.components.push_back(component("div_u", ts));
}

// FD counterpart of stress_div_from_jet, for n_phi scalar components.
std::array<double, 3> fd_stress_div(const std::vector<ScalarField>& phi,
                                    int dim, const std::array<double, 3>& x,
                                    double t, const StencilSpec& spec) {
    std::array<double, 3> div{0.0, 0.0, 0.0};
    for (int j = 0; j < dim; ++j) {
        double sum = 0.0;
        for (int i = 0; i < dim; ++i) {
            for (const auto& phic : phi) {
                sum += fd_second(phic, x, t, i, spec) *
                           fd_partial(phic, x, t, j, spec) +
                       fd_partial(phic, x, t, i, spec) *
                           fd_mixed(phic, x, t, i, j, spec);
            }
        }
        div[j] = sum;
    }
    return div;
}

ResidualVector fd_oldroyd(const OldroydParams& p, const std::array<double, 3>& x,
                          double t, const StencilSpec& spec,
                          Perturbation perturb, bool original) {
    const double t_max = fd_t_max(
        blow_up_time(p).finite() ? *blow_up_time(p).t_star
                                 : std::numeric_limits<double>::infinity());

    auto sample = [p, perturb](const std::array<double, 3>& y, double s) {
        return oldroyd_eval(p, y, s, false, perturb);
    };
    FdMomentumInput in;
    in.dim = 2;
    for (int i = 0; i < 2; ++i)
        in.u[i] = field([sample, i](const auto& y, double s) {
            return sample(y, s).u[i];
        }, t_max);
    in.pressure = field([sample, original](const auto& y, double s) {
        const FieldSample fs = sample(y, s);
        return original ? *fs.p : *fs.P;
    }, t_max);
    const FieldSample at_point = sample(x, t);
    in.u_value = at_point.u;

    std::vector<ScalarField> phi(2);
    for (int c = 0; c < 2; ++c)
        phi[c] = field([sample, c](const auto& y, double s) {
            return (*sample(y, s).phi_vec)[c];
        }, t_max);

    ResidualVector out;
    if (!original) {
        fd_momentum(out, in, x, t, p.nu, p.lambda,
                    fd_stress_div(phi, 2, x, t, spec), true, spec);
        fd_div_u(out, in.u, 2, x, t, spec);
        for (int c = 0; c < 2; ++c) {
            TermSum ts;
            ts.add(fd_partial(phi[c], x, t, time_axis, spec));
            double convect = 0.0;
            for (int k = 0; k < 2; ++k)
                convect += in.u_value[k] * fd_partial(phi[c], x, t, k, spec);
            ts.add(convect);
            out.components.push_back(component(idx_name("transport_phi", c), ts));
        }
        return out;
    }

    // original form: deformation-tensor fields F_ij
    ScalarField F[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            F[i][j] = field([sample, i, j](const auto& y, double s) {
                const auto d = *sample(y, s).F_diag;
                return i == j ? d[i] : 0.0;
            }, t_max);
    double F_value[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            F_value[i][j] = (i == j) ? (*at_point.F_diag)[i] : 0.0;

    // div(F F^T)_j = sum_{i,k} (d_i F_ik) F_jk + F_ik (d_i F_jk)
    std::array<double, 3> div_fft{0.0, 0.0, 0.0};
    for (int j = 0; j < 2; ++j) {
        double sum = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                sum += fd_partial(F[i][k], x, t, i, spec) * F_value[j][k] +
                       F_value[i][k] * fd_partial(F[j][k], x, t, i, spec);
        div_fft[j] = sum;
    }

    fd_momentum(out, in, x, t, p.nu, -p.lambda, div_fft, true, spec);
    fd_div_u(out, in.u, 2, x, t, spec);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            TermSum ts;
            ts.add(fd_partial(F[i][j], x, t, time_axis, spec));
            double convect = 0.0;
            for (int k = 0; k < 2; ++k)
                convect += in.u_value[k] * fd_partial(F[i][j], x, t, k, spec);
            ts.add(convect);
            double gradu_f = 0.0;
            for (int k = 0; k < 2; ++k)
                gradu_f += fd_partial(in.u[i], x, t, k, spec) * F_value[k][j];
            ts.add(-gradu_f);
            out.components.push_back(component(
                "def_transport_" + std::to_string(i + 1) + std::to_string(j + 1),
                ts));
        }
    }
    for (int j = 0; j < 2; ++j) {
        TermSum ts;
        for (int i = 0; i < 2; ++i) ts.add(fd_partial(F[i][j], x, t, i, spec));
        out.components.push_back(component(idx_name("div_F", j), ts));
    }
    return out;
}

ResidualVector fd_ns(const NSParams& p, const std::array<double, 3>& x, double t,
                     int dim, const StencilSpec& spec) {
    const double t_max = fd_t_max(p.t);
    FdMomentumInput in;
    in.dim = dim;
    for (int i = 0; i < dim; ++i)
        in.u[i] = field([p, dim, i](const auto& y, double s) {
            return ns_eval(p, y, s, dim).u[i];
        }, t_max);
    in.pressure = field([p, dim](const auto& y, double s) {
        return *ns_eval(p, y, s, dim).p;
    }, t_max);
    in.u_value = ns_eval(p, x, t, dim).u;

    ResidualVector out;
    fd_momentum(out, in, x, t, p.nu, 0.0, {}, false, spec);
    fd_div_u(out, in.u, dim, x, t, spec);
    return out;
}

ResidualVector fd_nsac(const PhaseFieldParams& p, const std::array<double, 3>& x,
                       double t, const StencilSpec& spec, Perturbation perturb) {
    const int dim = p.dimension;
    const double t_max = fd_t_max(p.ns.t);
    auto sample = [p, perturb](const std::array<double, 3>& y, double s) {
        return nsac_eval(p, y, s, perturb);
    };
    FdMomentumInput in;
    in.dim = dim;
    for (int i = 0; i < dim; ++i)
        in.u[i] = field([sample, i](const auto& y, double s) {
            return sample(y, s).u[i];
        }, t_max);
    in.pressure = field([sample](const auto& y, double s) {
        return *sample(y, s).P;
    }, t_max);
    const FieldSample at_point = sample(x, t);
    in.u_value = at_point.u;

    std::vector<ScalarField> phi(1);
    phi[0] = field([sample](const auto& y, double s) {
        return *sample(y, s).phi;
    }, t_max);

    ResidualVector out;
    fd_momentum(out, in, x, t, p.ns.nu, p.lambda,
                fd_stress_div(phi, dim, x, t, spec), true, spec);
    fd_div_u(out, in.u, dim, x, t, spec);

    TermSum ts;
    ts.add(fd_partial(phi[0], x, t, time_axis, spec));
    double convect = 0.0;
    for (int k = 0; k < dim; ++k)
        convect += in.u_value[k] * fd_partial(phi[0], x, t, k, spec);
    ts.add(convect);
    switch (p.variant) {
        case PhaseVariant::AllenCahn:
            ts.add(-p.gamma * fd_laplacian(phi[0], x, t, dim, spec));
            ts.add(p.gamma * double_well_prime(*at_point.phi, p.epsilon));
            break;
        case PhaseVariant::CahnHilliard: {
            ScalarField f_of_phi = field(
                [sample, eps = p.epsilon](const auto& y, double s) {
                    return double_well_prime(*sample(y, s).phi, eps);
                },
                t_max);
            ts.add(p.gamma * fd_biharmonic(phi[0], x, t, dim, spec));
            ts.add(-p.gamma * fd_laplacian(f_of_phi, x, t, dim, spec));
            break;
        }
        case PhaseVariant::TransportOnly:
            break;
    }
    out.components.push_back(component("phase", ts));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------

std::string_view to_string(ResidualMode mode) {
    return mode == ResidualMode::Analytic ? "analytic" : "fd";
}

std::string_view to_string(SweepSystem system) {
    switch (system) {
        case SweepSystem::OldroydTransformed: return "oldroyd-transformed";
        case SweepSystem::OldroydOriginal: return "oldroyd-original";
        case SweepSystem::NS2D: return "ns2d";
        case SweepSystem::NS3D: return "ns3d";
        case SweepSystem::NSAC2D: return "nsac2d";
        case SweepSystem::NSAC3D: return "nsac3d";
    }
    return "unknown";
}

double ResidualComponent::relative() const {
    return std::abs(value) / std::max(scale, 1.0);
}

double ResidualVector::max_relative() const {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, c.relative());
    return m;
}

ResidualVector residual_oldroyd_transformed(const OldroydParams& p,
                                            const std::array<double, 3>& x,
                                            double t, ResidualMode mode,
                                            const StencilSpec& stencil,
                                            Perturbation perturb,
                                            bool continuation) {
    validate(p);
    if (mode == ResidualMode::Analytic)
        return analytic_oldroyd_transformed(p,
                                            oldroyd_jet(p, x, t, continuation, perturb));
    return fd_oldroyd(p, x, t, stencil, perturb, /*original=*/false);
}

ResidualVector residual_oldroyd_original(const OldroydParams& p,
                                         const std::array<double, 3>& x,
                                         double t, ResidualMode mode,
                                         const StencilSpec& stencil,
                                         Perturbation perturb,
                                         bool continuation) {
    validate(p);
    if (mode == ResidualMode::Analytic)
        return analytic_oldroyd_original(p,
                                         oldroyd_jet(p, x, t, continuation, perturb));
    return fd_oldroyd(p, x, t, stencil, perturb, /*original=*/true);
}

ResidualVector residual_ns(const NSParams& p, const std::array<double, 3>& x,
                           double t, ResidualMode mode, int dim,
                           const StencilSpec& stencil) {
    validate(p);
    if (mode == ResidualMode::Analytic) return analytic_ns(p, ns_jet(p, x, t, dim));
    return fd_ns(p, x, t, dim, stencil);
}

ResidualVector residual_nsac(const PhaseFieldParams& p,
                             const std::array<double, 3>& x, double t,
                             ResidualMode mode, const StencilSpec& stencil,
                             Perturbation perturb) {
    validate(p);
    if (mode == ResidualMode::Analytic)
        return analytic_nsac(p, nsac_jet(p, x, t, perturb));
    return fd_nsac(p, x, t, stencil, perturb);
}

double ResidualReport::max_rel() const {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, c.sup_rel);
    return m;
}

double ResidualReport::max_abs() const {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, c.sup_abs);
    return m;
}

double system_t_max(SweepSystem system, const SweepParams& params) {
    switch (system) {
        case SweepSystem::OldroydTransformed:
        case SweepSystem::OldroydOriginal: {
            const BlowUpTime bt = blow_up_time(params.oldroyd);
            return bt.finite() ? *bt.t_star
                               : std::numeric_limits<double>::infinity();
        }
        case SweepSystem::NS2D:
        case SweepSystem::NS3D:
            return params.ns.t;
        case SweepSystem::NSAC2D:
        case SweepSystem::NSAC3D:
            return params.phase.ns.t;
    }
    return std::numeric_limits<double>::infinity();
}

GridSpec standard_sweep_grid(SweepSystem system, const SweepParams& params,
                             ResidualMode mode, const StencilSpec& stencil) {
    int dim = 2;
    if (system == SweepSystem::NS3D || system == SweepSystem::NSAC3D) dim = 3;
    const double horizon_raw = system_t_max(system, params);
    const double horizon = std::isfinite(horizon_raw) ? horizon_raw : 1.0;

    GridSpec grid;
    const std::size_t count = (dim == 2) ? 21 : 11;
    for (int a = 0; a < dim; ++a) grid.axes.push_back({-1.0, 1.0, count});
    for (int j = 0; j <= 9; ++j) {
        const double t = 0.1 * j * horizon;
        if (mode == ResidualMode::FD) {
            if (t - 2.0 * stencil.k < 0.0) continue;
            if (t + 2.0 * stencil.k > 0.99 * horizon_raw) continue;
        }
        grid.times.push_back(t);
    }
    return grid;
}

ResidualReport residual_sweep(SweepSystem system, const SweepParams& params,
                              const GridSpec& grid, ResidualMode mode,
                              const StencilSpec& stencil, Perturbation perturb,
                              bool continuation) {
    validate(grid);
    if (mode == ResidualMode::FD) validate(stencil);
    const int want_dim =
        (system == SweepSystem::NS3D || system == SweepSystem::NSAC3D) ? 3 : 2;
    if (grid.dim() != want_dim)
        fail(ErrorKind::BadInput, "grid dimension does not match the system");
    if (system == SweepSystem::NSAC2D && params.phase.dimension != 2)
        fail(ErrorKind::BadInput, "nsac2d requires dimension = 2 params");
    if (system == SweepSystem::NSAC3D && params.phase.dimension != 3)
        fail(ErrorKind::BadInput, "nsac3d requires dimension = 3 params");

    auto at_point = [&](const SpaceTimePoint& pt) -> ResidualVector {
        switch (system) {
            case SweepSystem::OldroydTransformed:
                return residual_oldroyd_transformed(params.oldroyd, pt.x, pt.t,
                                                    mode, stencil, perturb,
                                                    continuation);
            case SweepSystem::OldroydOriginal:
                return residual_oldroyd_original(params.oldroyd, pt.x, pt.t,
                                                 mode, stencil, perturb,
                                                 continuation);
            case SweepSystem::NS2D:
                return residual_ns(params.ns, pt.x, pt.t, mode, 2, stencil);
            case SweepSystem::NS3D:
                return residual_ns(params.ns, pt.x, pt.t, mode, 3, stencil);
            case SweepSystem::NSAC2D:
            case SweepSystem::NSAC3D:
                return residual_nsac(params.phase, pt.x, pt.t, mode, stencil,
                                     perturb);
        }
        fail(ErrorKind::BadInput, "unknown system");
    };

    ResidualReport report;
    report.system = std::string(to_string(system));
    report.mode = mode;
    report.stencil = stencil;
    report.grid = grid;

    const auto points = make_grid(grid);
    bool first = true;
    for (const auto& pt : points) {
        ResidualVector rv;
        try {
            rv = at_point(pt);
        } catch (const Error& e) {
            std::string where = " at point (";
            for (int a = 0; a < pt.dim; ++a) {
                if (a) where += ", ";
                where += std::to_string(pt.x[a]);
            }
            where += "), t = " + std::to_string(pt.t);
            fail(e.kind(), std::string(e.what()) + where);
        }
        if (first) {
            for (const auto& c : rv.components)
                report.components.push_back(ComponentReport{c.name, 0.0, 0.0,
                                                            0.0, pt});
            first = false;
        }
        for (std::size_t i = 0; i < rv.components.size(); ++i) {
            const auto& c = rv.components[i];
            auto& agg = report.components[i];
            const double rel = c.relative();
            agg.sup_abs = std::max(agg.sup_abs, std::abs(c.value));
            agg.scale_ref = std::max(agg.scale_ref, c.scale);
            if (rel > agg.sup_rel) {
                agg.sup_rel = rel;
                agg.worst = pt;
            }
        }
    }
    return report;
}

ConvergenceStudy residual_convergence(SweepSystem system,
                                      const SweepParams& params,
                                      const GridSpec& grid,
                                      const std::vector<double>& h_list,
                                      const StencilSpec& base,
                                      Perturbation perturb,
                                      double exact_floor) {
    if (h_list.size() < 3)
        fail(ErrorKind::BadInput, "convergence study needs at least 3 steps");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            fail(ErrorKind::BadInput, "h list must be strictly decreasing");
    validate(base);

    ConvergenceStudy study;
    study.h_list = h_list;
    study.grid = grid;
    study.exact_floor = exact_floor;

    const double k_ratio = base.k / base.h;
    for (std::size_t hi = 0; hi < h_list.size(); ++hi) {
        const StencilSpec spec{h_list[hi], k_ratio * h_list[hi], base.order};
        const ResidualReport rep = residual_sweep(system, params, grid,
                                                  ResidualMode::FD, spec,
                                                  perturb);
        if (hi == 0)
            for (const auto& c : rep.components)
                study.components.push_back({c.name, {}, 0.0, false});
        for (std::size_t ci = 0; ci < rep.components.size(); ++ci)
            study.components[ci].sup_rel.push_back(rep.components[ci].sup_rel);
    }

    for (auto& comp : study.components) {
        comp.exact = std::all_of(comp.sup_rel.begin(), comp.sup_rel.end(),
                                 [&](double r) { return r <= exact_floor; });
        if (comp.exact) continue;
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < h_list.size(); ++i) {
            lx.push_back(std::log(h_list[i]));
            ly.push_back(std::log(std::max(comp.sup_rel[i], 1e-300)));
        }
        comp.slope = fit_line(lx, ly).slope;
    }
    return study;
}

std::string to_json(const ConvergenceStudy& study) {
    using json = nlohmann::ordered_json;
    json comps = json::array();
    for (const auto& c : study.components) {
        json entry{{"name", c.name}, {"sup_rel", c.sup_rel}};
        if (c.exact)
            entry["exact"] = true;
        else
            entry["slope"] = c.slope;
        comps.push_back(entry);
    }
    json grid_echo;
    grid_echo["axes"] = json::array();
    for (const auto& a : study.grid.axes)
        grid_echo["axes"].push_back(
            {{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
    grid_echo["times"] = study.grid.times;
    json j{{"schema_version", 1},
           {"h_list", study.h_list},
           {"exact_floor", study.exact_floor},
           {"components", comps},
           {"grid_echo", grid_echo}};
    return j.dump(2);
}

std::string to_json(const ResidualReport& report) {
    using json = nlohmann::ordered_json;
    json grid_echo;
    grid_echo["axes"] = json::array();
    for (const auto& a : report.grid.axes)
        grid_echo["axes"].push_back(
            {{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
    grid_echo["times"] = report.grid.times;

    json comps = json::array();
    for (const auto& c : report.components) {
        json worst_point = json::array();
        for (int a = 0; a < c.worst.dim; ++a) worst_point.push_back(c.worst.x[a]);
        comps.push_back({{"name", c.name},
                         {"sup_abs", c.sup_abs},
                         {"sup_rel", c.sup_rel},
                         {"scale_ref", c.scale_ref},
                         {"worst_point", worst_point},
                         {"worst_time", c.worst.t}});
    }

    json j{{"schema_version", 1},
           {"system", report.system},
           {"mode", std::string(to_string(report.mode))},
           {"stencil",
            {{"h", report.stencil.h},
             {"k", report.stencil.k},
             {"order", report.stencil.order}}},
           {"components", comps},
           {"grid_echo", grid_echo},
           {"max_rel", report.max_rel()},
           {"max_abs", report.max_abs()}};
    return j.dump(2);
}

}  // namespace blowup
