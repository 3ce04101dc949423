#pragma once

#include <string>
#include <vector>

#include "blowup/fd.hpp"
#include "blowup/fields.hpp"
#include "blowup/grid.hpp"
#include "blowup/params.hpp"

namespace blowup {

enum class ResidualMode { Analytic, FD };

std::string_view to_string(ResidualMode mode);

/// One equation component at one point: the signed residual plus the
/// largest magnitude among the individual terms that entered it (the
/// scale reference used for relative normalization).
struct ResidualComponent {
    std::string name;
    double value = 0.0;
    double scale = 0.0;

    double relative() const;
};

struct ResidualVector {
    std::vector<ResidualComponent> components;
    double max_relative() const;
};

/// Momentum/incompressibility/transport residuals of the potential form
/// of the viscoelastic system. Components: momentum_1, momentum_2,
/// div_u, transport_phi_1, transport_phi_2.
ResidualVector residual_oldroyd_transformed(
    const OldroydParams& p, const std::array<double, 3>& x, double t,
    ResidualMode mode, const StencilSpec& stencil = {},
    Perturbation perturb = Perturbation::None, bool continuation = false);

/// Residuals of the deformation-tensor form. Components: momentum_1,
/// momentum_2, div_u, def_transport_11..22, div_F_1, div_F_2.
ResidualVector residual_oldroyd_original(
    const OldroydParams& p, const std::array<double, 3>& x, double t,
    ResidualMode mode, const StencilSpec& stencil = {},
    Perturbation perturb = Perturbation::None, bool continuation = false);

/// Navier-Stokes residuals: momentum_1..momentum_dim, div_u.
ResidualVector residual_ns(const NSParams& p, const std::array<double, 3>& x,
                           double t, ResidualMode mode, int dim,
                           const StencilSpec& stencil = {});

/// Navier-Stokes/phase-field residuals: momentum_1..dim, div_u, phase.
/// The phase equation follows the params' variant; every term is
/// evaluated independently (no use of the kink identity).
ResidualVector residual_nsac(const PhaseFieldParams& p,
                             const std::array<double, 3>& x, double t,
                             ResidualMode mode, const StencilSpec& stencil = {},
                             Perturbation perturb = Perturbation::None);

enum class SweepSystem {
    OldroydTransformed,
    OldroydOriginal,
    NS2D,
    NS3D,
    NSAC2D,
    NSAC3D,
};

std::string_view to_string(SweepSystem system);

struct ComponentReport {
    std::string name;
    double sup_abs = 0.0;
    double sup_rel = 0.0;
    double scale_ref = 0.0;  // largest term magnitude seen over the sweep
    SpaceTimePoint worst;    // argmax of the relative residual
};

struct ResidualReport {
    std::string system;
    ResidualMode mode = ResidualMode::Analytic;
    StencilSpec stencil;
    GridSpec grid;
    std::vector<ComponentReport> components;

    double max_rel() const;
    double max_abs() const;
};

/// Sweep a system's residuals over a grid. Point evaluations are
/// independent; the reduction is deterministic, ties broken by lowest
/// enumeration index.
struct SweepParams {
    OldroydParams oldroyd;
    NSParams ns;
    PhaseFieldParams phase;
};

ResidualReport residual_sweep(SweepSystem system, const SweepParams& params,
                              const GridSpec& grid, ResidualMode mode,
                              const StencilSpec& stencil = {},
                              Perturbation perturb = Perturbation::None,
                              bool continuation = false);

std::string to_json(const ResidualReport& report);

/// FD residual sweeps repeated over a decreasing step list (k scales
/// with h at the base stencil's k/h ratio) with a log-log slope fit per
/// component. Components whose residual sits at rounding level for every
/// step are reported exact instead of fitted.
struct ConvergenceStudy {
    std::vector<double> h_list;
    struct Component {
        std::string name;
        std::vector<double> sup_rel;
        double slope = 0.0;
        bool exact = false;  // below the rounding floor at every h
    };
    std::vector<Component> components;
    GridSpec grid;
    double exact_floor = 1e-10;
};

ConvergenceStudy residual_convergence(SweepSystem system,
                                      const SweepParams& params,
                                      const GridSpec& grid,
                                      const std::vector<double>& h_list,
                                      const StencilSpec& base = {},
                                      Perturbation perturb = Perturbation::None,
                                      double exact_floor = 1e-10);

std::string to_json(const ConvergenceStudy& study);

/// Upper end of the admissible time range for a system (blow-up time,
/// or +infinity when the family exists globally).
double system_t_max(SweepSystem system, const SweepParams& params);

/// The fixed default sweep: [-1,1]^d (21 points per axis in 2-D, 11 in
/// 3-D) at times {0.1 j min(t*, T)}, j = 0..9, intersected with the
/// admissible set for the mode. Falls back to horizon 1 when the family
/// has no finite blow-up time.
GridSpec standard_sweep_grid(SweepSystem system, const SweepParams& params,
                             ResidualMode mode, const StencilSpec& stencil = {});

}  // namespace blowup
