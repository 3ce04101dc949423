#pragma once

#include <string>
#include <vector>

#include "blowup/error.hpp"
#include "blowup/params.hpp"

namespace blowup {

/// Time amplitudes of the separated solution: velocity amplitude f,
/// pressure amplitude g, and the four potential amplitudes. g is
/// algebraic (determined pointwise by f), not an integrated state.
struct ReducedState {
    double f = 0.0;
    double g = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double h1 = 1.0;
    double h2 = 1.0;
};

/// Right-hand side of the reduced system at a state. g_algebraic is the
/// value of g implied by f, reported alongside the derivatives.
struct ReducedDerivative {
    double f_dot = 0.0;
    double g_algebraic = 0.0;
    double g1_dot = 0.0;
    double g2_dot = 0.0;
    double h1_dot = 0.0;
    double h2_dot = 0.0;
};

ReducedDerivative reduced_rhs(const ReducedState& state, const OldroydParams& p);

struct TrajectoryPoint {
    double t = 0.0;
    ReducedState state;
};

/// Classical fixed-step RK4 from the identity initial data
/// (f0, 2 f0^2/(beta-alpha), 0, 0, 1, 1). Output at 0, dt, 2 dt, ...,
/// t_end; the final step shrinks to land exactly on t_end.
std::vector<TrajectoryPoint> integrate_reduced(const OldroydParams& p,
                                               double t_end, double dt);

/// Exact amplitudes at time t (the independent oracle for the integrator).
ReducedState closed_form_reduced(const OldroydParams& p, double t);

/// Per-component max over the trajectory of |numeric - oracle| /
/// max(|oracle|, 1).
struct OdeErrorReport {
    double f = 0.0, g = 0.0, g1 = 0.0, g2 = 0.0, h1 = 0.0, h2 = 0.0;
    double max_error() const;
};

OdeErrorReport compare_ode(const OldroydParams& p, double t_end, double dt);

/// CSV with header t,f,g,g1,g2,h1,h2.
std::string trajectory_to_csv(const std::vector<TrajectoryPoint>& trajectory);

}  // namespace blowup
