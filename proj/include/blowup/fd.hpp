#pragma once

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "blowup/error.hpp"

namespace blowup {

/// Centered finite-difference configuration. h is the spatial step,
/// k the temporal step.
struct StencilSpec {
    double h = 1e-3;
    double k = 1e-3;
    int order = 2;  // 2 or 4
};

const StencilSpec& validate(const StencilSpec& spec);

/// Axis selector for fd_partial: 0..2 are spatial, time_axis is t.
inline constexpr int time_axis = -1;

/// A scalar field of space-time together with its time domain.
/// Evaluations outside [t_min, t_max] raise FootprintOutOfDomain; the
/// field callback must be pure.
struct ScalarField {
    std::function<double(const std::array<double, 3>&, double)> eval;
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();

    double operator()(const std::array<double, 3>& x, double t) const;
};

double fd_partial(const ScalarField& f, const std::array<double, 3>& x,
                  double t, int axis, const StencilSpec& spec);

double fd_second(const ScalarField& f, const std::array<double, 3>& x,
                 double t, int axis, const StencilSpec& spec);

/// Mixed second derivative d^2/dx_a dx_b (a != b), composed from two
/// first-derivative stencils so both orders are available.
double fd_mixed(const ScalarField& f, const std::array<double, 3>& x, double t,
                int axis_a, int axis_b, const StencilSpec& spec);

double fd_laplacian(const ScalarField& f, const std::array<double, 3>& x,
                    double t, int dim, const StencilSpec& spec);

/// Laplacian of the discrete Laplacian, sharing one h. Footprint radius
/// is 2h per axis.
double fd_biharmonic(const ScalarField& f, const std::array<double, 3>& x,
                     double t, int dim, const StencilSpec& spec);

enum class FdOp { Partial, Second, Laplacian, Biharmonic };

/// Least-squares slope of log|fd - reference| against log h over the
/// given steps. Raises ZeroError when any error is at rounding level
/// (the stencil is exact for the field).
double convergence_order(const ScalarField& f, double reference, FdOp op,
                         const std::array<double, 3>& x, double t, int axis,
                         int dim, const std::vector<double>& h_list,
                         int order = 2);

/// Ordinary least squares y = a + b*x; returns {slope, intercept,
/// slope standard error}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace blowup
