#include "blowup/fd.hpp"

#include <cmath>

namespace blowup {

namespace {

// Errors at or below this level (relative to the reference magnitude)
// are indistinguishable from rounding noise; a slope fit over them is
// meaningless.
constexpr double kRoundoffFloor = 1e-13;

std::array<double, 3> shifted(const std::array<double, 3>& x, int axis,
                              double delta) {
    std::array<double, 3> y = x;
    y[static_cast<std::size_t>(axis)] += delta;
    return y;
}

double step_for_axis(const StencilSpec& spec, int axis) {
    return axis == time_axis ? spec.k : spec.h;
}

void check_axis(int axis) {
    if (axis != time_axis && (axis < 0 || axis > 2))
        fail(ErrorKind::BadInput, "axis must be 0..2 or time_axis");
}

double eval_at(const ScalarField& f, const std::array<double, 3>& x, double t,
               int axis, double delta) {
    if (axis == time_axis) return f(x, t + delta);
    return f(shifted(x, axis, delta), t);
}

}  // namespace

const StencilSpec& validate(const StencilSpec& spec) {
    if (!(spec.h > 0.0) || !std::isfinite(spec.h))
        fail(ErrorKind::BadInput, "stencil step h must be positive");
    if (!(spec.k > 0.0) || !std::isfinite(spec.k))
        fail(ErrorKind::BadInput, "stencil step k must be positive");
    if (spec.order != 2 && spec.order != 4)
        fail(ErrorKind::BadInput, "stencil order must be 2 or 4");
    return spec;
}

double ScalarField::operator()(const std::array<double, 3>& x, double t) const {
    if (t < t_min || t > t_max)
        fail(ErrorKind::FootprintOutOfDomain,
             "stencil node leaves the field's time domain");
    return eval(x, t);
}

double fd_partial(const ScalarField& f, const std::array<double, 3>& x,
                  double t, int axis, const StencilSpec& spec) {
    validate(spec);
    check_axis(axis);
    const double h = step_for_axis(spec, axis);
    if (spec.order == 2) {
        return (eval_at(f, x, t, axis, h) - eval_at(f, x, t, axis, -h)) /
               (2.0 * h);
    }
    return (-eval_at(f, x, t, axis, 2.0 * h) + 8.0 * eval_at(f, x, t, axis, h) -
            8.0 * eval_at(f, x, t, axis, -h) + eval_at(f, x, t, axis, -2.0 * h)) /
           (12.0 * h);
}

double fd_second(const ScalarField& f, const std::array<double, 3>& x,
                 double t, int axis, const StencilSpec& spec) {
    validate(spec);
    check_axis(axis);
    const double h = step_for_axis(spec, axis);
    const double center = f(x, t);
    if (spec.order == 2) {
        return (eval_at(f, x, t, axis, h) - 2.0 * center +
                eval_at(f, x, t, axis, -h)) /
               (h * h);
    }
    return (-eval_at(f, x, t, axis, 2.0 * h) + 16.0 * eval_at(f, x, t, axis, h) -
            30.0 * center + 16.0 * eval_at(f, x, t, axis, -h) -
            eval_at(f, x, t, axis, -2.0 * h)) /
           (12.0 * h * h);
}

double fd_mixed(const ScalarField& f, const std::array<double, 3>& x, double t,
                int axis_a, int axis_b, const StencilSpec& spec) {
    validate(spec);
    check_axis(axis_a);
    check_axis(axis_b);
    if (axis_a == axis_b) return fd_second(f, x, t, axis_a, spec);
    // First derivative along axis_b of the discrete first derivative
    // along axis_a; composition keeps the nominal order.
    ScalarField inner{
        [&f, axis_a, &spec](const std::array<double, 3>& y, double s) {
            return fd_partial(f, y, s, axis_a, spec);
        },
        f.t_min, f.t_max};
    return fd_partial(inner, x, t, axis_b, spec);
}

double fd_laplacian(const ScalarField& f, const std::array<double, 3>& x,
                    double t, int dim, const StencilSpec& spec) {
    if (dim < 1 || dim > 3) fail(ErrorKind::BadInput, "dim must be 1..3");
    double sum = 0.0;
    for (int a = 0; a < dim; ++a) sum += fd_second(f, x, t, a, spec);
    return sum;
}

double fd_biharmonic(const ScalarField& f, const std::array<double, 3>& x,
                     double t, int dim, const StencilSpec& spec) {
    validate(spec);
    ScalarField lap{
        [&f, dim, &spec](const std::array<double, 3>& y, double s) {
            return fd_laplacian(f, y, s, dim, spec);
        },
        f.t_min, f.t_max};
    return fd_laplacian(lap, x, t, dim, spec);
}

double convergence_order(const ScalarField& f, double reference, FdOp op,
                         const std::array<double, 3>& x, double t, int axis,
                         int dim, const std::vector<double>& h_list,
                         int order) {
    if (h_list.size() < 3)
        fail(ErrorKind::BadInput, "convergence fit needs at least 3 steps");
    std::vector<double> log_h, log_err;
    const double floor = kRoundoffFloor * std::max(1.0, std::abs(reference));
    for (double h : h_list) {
        StencilSpec spec{h, h, order};
        double value = 0.0;
        switch (op) {
            case FdOp::Partial: value = fd_partial(f, x, t, axis, spec); break;
            case FdOp::Second: value = fd_second(f, x, t, axis, spec); break;
            case FdOp::Laplacian: value = fd_laplacian(f, x, t, dim, spec); break;
            case FdOp::Biharmonic:
                value = fd_biharmonic(f, x, t, dim, spec);
                break;
        }
        const double err = std::abs(value - reference);
        if (err <= floor)
            fail(ErrorKind::ZeroError,
                 "stencil is exact for this field; no order to fit");
        log_h.push_back(std::log(h));
        log_err.push_back(std::log(err));
    }
    return fit_line(log_h, log_err).slope;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n)
        fail(ErrorKind::BadInput, "line fit needs >= 2 matched points");
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (ys[i] - mean_y);
    }
    if (sxx == 0.0) fail(ErrorKind::BadInput, "degenerate abscissae in line fit");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    if (n > 2) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ssr += r * r;
        }
        fit.slope_stderr = std::sqrt(ssr / (static_cast<double>(n) - 2.0) / sxx);
    }
    return fit;
}

}  // namespace blowup
