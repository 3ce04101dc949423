#include "blowup/ode.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/textio.hpp"

namespace blowup {

namespace {

// Integrated degrees of freedom: (f, g1, g2, h1, h2). g is algebraic.
struct StateVec {
    double v[5];
};

StateVec rhs(const StateVec& y, double q) {
    // f' = q f^2; g1' = -f g1; g2' = f g2; h1' = f h1; h2' = -f h2.
    const double f = y.v[0];
    return {{q * f * f, -f * y.v[1], f * y.v[2], f * y.v[3], -f * y.v[4]}};
}

StateVec axpy(const StateVec& y, const StateVec& d, double a) {
    StateVec out;
    for (int i = 0; i < 5; ++i) out.v[i] = y.v[i] + a * d.v[i];
    return out;
}

double algebraic_g(double f, const OldroydParams& p) {
    return 2.0 * f * f / (p.beta - p.alpha);
}

ReducedState to_state(const StateVec& y, const OldroydParams& p) {
    return ReducedState{y.v[0], algebraic_g(y.v[0], p),
                        y.v[1], y.v[2], y.v[3], y.v[4]};
}

double rel_err(double num, double oracle) {
    return std::abs(num - oracle) / std::max(std::abs(oracle), 1.0);
}

}  // namespace

ReducedDerivative reduced_rhs(const ReducedState& state, const OldroydParams& p) {
    if (p.alpha == p.beta)
        fail(ErrorKind::DegenerateSeparation, "alpha and beta must differ");
    const double q = p.ratio();
    ReducedDerivative d;
    d.f_dot = q * state.f * state.f;
    d.g_algebraic = algebraic_g(state.f, p);
    d.g1_dot = -state.f * state.g1;
    d.g2_dot = state.f * state.g2;
    d.h1_dot = state.f * state.h1;
    d.h2_dot = -state.f * state.h2;
    return d;
}

std::vector<TrajectoryPoint> integrate_reduced(const OldroydParams& p,
                                               double t_end, double dt) {
    validate(p);
    if (!(dt > 0.0)) fail(ErrorKind::NonPositive, "dt must be positive");
    if (t_end < 0.0) fail(ErrorKind::BadInput, "t_end must be nonnegative");
    const BlowUpTime bt = blow_up_time(p);
    if (bt.finite() && t_end >= *bt.t_star)
        fail(ErrorKind::StepTooLarge,
             "integration range reaches the blow-up time");

    const double q = p.ratio();
    StateVec y{{p.f0, 0.0, 0.0, 1.0, 1.0}};
    std::vector<TrajectoryPoint> out;
    out.push_back({0.0, to_state(y, p)});

    double t = 0.0;
    std::size_t steps = 0;
    while (t < t_end) {
        ++steps;
        const double t_next = std::min(static_cast<double>(steps) * dt, t_end);
        const double step = t_next - t;
        const StateVec k1 = rhs(y, q);
        const StateVec k2 = rhs(axpy(y, k1, 0.5 * step), q);
        const StateVec k3 = rhs(axpy(y, k2, 0.5 * step), q);
        const StateVec k4 = rhs(axpy(y, k3, step), q);
        for (int i = 0; i < 5; ++i)
            y.v[i] += step / 6.0 *
                      (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
        t = t_next;
        out.push_back({t, to_state(y, p)});
    }
    return out;
}

ReducedState closed_form_reduced(const OldroydParams& p, double t) {
    validate(p);
    if (t < 0.0) fail(ErrorKind::OutOfDomain, "t must be nonnegative");
    const double sum = p.alpha + p.beta;
    ReducedState s;
    if (sum == 0.0) {
        s.f = p.f0;
        s.h1 = std::exp(p.f0 * t);
        s.h2 = std::exp(-p.f0 * t);
    } else {
        const double q = sum / (p.alpha - p.beta);
        const double d = 1.0 - q * p.f0 * t;
        if (d == 0.0) fail(ErrorKind::OutOfDomain, "t equals the blow-up time");
        const BlowUpTime bt = blow_up_time(p);
        if (bt.finite() && t >= *bt.t_star)
            fail(ErrorKind::OutOfDomain, "t is past the blow-up time");
        s.f = p.f0 / d;
        const double log_h1 = -std::log(std::abs(d)) / q;
        s.h1 = std::exp(log_h1);
        s.h2 = std::exp(-log_h1);
    }
    s.g = algebraic_g(s.f, p);
    s.g1 = 0.0;
    s.g2 = 0.0;
    return s;
}

double OdeErrorReport::max_error() const {
    return std::max({f, g, g1, g2, h1, h2});
}

OdeErrorReport compare_ode(const OldroydParams& p, double t_end, double dt) {
    const auto trajectory = integrate_reduced(p, t_end, dt);
    OdeErrorReport rep;
    for (const auto& pt : trajectory) {
        const ReducedState oracle = closed_form_reduced(p, pt.t);
        rep.f = std::max(rep.f, rel_err(pt.state.f, oracle.f));
        rep.g = std::max(rep.g, rel_err(pt.state.g, oracle.g));
        rep.g1 = std::max(rep.g1, rel_err(pt.state.g1, oracle.g1));
        rep.g2 = std::max(rep.g2, rel_err(pt.state.g2, oracle.g2));
        rep.h1 = std::max(rep.h1, rel_err(pt.state.h1, oracle.h1));
        rep.h2 = std::max(rep.h2, rel_err(pt.state.h2, oracle.h2));
    }
    return rep;
}

std::string trajectory_to_csv(const std::vector<TrajectoryPoint>& trajectory) {
    std::string out = "t,f,g,g1,g2,h1,h2\n";
    for (const auto& pt : trajectory) {
        out += format_double(pt.t);
        for (double v : {pt.state.f, pt.state.g, pt.state.g1, pt.state.g2,
                         pt.state.h1, pt.state.h2}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace blowup
