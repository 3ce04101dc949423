#include "blowup/fields.hpp"

#include <cmath>

// Closed-form evaluators for the four solution families and their exact
// derivative jets. The derivations behind every formula here are written
// out in docs/derivations.md; the finite-difference suite cross-checks
// each jet entry against centered differences of the evaluators.

namespace blowup {

namespace {

void check_perturbation(Perturbation perturb, bool oldroyd) {
    if (perturb == Perturbation::None) return;
    if (oldroyd && perturb != Perturbation::FlipH1Exponent)
        fail(ErrorKind::BadInput, "perturbation does not apply to this family");
    if (!oldroyd && perturb != Perturbation::WrongWaveSpeed)
        fail(ErrorKind::BadInput, "perturbation does not apply to this family");
}

void check_oldroyd_domain(const OldroydParams& p, double t, bool continuation) {
    if (t < 0.0) fail(ErrorKind::OutOfDomain, "t must be nonnegative");
    const BlowUpTime bt = blow_up_time(p);
    if (!bt.finite()) return;
    const double t_star = *bt.t_star;
    if (t >= t_star && !continuation)
        fail(ErrorKind::OutOfDomain, "t is at or past the blow-up time");
    // Continuation admits t > t*, never t* itself (the amplitudes are
    // singular there).
    const double d = 1.0 - p.ratio() * p.f0 * t;
    if (d == 0.0) fail(ErrorKind::OutOfDomain, "t equals the blow-up time");
}

void check_ns_domain(const NSParams& p, double t) {
    if (t < 0.0) fail(ErrorKind::OutOfDomain, "t must be nonnegative");
    if (t >= p.t) fail(ErrorKind::OutOfDomain, "t is at or past the blow-up time");
}

int check_dim(int dim) {
    if (dim != 2 && dim != 3) fail(ErrorKind::BadInput, "dim must be 2 or 3");
    return dim;
}

// Structure constants of the Navier-Stokes displays. In 2-D the
// exponential carries coefficient (c1, -c1) and constant c3, the
// pressure shift is c2, the kink shift c4; in 3-D the coefficients are
// (c1, c2, -(c1+c2)), the exponential constant c4, the pressure shift
// c3, the kink shift c5.
struct NsLayout {
    std::array<double, 3> coef{};
    double exp_const = 0.0;
    double p_const = 0.0;
    double kink_shift = 0.0;
};

NsLayout ns_layout(const NSParams& p, int dim) {
    NsLayout l;
    if (dim == 2) {
        l.coef = {p.c1, -p.c1, 0.0};
        l.exp_const = p.c3;
        l.p_const = p.c2;
        l.kink_shift = p.c4;
    } else {
        l.coef = {p.c1, p.c2, -(p.c1 + p.c2)};
        l.exp_const = p.c4;
        l.p_const = p.c3;
        l.kink_shift = p.c5;
    }
    return l;
}

// Shared pieces of u_i = (-1 + coef_i E)/sqrt(tau) with
// E = exp(s^2/(4 d nu tau) - s/(nu sqrt(tau)) + const).
struct NsCore {
    double tau, sqrt_tau, s;
    double E;          // exponential factor
    double A_s, A_ss;  // s-derivatives of the exponent
    double A_tau;      // tau-derivative of the exponent
    NsLayout layout;
};

NsCore ns_core(const NSParams& p, const std::array<double, 3>& x, double t,
               int dim) {
    NsCore c;
    c.layout = ns_layout(p, dim);
    c.tau = p.t - t;
    c.sqrt_tau = std::sqrt(c.tau);
    c.s = x[0] + x[1] + (dim == 3 ? x[2] : 0.0);
    const double denom = 4.0 * dim * p.nu * c.tau;
    const double A =
        c.s * c.s / denom - c.s / (p.nu * c.sqrt_tau) + c.layout.exp_const;
    c.E = std::exp(A);
    c.A_s = 2.0 * c.s / denom - 1.0 / (p.nu * c.sqrt_tau);
    c.A_ss = 2.0 / denom;
    c.A_tau = -c.s * c.s / (denom * c.tau) +
              c.s / (2.0 * p.nu * c.tau * c.sqrt_tau);
    return c;
}

// Kink profile tanh(zeta w), w = s - 2 d sqrt(tau) + shift, and its pure
// s-derivatives. zeta = 1/(sqrt(2 d) epsilon) makes the profile solve
// the stationary phase equation in d dimensions.
struct KinkCore {
    double zeta;
    double w;
    double theta;   // tanh
    double sech2;   // 1 - theta^2
    double d1, d2, d3, d4;  // d^k phi / d s^k
    double w_t;     // time derivative of the argument
};

KinkCore kink_core(const PhaseFieldParams& p, double s, double tau,
                   Perturbation perturb) {
    KinkCore k;
    const int dim = p.dimension;
    const double speed =
        (perturb == Perturbation::WrongWaveSpeed) ? (2.0 * dim - 1.0)
                                                  : (2.0 * dim);
    const double shift = ns_layout(p.ns, dim).kink_shift;
    const double sqrt_tau = std::sqrt(tau);
    k.zeta = 1.0 / (std::sqrt(2.0 * dim) * p.epsilon);
    k.w = s - speed * sqrt_tau + shift;
    k.theta = std::tanh(k.zeta * k.w);
    k.sech2 = 1.0 - k.theta * k.theta;
    const double z2 = k.zeta * k.zeta;
    k.d1 = k.zeta * k.sech2;
    k.d2 = -2.0 * z2 * k.theta * k.sech2;
    k.d3 = -2.0 * z2 * k.zeta * k.sech2 * (1.0 - 3.0 * k.theta * k.theta);
    k.d4 = 8.0 * z2 * z2 * k.theta * k.sech2 *
           (2.0 - 3.0 * k.theta * k.theta);
    k.w_t = speed / (2.0 * sqrt_tau);
    return k;
}

}  // namespace

double double_well_prime(double phi, double epsilon) {
    return (phi * phi * phi - phi) / (epsilon * epsilon);
}

OldroydAmplitudes oldroyd_amplitudes(const OldroydParams& p, double t,
                                     bool continuation, Perturbation perturb) {
    check_perturbation(perturb, /*oldroyd=*/true);
    check_oldroyd_domain(p, t, continuation);

    OldroydAmplitudes a{};
    const double sum = p.alpha + p.beta;
    const double diff = p.alpha - p.beta;

    double log_h1;  // integral of f over [0, t]
    if (sum == 0.0) {
        // f is constant; the amplitudes are plain exponentials.
        a.f = p.f0;
        a.f_dot = 0.0;
        log_h1 = p.f0 * t;
    } else {
        const double q = sum / diff;
        const double d = 1.0 - q * p.f0 * t;
        a.f = p.f0 / d;
        a.f_dot = q * a.f * a.f;
        // |d|^((beta-alpha)/(alpha+beta)) written as exp(e log|d|); the
        // domain guard keeps d away from 0.
        log_h1 = (-diff / sum) * std::log(std::abs(d));
    }
    // Only h1 is perturbed; h2 always carries exponent -integral(f).
    if (perturb == Perturbation::FlipH1Exponent) {
        a.h1 = std::exp(-log_h1);
        a.h1_dot = -a.f * a.h1;
    } else {
        a.h1 = std::exp(log_h1);
        a.h1_dot = a.f * a.h1;
    }
    a.h2 = std::exp(-log_h1);
    a.h2_dot = -a.f * a.h2;

    a.g = 2.0 * a.f * a.f / (p.beta - p.alpha);
    a.g_dot = 4.0 * a.f * a.f_dot / (p.beta - p.alpha);
    return a;
}

FieldSample oldroyd_eval(const OldroydParams& p, const std::array<double, 3>& x,
                         double t, bool continuation, Perturbation perturb) {
    const OldroydAmplitudes a = oldroyd_amplitudes(p, t, continuation, perturb);
    FieldSample s;
    s.dim = 2;
    s.u = {x[0] * a.f, -x[1] * a.f, 0.0};
    s.P = 0.5 * (p.alpha * x[0] * x[0] - p.beta * x[1] * x[1]) * a.g;
    s.phi_vec = std::array<double, 2>{-x[1] * a.h1, x[0] * a.h2};
    s.F_diag = std::array<double, 2>{a.h1, a.h2};
    s.p = *s.P + a.h1 * a.h1 + a.h2 * a.h2;
    return s;
}

DerivativeJet oldroyd_jet(const OldroydParams& p, const std::array<double, 3>& x,
                          double t, bool continuation, Perturbation perturb) {
    const OldroydAmplitudes a = oldroyd_amplitudes(p, t, continuation, perturb);
    DerivativeJet j;
    j.dim = 2;

    j.u = {x[0] * a.f, -x[1] * a.f, 0.0};
    j.u_t = {x[0] * a.f_dot, -x[1] * a.f_dot, 0.0};
    j.grad_u[0][0] = a.f;
    j.grad_u[1][1] = -a.f;
    j.lap_u = {0.0, 0.0, 0.0};

    const double p1 = 0.5 * (p.alpha * x[0] * x[0] - p.beta * x[1] * x[1]);
    j.P = p1 * a.g;
    j.P_t = p1 * a.g_dot;
    j.grad_P = {p.alpha * x[0] * a.g, -p.beta * x[1] * a.g, 0.0};

    j.phi_components = 2;
    j.phi = {-x[1] * a.h1, x[0] * a.h2};
    j.phi_t = {-x[1] * a.h1_dot, x[0] * a.h2_dot};
    j.grad_phi[0][1] = -a.h1;  // phi_1 = -x2 h1
    j.grad_phi[1][0] = a.h2;   // phi_2 =  x1 h2
    // all second spatial derivatives of phi vanish

    j.F_diag = {a.h1, a.h2};
    j.F_diag_t = {a.h1_dot, a.h2_dot};

    // p and P differ by h1^2 + h2^2, a function of t alone.
    j.p = j.P + a.h1 * a.h1 + a.h2 * a.h2;
    j.p_t = j.P_t + 2.0 * (a.h1 * a.h1_dot + a.h2 * a.h2_dot);
    j.grad_p = j.grad_P;
    return j;
}

FieldSample ns_eval(const NSParams& p, const std::array<double, 3>& x, double t,
                    int dim) {
    check_dim(dim);
    check_ns_domain(p, t);
    const NsCore c = ns_core(p, x, t, dim);
    FieldSample s;
    s.dim = dim;
    for (int i = 0; i < dim; ++i)
        s.u[i] = (-1.0 + c.layout.coef[i] * c.E) / c.sqrt_tau;
    s.p = c.s / (2.0 * c.tau * c.sqrt_tau) + c.layout.p_const / c.tau;
    return s;
}

DerivativeJet ns_jet(const NSParams& p, const std::array<double, 3>& x, double t,
                     int dim) {
    check_dim(dim);
    check_ns_domain(p, t);
    const NsCore c = ns_core(p, x, t, dim);
    DerivativeJet j;
    j.dim = dim;
    const double inv_sqrt = 1.0 / c.sqrt_tau;
    const double inv_32 = inv_sqrt / c.tau;  // tau^{-3/2}
    for (int i = 0; i < dim; ++i) {
        const double k = c.layout.coef[i];
        j.u[i] = (-1.0 + k * c.E) * inv_sqrt;
        // d/dt = -d/dtau of (-1 + k E) tau^{-1/2}
        j.u_t[i] = -k * c.E * c.A_tau * inv_sqrt +
                   0.5 * (-1.0 + k * c.E) * inv_32;
        for (int jj = 0; jj < dim; ++jj)
            j.grad_u[i][jj] = k * c.E * c.A_s * inv_sqrt;
        j.lap_u[i] = dim * k * c.E * (c.A_s * c.A_s + c.A_ss) * inv_sqrt;
    }
    j.p = c.s * 0.5 * inv_32 + c.layout.p_const / c.tau;
    j.p_t = 0.75 * c.s * inv_32 / c.tau + c.layout.p_const / (c.tau * c.tau);
    for (int jj = 0; jj < dim; ++jj) j.grad_p[jj] = 0.5 * inv_32;
    // This family has no modified pressure distinct from p.
    j.P = j.p;
    j.P_t = j.p_t;
    j.grad_P = j.grad_p;
    return j;
}

FieldSample nsac_eval(const PhaseFieldParams& p, const std::array<double, 3>& x,
                      double t, Perturbation perturb) {
    check_perturbation(perturb, /*oldroyd=*/false);
    check_ns_domain(p.ns, t);
    const int dim = p.dimension;
    const NsCore c = ns_core(p.ns, x, t, dim);
    const KinkCore k = kink_core(p, c.s, c.tau, perturb);

    FieldSample s;
    s.dim = dim;
    for (int i = 0; i < dim; ++i)
        s.u[i] = (-1.0 + c.layout.coef[i] * c.E) / c.sqrt_tau;
    s.phi = k.theta;
    // P = p - d lambda phi_s^2; the sech^4 shift constant matches the
    // kink argument so this identity holds exactly.
    s.P = c.s / (2.0 * c.tau * c.sqrt_tau) -
          0.5 * p.lambda / (p.epsilon * p.epsilon) * k.sech2 * k.sech2 +
          c.layout.p_const / c.tau;
    return s;
}

DerivativeJet nsac_jet(const PhaseFieldParams& p, const std::array<double, 3>& x,
                       double t, Perturbation perturb) {
    check_perturbation(perturb, /*oldroyd=*/false);
    check_ns_domain(p.ns, t);
    const int dim = p.dimension;
    DerivativeJet j = ns_jet(p.ns, x, t, dim);

    const NsCore c = ns_core(p.ns, x, t, dim);
    const KinkCore k = kink_core(p, c.s, c.tau, perturb);
    const double inv_sqrt = 1.0 / c.sqrt_tau;
    const double inv_32 = inv_sqrt / c.tau;

    j.phi_components = 1;
    j.phi[0] = k.theta;
    j.phi_t[0] = k.d1 * k.w_t;  // phi_s * dw/dt (w_s = 1)
    for (int a = 0; a < dim; ++a) {
        j.grad_phi[0][a] = k.d1;
        for (int b = 0; b < dim; ++b) j.hess_phi[0][a][b] = k.d2;
    }
    j.phi_s3 = k.d3;
    j.phi_s4 = k.d4;

    const double press = 0.5 * p.lambda / (p.epsilon * p.epsilon);
    j.P = c.s * 0.5 * inv_32 - press * k.sech2 * k.sech2 +
          c.layout.p_const / c.tau;
    // d/ds sech^4 = -4 theta sech^4 zeta; d/dt via w_t.
    const double sech4_s = -4.0 * k.theta * k.sech2 * k.sech2 * k.zeta;
    for (int a = 0; a < dim; ++a) j.grad_P[a] = 0.5 * inv_32 - press * sech4_s;
    j.P_t = 0.75 * c.s * inv_32 / c.tau - press * sech4_s * k.w_t +
            c.layout.p_const / (c.tau * c.tau);
    return j;
}

}  // namespace blowup
