#pragma once

#include <array>
#include <optional>

#include "blowup/error.hpp"
#include "blowup/params.hpp"

namespace blowup {

/// Values of the closed-form fields at one space-time point. Families
/// fill the members they define: viscoelastic -> u, P, p, phi_vec,
/// F_diag; plain Navier-Stokes -> u, p; phase-field -> u, P, phi.
struct FieldSample {
    int dim = 2;
    std::array<double, 3> u{0.0, 0.0, 0.0};
    std::optional<double> P;
    std::optional<double> p;
    std::optional<std::array<double, 2>> phi_vec;
    std::optional<double> phi;
    std::optional<std::array<double, 2>> F_diag;
};

/// Exact partial derivatives of one family at one point: first time
/// derivatives, first/second spatial derivatives, and for the scalar
/// phase function the pure s-derivatives up to order four (the phase
/// function depends on space through s = sum of coordinates only, so
/// every third/fourth spatial partial equals phi_s3/phi_s4).
///
/// Index conventions, fixed across the project:
///   grad_u[i][j]        = d u_i / d x_j
///   grad_phi[c][j]      = d phi_c / d x_j
///   hess_phi[c][i][j]   = d^2 phi_c / d x_i d x_j
struct DerivativeJet {
    int dim = 2;

    std::array<double, 3> u{}, u_t{}, lap_u{};
    std::array<std::array<double, 3>, 3> grad_u{};

    double P = 0.0, P_t = 0.0;
    std::array<double, 3> grad_P{};
    double p = 0.0, p_t = 0.0;
    std::array<double, 3> grad_p{};

    int phi_components = 0;  // 2 viscoelastic potential, 1 phase field
    std::array<double, 2> phi{}, phi_t{};
    std::array<std::array<double, 3>, 2> grad_phi{};
    std::array<std::array<std::array<double, 3>, 3>, 2> hess_phi{};
    double phi_s3 = 0.0, phi_s4 = 0.0;

    std::array<double, 2> F_diag{}, F_diag_t{};
};

/// Deliberate non-solutions used to prove the verifier detects failures.
enum class Perturbation {
    None,
    FlipH1Exponent,  // viscoelastic family: negate the h1 exponent
    WrongWaveSpeed,  // phase-field family: kink travels at the wrong speed
};

/// Scalar time amplitudes of the viscoelastic family, shared by the
/// field evaluation and the deformation diagnostics.
struct OldroydAmplitudes {
    double f, f_dot;
    double g, g_dot;
    double h1, h1_dot;
    double h2, h2_dot;
};

OldroydAmplitudes oldroyd_amplitudes(const OldroydParams& p, double t,
                                     bool continuation = false,
                                     Perturbation perturb = Perturbation::None);

FieldSample oldroyd_eval(const OldroydParams& p, const std::array<double, 3>& x,
                         double t, bool continuation = false,
                         Perturbation perturb = Perturbation::None);

FieldSample ns_eval(const NSParams& p, const std::array<double, 3>& x, double t,
                    int dim);

FieldSample nsac_eval(const PhaseFieldParams& p, const std::array<double, 3>& x,
                      double t, Perturbation perturb = Perturbation::None);

DerivativeJet oldroyd_jet(const OldroydParams& p, const std::array<double, 3>& x,
                          double t, bool continuation = false,
                          Perturbation perturb = Perturbation::None);

DerivativeJet ns_jet(const NSParams& p, const std::array<double, 3>& x, double t,
                     int dim);

DerivativeJet nsac_jet(const PhaseFieldParams& p, const std::array<double, 3>& x,
                       double t, Perturbation perturb = Perturbation::None);

/// Cubic double-well derivative f(phi) = (phi^3 - phi) / epsilon^2.
double double_well_prime(double phi, double epsilon);

}  // namespace blowup
