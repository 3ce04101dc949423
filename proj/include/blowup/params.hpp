#pragma once

#include <optional>
#include <string>

#include "blowup/error.hpp"

namespace blowup {

/// Parameters of the stretching/squeezing viscoelastic solution family.
///
/// f0 is the initial velocity amplitude, alpha and beta the separation
/// constants of the pressure profile, nu the kinematic viscosity and
/// lambda the elastic coupling coefficient.
struct OldroydParams {
    double f0 = 1.0;
    double alpha = 3.0;
    double beta = 1.0;
    double nu = 1.0;
    double lambda = 1.0;

    /// (alpha+beta)/(alpha-beta); the growth rate of f is ratio()*f^2.
    double ratio() const { return (alpha + beta) / (alpha - beta); }
};

/// Parameters of the Navier-Stokes blow-up family. t is the blow-up
/// time; c1..c5 are the free constants of the displays (c1, c2 scale
/// the exponential part of the velocity, c3/c4 sit inside the
/// exponential or shift the pressure depending on dimension, c5 shifts
/// the 3-D kink).
struct NSParams {
    double t = 1.0;
    double nu = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double c4 = 0.0;
    double c5 = 0.0;
};

enum class PhaseVariant { AllenCahn, CahnHilliard, TransportOnly };

std::string_view to_string(PhaseVariant v);
PhaseVariant phase_variant_from_string(std::string_view s);

/// Navier-Stokes/phase-field parameters: the NS family plus mixing
/// energy density lambda, mobility gamma and interface width epsilon.
struct PhaseFieldParams {
    NSParams ns;
    double lambda = 1.0;
    double gamma = 1.0;
    double epsilon = 0.1;
    int dimension = 2;
    PhaseVariant variant = PhaseVariant::AllenCahn;
};

/// Finite blow-up time, or none when the family exists globally.
struct BlowUpTime {
    std::optional<double> t_star;

    bool finite() const { return t_star.has_value(); }
    static BlowUpTime finite_at(double t) { return BlowUpTime{t}; }
    static BlowUpTime none() { return BlowUpTime{std::nullopt}; }
};

/// Throw on any violated invariant; return the record unchanged otherwise.
const OldroydParams& validate(const OldroydParams& p);
const NSParams& validate(const NSParams& p);
const PhaseFieldParams& validate(const PhaseFieldParams& p);

/// t* = (alpha-beta)/((alpha+beta) f0) when that is strictly positive
/// (and alpha+beta != 0, f0 != 0); none otherwise.
BlowUpTime blow_up_time(const OldroydParams& p);

// JSON round trip. Field names are the lower-case record fields; unknown
// keys are rejected. Missing keys keep their defaults.
OldroydParams oldroyd_params_from_json(const std::string& text);
NSParams ns_params_from_json(const std::string& text);
PhaseFieldParams phase_field_params_from_json(const std::string& text);
std::string to_json(const OldroydParams& p);
std::string to_json(const NSParams& p);
std::string to_json(const PhaseFieldParams& p);

}  // namespace blowup
