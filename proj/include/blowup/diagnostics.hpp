#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "blowup/params.hpp"

namespace blowup {

enum class AssumptionStatus {
    Satisfied,
    Violated,
    SurrogateSatisfied,
    SurrogateViolated,
};

std::string_view to_string(AssumptionStatus status);

/// One assumption with its status and the witness numbers behind it.
/// Series witnesses run over the L-ladder in order.
struct AssumptionFinding {
    std::string name;
    AssumptionStatus status;
    std::vector<std::pair<std::string, std::vector<double>>> witness_series;
    std::vector<std::pair<std::string, double>> witness_scalars;
};

struct AssumptionReport {
    std::string system;
    std::vector<double> l_ladder;
    std::size_t density = 33;
    double near_zero_tol = 1e-6;
    std::vector<AssumptionFinding> findings;

    const AssumptionFinding& find(std::string_view name) const;
};

/// Evaluate the small-data assumptions on the family's initial data over
/// [-L,L]^d grids for each ladder length. The decay statements are
/// checked through a documented surrogate: sup of the field over the
/// outer shell L/2 <= |x| <= L must not grow along the ladder.
AssumptionReport check_assumptions(const OldroydParams& p,
                                   const std::vector<double>& l_ladder,
                                   std::size_t density = 33,
                                   double near_zero_tol = 1e-6);

/// Velocity-only variant for the Navier-Stokes based families (the
/// potential/deformation assumptions do not apply to them).
AssumptionReport check_assumptions_ns(const NSParams& p, int dim,
                                      const std::vector<double>& l_ladder,
                                      std::size_t density = 33,
                                      double near_zero_tol = 1e-6);

enum class ProfileDiagnostic { Speed, Anisotropy, Pressure };

std::string_view to_string(ProfileDiagnostic d);
ProfileDiagnostic profile_diagnostic_from_string(std::string_view s);

/// A scalar diagnostic sampled geometrically toward the blow-up time:
/// t_j = t_blow (1 - r^j), j = 1..n.
struct ProfileSeries {
    std::string label;
    double t_blow = 0.0;
    std::vector<std::pair<double, double>> points;  // (t, value)
};

ProfileSeries blowup_profile(const OldroydParams& p,
                             const std::array<double, 3>& point, std::size_t n,
                             double ratio,
                             ProfileDiagnostic diag = ProfileDiagnostic::Speed);

ProfileSeries blowup_profile_ns(const NSParams& p, int dim,
                                const std::array<double, 3>& point,
                                std::size_t n, double ratio,
                                ProfileDiagnostic diag = ProfileDiagnostic::Speed);

ProfileSeries blowup_profile_nsac(const PhaseFieldParams& p,
                                  const std::array<double, 3>& point,
                                  std::size_t n, double ratio,
                                  ProfileDiagnostic diag = ProfileDiagnostic::Speed);

struct ExponentFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
};

/// OLS slope of log(value) against log(t_blow - t).
ExponentFit fit_exponent(const ProfileSeries& series, double t_blow);

struct DeformationMetrics {
    double det = 0.0;
    double anisotropy = 0.0;  // max(h1,h2)/min(h1,h2)
};

DeformationMetrics deformation_metrics(const OldroydParams& p, double t,
                                       bool continuation = false);

/// Distance between the phi = -theta and phi = +theta level sets of the
/// kink profile: 4 epsilon atanh(theta).
double interface_width(double epsilon, double theta);

std::string to_json(const AssumptionReport& report);
std::string profile_to_csv(const ProfileSeries& series);
std::string to_json(const ProfileSeries& series, const ExponentFit& fit);

}  // namespace blowup
