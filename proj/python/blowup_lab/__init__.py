"""Closed-form finite-time blow-up solutions and their verification toolbox.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (
    FieldSample,
    NSParams,
    OldroydParams,
    PhaseFieldParams,
    ReducedState,
    VerificationError,
    blow_up_time,
    blowup_profile,
    check_assumptions,
    closed_form_reduced,
    compare_ode,
    deformation_metrics,
    integrate_reduced,
    interface_width,
    ns_eval,
    ns_residual,
    nsac_eval,
    nsac_residual,
    oldroyd_eval,
    oldroyd_residual,
    residual_report,
    __version__,
)

__all__ = [
    "FieldSample",
    "NSParams",
    "OldroydParams",
    "PhaseFieldParams",
    "ReducedState",
    "VerificationError",
    "blow_up_time",
    "blowup_profile",
    "check_assumptions",
    "closed_form_reduced",
    "compare_ode",
    "deformation_metrics",
    "integrate_reduced",
    "interface_width",
    "ns_eval",
    "ns_residual",
    "nsac_eval",
    "nsac_residual",
    "oldroyd_eval",
    "oldroyd_residual",
    "residual_report",
    "__version__",
]
