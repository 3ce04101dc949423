import math

import pytest

import blowup_lab as bl


def test_blow_up_time():
    p = bl.OldroydParams(f0=1.0, alpha=3.0, beta=1.0)
    assert bl.blow_up_time(p) == pytest.approx(0.5, abs=1e-15)
    assert bl.blow_up_time(bl.OldroydParams(f0=1.0, alpha=1.0, beta=-1.0)) is None


def test_validation_raises():
    with pytest.raises(bl.VerificationError):
        bl.OldroydParams(alpha=2.0, beta=2.0)
    with pytest.raises(bl.VerificationError):
        bl.PhaseFieldParams(epsilon=0.0)


def test_oldroyd_eval_reference_point():
    p = bl.OldroydParams()
    s = bl.oldroyd_eval(p, [1.0, 1.0], 0.25)
    assert s.u == pytest.approx([2.0, -2.0], rel=1e-14)
    assert s.P == pytest.approx(-4.0, rel=1e-14)
    assert s.p == pytest.approx(-1.5, rel=1e-14)
    assert s.F_diag[0] * s.F_diag[1] == pytest.approx(1.0, abs=1e-12)


def test_residuals_vanish_pointwise():
    comps = bl.oldroyd_residual(bl.OldroydParams(), [1.0, 1.0], 0.25)
    assert all(c["rel"] <= 1e-10 for c in comps.values())

    ns = bl.NSParams(c1=1.0, c2=0.3)
    comps = bl.ns_residual(ns, [0.1, -0.2], 0.5)
    assert all(c["rel"] <= 1e-10 for c in comps.values())

    pf = bl.PhaseFieldParams(epsilon=0.1)
    comps = bl.nsac_residual(pf, [0.3, 0.1], 0.5)
    assert all(c["rel"] <= 1e-9 for c in comps.values())


def test_residual_report_standard_sweep():
    report = bl.residual_report("oldroyd", bl.OldroydParams())
    assert report["max_rel"] <= 1e-10
    names = {c["name"] for c in report["components"]}
    assert "transformed_momentum_1" in names
    assert "original_div_F_1" in names


def test_ode_reduction_against_closed_form():
    p = bl.OldroydParams()
    err = bl.compare_ode(p, 0.45, 1e-3)
    assert err["max"] <= 1e-4
    state = bl.closed_form_reduced(p, 0.45)
    assert state.f == pytest.approx(10.0, rel=1e-12)
    assert state.h1 * state.h2 == pytest.approx(1.0, abs=1e-12)


def test_blowup_profile_slopes():
    prof = bl.blowup_profile("oldroyd", bl.OldroydParams(), [1.0, 1.0])
    assert prof["slope"] == pytest.approx(-1.0, abs=0.01)
    prof = bl.blowup_profile("ns2d", bl.NSParams(), [0.0, 0.0])
    assert prof["slope"] == pytest.approx(-0.5, abs=0.01)


def test_assumption_audit():
    report = bl.check_assumptions(bl.OldroydParams(), [1.0, 2.0, 4.0, 8.0])
    statuses = {a["name"]: a["status"] for a in report["assumptions"]}
    assert statuses["A1"] == "violated"
    assert statuses["A2"] == "satisfied"
    assert statuses["A3"] == "surrogate-violated"


def test_deformation_and_interface():
    det, aniso = bl.deformation_metrics(bl.OldroydParams(), 0.45)
    assert det == pytest.approx(1.0, abs=1e-12)
    assert aniso == pytest.approx(10.0, rel=1e-9)
    assert bl.interface_width(0.1, 0.9) == pytest.approx(
        0.4 * math.atanh(0.9), rel=1e-12
    )
