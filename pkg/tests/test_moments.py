import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqcalc.exceptions import DomainError
from eqcalc.moments import (
    FiducialSpec,
    MomentTable,
    StatisticsParam,
    moment_p2,
    moment_q2,
    moment_q2q2_cross,
    moment_q2q2_same,
    moment_q4,
    moment_qq_cross,
    moment_table,
    moment_v,
    norm_constant,
)

GRID = [0.0, 0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 1.9, 1.99]
gammas = st.floats(min_value=0.0, max_value=1.999)


def spec(g, omega=1.0, hbar=1.0):
    return FiducialSpec.of(g, omega, hbar)


def test_statistics_param():
    assert StatisticsParam(0).kind == "boson"
    assert StatisticsParam(1).kind == "fermion"
    assert StatisticsParam(0.5).kind == "anyon"
    assert StatisticsParam(0.5).alpha == pytest.approx(math.pi / 2)
    for bad in (-0.1, 2.0, 2.5, math.nan):
        with pytest.raises(DomainError, match=r"gamma must lie in \[0,2\)"):
            StatisticsParam(bad)


def test_fiducial_spec_validation():
    assert spec(0.5, 2.0, 4.0).lam == 0.5
    with pytest.raises(DomainError):
        FiducialSpec.of(0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        FiducialSpec.of(0.5, 1.0, 0.0)


def test_norm_constant_examples():
    assert norm_constant(spec(0)) == pytest.approx(1 / math.pi, rel=1e-13)
    assert norm_constant(spec(1)) == pytest.approx(1 / (math.pi * math.sqrt(2)), rel=1e-13)
    # λ = 3: N₀ = λ/π
    assert norm_constant(spec(0, 3.0, 1.0)) == pytest.approx(3 / math.pi, rel=1e-13)


def test_boson_and_fermion_values():
    b, f = moment_table(spec(0)), moment_table(spec(1))
    assert (b.q2, b.p2, b.q4, b.q2q2_same, b.q2q2_cross) == pytest.approx((0.5, 0.5, 0.75, 0.25, 0.25), rel=1e-12)
    assert b.qq_cross == 0.0
    assert (f.q2, f.p2, f.q4, f.q2q2_same, f.q2q2_cross) == pytest.approx((0.75, 0.75, 1.5, 0.5, 0.5), rel=1e-12)
    assert f.qq_cross == pytest.approx(-0.25, rel=1e-12)
    assert moment_q2(spec(0.5)) == 0.625


@pytest.mark.parametrize("g", GRID)
def test_polynomial_forms(g):
    f = spec(g)
    assert moment_q4(f) == pytest.approx(3 * (g * g + 7 * g + 8) / 32, rel=1e-12)
    assert moment_q2q2_cross(f) == pytest.approx((3 * g * g + 5 * g + 8) / 32, rel=1e-12)
    assert moment_qq_cross(f) == pytest.approx(-g / 4, rel=1e-12, abs=1e-15)
    assert moment_v(f) == pytest.approx((g + 2) * (g + 3), rel=1e-12)
    assert moment_p2(f) == pytest.approx((g + 2) / 4, rel=1e-15)


def test_v_total_matches_symmetric_sum():
    # ⟨V⟩ = 4(⟨x₁⁴⟩ + ⟨x₁²y₁²⟩ + ⟨x₁²x₂²⟩ + ⟨x₁²y₂²⟩) with ⟨x₁²y₂²⟩ = ⟨x₁⁴⟩/3
    for g in GRID:
        f = spec(g)
        q4 = moment_q4(f)
        expect = 4 * (q4 + moment_q2q2_same(f) + moment_q2q2_cross(f) + q4 / 3)
        assert moment_v(f) == pytest.approx(expect, rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(gammas, st.floats(min_value=0.1, max_value=10.0), st.floats(min_value=0.1, max_value=10.0))
def test_scaling_law(g, omega, hbar):
    lam = omega / hbar
    a, b = moment_table(spec(g, omega, hbar)), moment_table(spec(g, 2 * omega, hbar))
    assert b.q2 == pytest.approx(a.q2 / 2, rel=1e-12)
    assert b.p2 == pytest.approx(a.p2 * 2, rel=1e-12)
    assert b.q4 == pytest.approx(a.q4 / 4, rel=1e-11)
    assert b.q2q2_cross == pytest.approx(a.q2q2_cross / 4, rel=1e-11)
    assert b.qq_cross == pytest.approx(a.qq_cross / 2, rel=1e-11, abs=1e-15)
    assert a.norm_const == pytest.approx(norm_constant(spec(g, lam, 1.0)), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(gammas)
def test_positivity_and_uncertainty(g):
    t = moment_table(spec(g))
    assert min(t.q2, t.p2, t.q4, t.q2q2_same, t.q2q2_cross) > 0
    assert t.qq_cross <= 0
    assert t.q2 * t.p2 >= 0.25 - 1e-15


def test_qq_cross_vanishes_only_for_bosons_and_decreases():
    vals = [moment_qq_cross(spec(g)) for g in np.linspace(0, 1.99, 60)]
    assert vals[0] == 0.0
    assert all(v < 0 for v in vals[1:])
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_table_invariants_and_json_round_trip():
    t = moment_table(spec(0.7, 1.3, 0.4))
    assert t.q2q2_same == t.q4 / 3
    assert MomentTable.from_json(t.to_json()) == t
    assert MomentTable.from_dict(t.to_dict()) == t
    with pytest.raises(KeyError):
        MomentTable.from_dict({"q2": 1.0})


def test_continuity_in_gamma():
    eps = 1e-7
    for g in (0.5, 1.0, 1.5):
        a, b = moment_table(spec(g - eps)), moment_table(spec(g + eps))
        for k in ("q2", "p2", "q4", "q2q2_cross", "qq_cross", "v_expect", "norm_const"):
            assert abs(getattr(a, k) - getattr(b, k)) < 1e-5
