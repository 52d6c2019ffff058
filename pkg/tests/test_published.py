import pytest

from eqcalc.moments import FiducialSpec, moment_table
from eqcalc.published import (
    discrepancy_report,
    moment_discrepancies,
    published_p2,
    published_q2q2_cross,
    published_v,
    published_v_split,
)
from eqcalc.symbol import PhysicalParams, enhanced_hamiltonian

UNIT = PhysicalParams()


def spec(g):
    return FiducialSpec.of(g, 1.0, 1.0)


def test_reference_moments_at_integer_gamma():
    assert published_p2(spec(0)) == pytest.approx(0.5)
    assert published_p2(spec(1)) == pytest.approx(0.75)
    assert published_q2q2_cross(spec(0)) == pytest.approx(0.25)
    assert published_q2q2_cross(spec(1)) == pytest.approx(0.5)
    assert published_v(spec(0)) == pytest.approx(5.0)
    assert published_v(spec(1)) == pytest.approx(10.0)


def test_reference_moments_disagree_between_integers():
    t = moment_table(spec(0.5))
    assert published_p2(spec(0.5)) == pytest.approx(0.75, rel=1e-10)
    assert t.p2 == 0.625
    assert abs(published_q2q2_cross(spec(0.5)) - t.q2q2_cross) > 1e-3
    # the split form omits ⟨x₁²y₂²⟩ = ⟨x₁⁴⟩/3
    for g in (0.0, 0.5, 1.0):
        t = moment_table(spec(g))
        gap = t.v_expect - published_v_split(spec(g))
        assert gap == pytest.approx(4 * t.q4 / 3 + 4 * (t.q2q2_cross - published_q2q2_cross(spec(g))), rel=1e-9)


def test_moment_discrepancies_rows():
    rows = moment_discrepancies(spec(0.0), moment_table(spec(0.0)))
    assert {r["moment"]: r["agrees"] for r in rows} == dict(p2=True, q2q2_cross=True, v_expect=False)


def _by(rows, fixture):
    return {r["coefficient"]: r for r in rows if r["fixture"] == fixture}


def test_boson_report():
    rows = discrepancy_report(enhanced_hamiltonian(0.0, UNIT))
    b = _by(rows, "boson")
    assert b["kin_const"]["agrees"] and b["harm_const"]["agrees"] and b["q1q2"]["agrees"]
    assert b["q2"]["published"] == 3.0 and b["q2"]["assembled"] == pytest.approx(6.0)
    assert not b["const_quartic"]["agrees"]
    assert not _by(rows, "classical")["quartic_mixed"]["agrees"]
    assert "fermion" not in {r["fixture"] for r in rows}


def test_fermion_report():
    rows = discrepancy_report(enhanced_hamiltonian(1.0, UNIT))
    f = _by(rows, "fermion")
    assert f["kin_const"]["agrees"] and f["harm_const"]["agrees"]
    assert f["q2"]["published"] == 18.0 and f["q2"]["assembled"] == pytest.approx(9.0)
    assert f["q1q2"]["published"] == 0.0 and f["q1q2"]["assembled"] == pytest.approx(-2.0)
    a = _by(rows, "anyon")
    assert a["kin_const"]["agrees"] and a["harm_const"]["agrees"]


def test_anyon_report_between_integers():
    a = _by(discrepancy_report(enhanced_hamiltonian(0.5, UNIT)), "anyon")
    assert a["harm_const"]["agrees"]
    assert a["kin_const"]["published"] == pytest.approx(1.5)
    assert a["kin_const"]["assembled"] == pytest.approx(1.25)
