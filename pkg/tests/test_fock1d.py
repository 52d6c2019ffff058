import math
import warnings

import numpy as np
import pytest

from eqcalc.exceptions import DomainError, TruncationWarning
from eqcalc.fock1d import (
    build_fock,
    coherent_amplitudes,
    coherent_state,
    default_cutoff,
    fubini_study_metric,
    resolution_of_unity_check,
    symbol_expectation,
)
from eqcalc.symbol import symbol_1dof_quartic


@pytest.fixture(scope="module")
def space():
    return build_fock(96)


def test_build_validation():
    with pytest.raises(DomainError):
        build_fock(4)
    with pytest.raises(DomainError):
        build_fock(16, 0.0)


def test_commutator_on_low_block(space):
    c = space.Q @ space.P - space.P @ space.Q
    b = space.dim - 1
    assert np.allclose(c[:b, :b], 1j * np.eye(b), atol=1e-12)


def test_origin_is_the_ground_state(space):
    psi = coherent_state(space, 0.0, 0.0)
    assert abs(abs(psi.amplitudes[0]) - 1.0) < 1e-13
    assert psi.norm == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("hbar", [1.0, 0.3])
def test_displacement_covariance(hbar):
    f = build_fock(96, hbar)
    for p, q in [(0.7, -1.1), (-1.5, 0.4)]:
        p, q = p * math.sqrt(hbar), q * math.sqrt(hbar)
        psi = coherent_state(f, p, q).amplitudes
        assert np.real(np.vdot(psi, f.Q @ psi)) == pytest.approx(q, abs=1e-12)
        assert np.real(np.vdot(psi, f.P @ psi)) == pytest.approx(p, abs=1e-12)
        var_q = np.real(np.vdot(psi, f.Q @ f.Q @ psi)) - q * q
        assert var_q == pytest.approx(hbar / 2, rel=1e-11)


def test_overlap_of_coherent_states(space):
    a = coherent_state(space, 0.3, -0.2).amplitudes
    b = coherent_state(space, -0.5, 0.9).amplitudes
    d2 = (0.3 + 0.5) ** 2 + (-0.2 - 0.9) ** 2
    assert abs(np.vdot(a, b)) == pytest.approx(math.exp(-d2 / 4), rel=1e-12)


def test_batched_amplitudes_match_single(space):
    batch = coherent_amplitudes(space, [0.1, -0.4], [0.5, 1.2])
    one = coherent_state(space, -0.4, 1.2).amplitudes
    assert np.allclose(batch[:, 1], one, atol=1e-14)


def test_truncation_warning():
    f = build_fock(16)
    with pytest.warns(TruncationWarning):
        coherent_state(f, 4.0, 4.0)


def test_metric_is_flat(space):
    for p, q in [(0.0, 0.0), (1.0, -1.0)]:
        g = fubini_study_metric(space, p, q)
        assert np.max(np.abs(g - np.eye(2))) < 1e-8
    with pytest.raises(DomainError):
        fubini_study_metric(space, 0.0, 0.0, step=0.0)


def test_resolution_of_unity(space):
    r = resolution_of_unity_check(space)
    assert r.block == 24
    assert r.max_dev < 1e-6
    assert r.deviations().shape == (24, 24)
    assert default_cutoff(space, 24) > default_cutoff(space, 8)


def test_symbol_of_quartic(space):
    Q, P = space.Q, space.P
    H = P @ P + Q @ Q + np.linalg.matrix_power(Q, 4)
    H = 0.5 * (H + H.conj().T)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for p, q in [(0.0, 0.0), (0.8, -1.3), (-1.9, 0.6)]:
            assert symbol_expectation(space, H, p, q) == pytest.approx(
                symbol_1dof_quartic(0.5, 0.5, 0.75, p, q), rel=1e-12)
    with pytest.raises(DomainError):
        symbol_expectation(space, 1j * np.eye(space.dim), 0.0, 0.0)


def test_symbol_is_continuous(space):
    H = space.Q @ space.Q
    a = symbol_expectation(space, H, 0.2, 0.5)
    b = symbol_expectation(space, H, 0.2, 0.5 + 1e-7)
    assert abs(a - b) < 1e-6
