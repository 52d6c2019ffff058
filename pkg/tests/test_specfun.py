import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqcalc.exceptions import AccuracyWarning, DivergenceError, DomainError
from eqcalc.specfun import (
    HypParams,
    WhittakerParams,
    digamma,
    hyp2f1_partial,
    hyp2f1_unit,
    log_gamma,
    nonpositive_integer,
    pochhammer,
    whittaker_w,
)

mp.mp.dps = 30


def test_log_gamma_examples():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5723649429247001, rel=1e-14)
    assert log_gamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.nan])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_gamma_against_mpmath():
    xs = np.concatenate([np.geomspace(1e-3, 1e3, 400), np.linspace(0.7, 2.3, 200)])
    worst = max(abs(log_gamma(x) - float(mp.loggamma(x))) / max(abs(float(mp.loggamma(x))), 1e-300)
                for x in xs if abs(float(mp.loggamma(x))) > 1e-3)
    assert worst <= 1e-13
    # near the zeros at 1 and 2 the absolute error is what matters
    for x in (1.0 + 1e-9, 2.0 - 1e-7, 0.999):
        assert abs(log_gamma(x) - float(mp.loggamma(x))) <= 1e-16 + 1e-14 * abs(x - 1) * abs(x - 2)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-3, max_value=200.0))
def test_log_gamma_recurrence(x):
    assert log_gamma(x + 1.0) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-12, abs=1e-13)


def test_digamma_against_mpmath():
    for x in (0.1, 0.5, 1.0, 2.5, 7.3, 40.0, -0.5, -2.3):
        assert digamma(x) == pytest.approx(float(mp.digamma(x)), rel=1e-13, abs=1e-14)


def test_pochhammer():
    assert pochhammer(0.5, 0) == 1.0
    assert pochhammer(3.0, 4) == 3 * 4 * 5 * 6
    assert pochhammer(-2.0, 3) == 0.0
    assert pochhammer(1.5, 3) == pytest.approx(1.5 * 2.5 * 3.5)


def test_nonpositive_integer():
    assert nonpositive_integer(-3.0) == 3
    assert nonpositive_integer(0.0) == 0
    assert nonpositive_integer(-2.5) is None
    assert nonpositive_integer(1.0) is None


def test_hyp_params_rejects_pole():
    with pytest.raises(DomainError):
        HypParams(1.0, 1.0, -2.0)
    with pytest.raises(DomainError):
        HypParams(math.inf, 1.0, 1.0)


def test_unit_argument_gauss_and_termination():
    assert hyp2f1_unit(HypParams(0.5, 0.0, 1.5)) == 1.0
    # ₂F₁(−1, b; c; 1) = 1 − b/c
    assert hyp2f1_unit(HypParams(-1.0, -0.5, 1.5)) == pytest.approx(1.0 + 1.0 / 3.0, rel=1e-15)
    assert hyp2f1_unit(HypParams(0.25, -0.25, 1.5)) == pytest.approx(
        float(mp.hyp2f1(0.25, -0.25, 1.5, 1)), rel=1e-14)


def test_unit_argument_divergence():
    with pytest.raises(DivergenceError):
        hyp2f1_unit(HypParams(1.0, 0.5, 1.5))
    with pytest.raises(DivergenceError):
        hyp2f1_partial(HypParams(1.0, 1.0, 1.5), 1.0)


@pytest.mark.parametrize("gamma", [0.1, 0.5, 0.9, 1.3, 1.99])
def test_partial_sum_at_one_matches_gauss(gamma):
    p = HypParams((1 - gamma) / 2, -gamma / 2, 2.5)
    assert hyp2f1_partial(p, 1.0) == pytest.approx(hyp2f1_unit(p), rel=1e-11)


def test_partial_against_mpmath_random():
    rng = np.random.default_rng(7)
    for _ in range(150):
        a, b = rng.uniform(-2.5, 2.5, 2)
        c = rng.uniform(0.3, 4.0)
        z = float(rng.choice([rng.uniform(-1, 1), 1 - 10 ** rng.uniform(-8, -1)]))
        if c - a - b <= 0.05 and z > 0.99:
            continue
        ref = float(mp.hyp2f1(a, b, c, z))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AccuracyWarning)
            val = hyp2f1_partial(HypParams(a, b, c), z)
        assert abs(val - ref) <= 1e-11 * max(1.0, abs(ref))


def test_partial_logarithmic_case():
    # c − a − b = 0: logarithmic growth near z = 1
    p = HypParams(0.5, 0.5, 1.0)
    for z in (0.9, 0.999, 1 - 1e-9):
        assert hyp2f1_partial(p, z) == pytest.approx(float(mp.hyp2f1(0.5, 0.5, 1, z)), rel=1e-12)


def test_partial_domain():
    with pytest.raises(DomainError):
        hyp2f1_partial(HypParams(0.5, 0.5, 1.0), 1.5)


def test_whittaker_against_mpmath():
    rng = np.random.default_rng(3)
    for _ in range(40):
        nu = rng.uniform(-3, 3)
        mu = abs(nu) + 0.5 - 10 ** rng.uniform(-2, 0.8)
        z = 10 ** rng.uniform(-3, 1.5)
        val = whittaker_w(WhittakerParams(mu, nu), z)
        assert val == pytest.approx(float(mp.whitw(mu, nu, z)), rel=1e-11)


def test_whittaker_log_and_vector():
    p = WhittakerParams(-3.25, 2.75)
    z = np.array([1e-30, 1e-3, 1.0, 30.0])
    lw = whittaker_w(p, z, log=True)
    ref = [float(mp.log(mp.whitw(-3.25, 2.75, mp.mpf(v)))) for v in z]
    assert np.allclose(lw, ref, rtol=1e-12)


def test_whittaker_domain():
    with pytest.raises(DomainError):
        whittaker_w(WhittakerParams(3.0, 0.5), 1.0)
