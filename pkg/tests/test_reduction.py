import math

import numpy as np
import pytest
from scipy.integrate import quad

from eqcalc.exceptions import DomainError
from eqcalc.reduction import (
    angular_closed_form,
    radial_closed_form,
    series_coefficient,
    varrho_closed_form,
    varrho_indices,
)
from eqcalc.specfun import pochhammer


def test_angular_closed_form_degenerate():
    assert angular_closed_form(1.0, 0.0, 0.7, 0) == pytest.approx(2 * math.pi)
    assert angular_closed_form(1.0, 0.0, 0.7, 2) == pytest.approx(math.pi)
    assert angular_closed_form(0.0, 0.0, 0.0, 0) == pytest.approx(2 * math.pi)
    assert angular_closed_form(0.0, 0.0, 0.5, 2) == 0.0
    with pytest.raises(DomainError):
        angular_closed_form(1.0, 1.0, 0.5, 1)


def test_angular_closed_form_integer_gamma():
    # γ = 1: ∫(r₁² + r₂² − 2r₁r₂ sin ϑ) dϑ = 2π(r₁² + r₂²), and π(r₁² + r₂²) with cos²
    r1, r2 = 0.8, 1.7
    assert angular_closed_form(r1, r2, 1.0, 0) == pytest.approx(2 * math.pi * (r1 ** 2 + r2 ** 2), rel=1e-14)
    assert angular_closed_form(r1, r2, 1.0, 2) == pytest.approx(math.pi * (r1 ** 2 + r2 ** 2), rel=1e-14)


def test_series_coefficient_prefactors():
    lam = 1.7
    for g in (0.3, 1.2):
        assert series_coefficient(g, 0, lam, -1) == pytest.approx(math.pi / lam ** (g + 1), rel=1e-14)
        assert series_coefficient(g, 0, lam, 1) == pytest.approx(math.pi / (2 * lam ** (g + 2)), rel=1e-14)
    # terminating Pochhammer at γ = 0
    assert all(series_coefficient(0.0, s, 1.0, sign) == 0.0 for s in range(1, 6) for sign in (1, -1))
    with pytest.raises(DomainError):
        series_coefficient(0.5, 1, 1.0, 0)


@pytest.mark.parametrize("sign", [-1, 1])
@pytest.mark.parametrize("s", [0, 1, 3])
def test_series_term_matches_direct_radial_integral(sign, s):
    """Each term of the angular series, integrated over r₂, equals Λ_s ϱ_s(u) u^s."""
    g, lam, r1 = 0.6, 1.3, 0.9
    a, b, c = (1 - g) / 2, -g / 2, (1.0 if sign == -1 else 2.0)
    pre = 2 * math.pi if sign == -1 else math.pi
    coef = pre * pochhammer(a, s) * pochhammer(b, s) / (pochhammer(c, s) * math.factorial(s)) * 4 ** s
    k = 1 if sign == -1 else 3

    def f(r2):
        return r2 ** k * math.exp(-lam * r2 * r2) * coef * (r1 * r2) ** (2 * s) * (r1 * r1 + r2 * r2) ** (g - 2 * s)

    direct = quad(f, 0, r1, epsrel=1e-13)[0] + quad(f, r1, math.inf, epsrel=1e-13)[0]
    u = lam * r1 * r1
    closed = series_coefficient(g, s, lam, sign) * varrho_closed_form(g, s, u, sign) * u ** s
    assert closed == pytest.approx(direct, rel=1e-10)


def test_varrho_indices():
    p = varrho_indices(0.5, 2, 1)
    assert (p.mu, p.nu) == pytest.approx(((2 * (0.5 - 6) - 2) / 4, (2 * (2 - 0.5) - 4) / 4))


def test_varrho_closed_form_vector():
    u = np.array([0.1, 1.0, 4.0])
    vals = varrho_closed_form(0.5, 2, u, -1)
    for ui, v in zip(u, vals):
        ref = quad(lambda t: math.exp(-t) * t ** 2 * (t + ui) ** (0.5 - 4), 0, math.inf, epsrel=1e-13)[0]
        assert v == pytest.approx(ref, rel=1e-11)


def test_radial_closed_form_domain_and_value():
    with pytest.raises(DomainError):
        radial_closed_form(0.5, 0, -1.1, -1)
    with pytest.raises(DomainError):
        radial_closed_form(0.5, 0, -0.6, 1)
    assert radial_closed_form(0.5, 0, -0.9, -1) > 0
    # s = 0, γ = 0, sign −1, n = 0: Γ(1)Γ(2)/Γ(2) = 1
    assert radial_closed_form(0.0, 0, 0.0, -1) == pytest.approx(1.0, rel=1e-14)
