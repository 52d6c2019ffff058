"""Closed forms of the angular and radial reduction of the pair weight.

The building block is

    ∫ d²r' |r' − r|^{2γ} e^{−λ r'²},

reduced first over the relative angle (giving a ₂F₁ in
4r²r'²/(r²+r'²)²), then term by term over r' (Whittaker W), and finally over
r (a ratio of Gamma functions).  ``sign`` is ``+1`` for the branch carrying a
cos²ϑ factor and ``-1`` for the plain one.
"""

from __future__ import annotations

import math

import numpy as np

from .exceptions import DomainError
from .specfun import HypParams, WhittakerParams, hyp2f1_partial, log_gamma, pochhammer, whittaker_w

__all__ = [
    "angular_closed_form",
    "series_coefficient",
    "varrho_indices",
    "varrho_closed_form",
    "radial_closed_form",
]


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return sign


def angular_closed_form(r1: float, r2: float, gamma: float, cos_power: int, tol: float = 1e-15) -> float:
    """∫₀^{2π} cos^k ϑ (r₁² + r₂² − 2 r₁ r₂ sin ϑ)^γ dϑ for k ∈ {0, 2}."""
    if cos_power not in (0, 2):
        raise DomainError("cos_power must be 0 or 2")
    s2 = r1 * r1 + r2 * r2
    if s2 == 0.0:
        return 0.0 if gamma > 0 else (2.0 * math.pi if cos_power == 0 else math.pi)
    z = min(1.0, (2.0 * r1 * r2 / s2) ** 2)
    c = 1.0 if cos_power == 0 else 2.0
    pre = 2.0 * math.pi if cos_power == 0 else math.pi
    return pre * s2 ** gamma * hyp2f1_partial(HypParams((1.0 - gamma) / 2.0, -gamma / 2.0, c), z, tol)


def series_coefficient(gamma: float, s: int, lam: float, sign: int) -> float:
    """Coefficient Λ_s multiplying ϱ_s(u) u^s in the expansion of the r'-integral.

    Both branches share the prefactor (3∓1)π / (4 λ^{γ+(3±1)/2}), which is
    π/λ^{γ+1} for the plain branch and π/(2λ^{γ+2}) for the cos² branch.
    """
    _check_sign(sign)
    pre = (3 - sign) * math.pi / (4.0 * lam ** (gamma + (3 + sign) / 2.0))
    poch = pochhammer((1.0 - gamma) / 2.0, s) * pochhammer(-gamma / 2.0, s)
    poch /= pochhammer((3 + sign) / 2.0, s)
    return pre * 4.0 ** s / math.factorial(s) * poch


def varrho_indices(gamma: float, s: int, sign: int) -> WhittakerParams:
    _check_sign(sign)
    mu = (2.0 * (gamma - 3 * s) - 1 - sign) / 4.0
    nu = (2.0 * (s - gamma) - 3 - sign) / 4.0
    return WhittakerParams(mu, nu)


def varrho_closed_form(gamma: float, s: int, u, sign: int):
    """ϱ_s(u) = ∫₀^∞ e^{−t} t^{s+(1±1)/2} (t+u)^{γ−2s} dt via Whittaker W."""
    p = varrho_indices(gamma, s, sign)
    u = np.asarray(u, dtype=float)
    w = whittaker_w(p, u)
    expo = (2.0 * (gamma - s) + 1 + sign) / 4.0
    return math.exp(log_gamma(s + (3 + sign) / 2.0)) * u ** expo * np.exp(u / 2.0) * w


def radial_closed_form(gamma: float, s: int, n: float, sign: int) -> float:
    """R_n = ∫₀^∞ e^{−u/2} u^{(γ+s)/2+n} W_{μ,ν}(u) du as a Gamma ratio."""
    _check_sign(sign)
    if not n > (-3 + sign) / 4.0:
        raise DomainError(f"R_n requires n > {(-3 + sign) / 4.0}")
    a = n + s + (3 - sign) / 4.0
    b = n + gamma + (9 + sign) / 4.0
    c = 2 * s + n + (9 + sign) / 4.0
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(c))
