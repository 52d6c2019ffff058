"""Brute-force reference values for the fiducial moments and the reduction identities.

Two independent estimators are provided.

* A deterministic product rule over (u₁, u₂, ψ, φ₁), where u = λr², ψ is the
  angle between the two position vectors and φ₁ the overall orientation.
  The pair weight |r₁ − r₂|^{2γ} is singular only where u₁ = u₂ and ψ = 0,
  which is placed on a corner of the grid so double-exponential rules absorb
  it.
* Plain Monte Carlo over ℝ⁴ with a Gaussian proposal and a ratio estimator.

Neither uses the hypergeometric machinery, so agreement with the closed
forms is a genuine check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.laguerre import laggauss
from scipy.integrate import quad

from .exceptions import AccuracyWarning, DomainError
from .quadrature import Rule, exp_sinh, integrate_half_line, tanh_sinh
from .reduction import (
    angular_closed_form,
    radial_closed_form,
    series_coefficient,
    varrho_closed_form,
    varrho_indices,
)
from .specfun import whittaker_w

__all__ = [
    "QuadConfig",
    "IntegrandSpec",
    "angular_integral",
    "norm_quadrature",
    "moment_quadrature",
    "p2_quadrature",
    "moment_montecarlo",
    "appendix_chain_check",
    "rel_err",
]


@dataclass(frozen=True)
class QuadConfig:
    radial_nodes: int = 64
    angular_nodes: int = 64
    mc_samples: int = 1_000_000
    mc_seed: int = 42
    rel_tol: float = 1e-6

    def __post_init__(self):
        if self.radial_nodes < 16:
            raise DomainError("radial_nodes must be at least 16")
        if self.angular_nodes < 32:
            raise DomainError("angular_nodes must be at least 32")
        if self.mc_samples < 100_000:
            raise DomainError("mc_samples must be at least 1e5")
        if not 0 <= self.mc_seed < 2 ** 64:
            raise DomainError("mc_seed must fit in 64 bits")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")

    def refined(self) -> "QuadConfig":
        return QuadConfig(2 * self.radial_nodes, 2 * self.angular_nodes,
                          self.mc_samples, self.mc_seed, self.rel_tol)


@dataclass(frozen=True)
class IntegrandSpec:
    """Integrand |r₁ − r₂|^{2γ} e^{−λ(r₁²+r₂²)} × x₁^a y₁^b x₂^c y₂^d.

    With ``derivative_flag="p2"`` the monomial is ignored and the kinetic
    integrand of ⟨P_{x₁}²⟩ is used instead.
    """

    gamma: float
    lam: float
    monomial: tuple[int, int, int, int] = (0, 0, 0, 0)
    derivative_flag: str = "none"

    def __post_init__(self):
        if not 0.0 <= self.gamma < 2.0:
            raise DomainError("gamma must lie in [0,2)")
        if not self.lam > 0.0:
            raise DomainError("lambda must be positive")
        mono = tuple(int(k) for k in self.monomial)
        if len(mono) != 4 or min(mono) < 0 or sum(mono) > 4:
            raise DomainError("monomial must be 4 non-negative exponents of total degree <= 4")
        object.__setattr__(self, "monomial", mono)
        if self.derivative_flag not in ("none", "p2"):
            raise DomainError("derivative_flag must be 'none' or 'p2'")


def rel_err(value: float, reference: float, floor: float = 1e-12) -> float:
    """Relative error, falling back to the absolute error for references below ``floor``."""
    scale = abs(reference)
    return abs(value - reference) / (scale if scale > floor else 1.0)


# --------------------------------------------------------------------------
# angular rule


def angular_integral(r1: float, r2: float, gamma: float, cos_power: int,
                     n_nodes: int = 64, rel_tol: float = 1e-10) -> float:
    """∫₀^{2π} cos^k ϑ (r₁² + r₂² − 2 r₁ r₂ sin ϑ)^γ dϑ by quadrature.

    The periodic trapezoid rule is used when the integrand is analytic in a
    strip wide enough for it to converge; otherwise (nearly equal radii) a
    tanh-sinh rule is anchored at the near-singular point ϑ = π/2.  The
    result is recomputed with twice the nodes and an ``AccuracyWarning`` is
    issued if the two differ by more than ``rel_tol``.
    """
    if cos_power not in (0, 2):
        raise DomainError("cos_power must be 0 or 2")
    if n_nodes < 32:
        raise DomainError("n_nodes must be at least 32")
    if r1 < 0 or r2 < 0:
        raise DomainError("radii must be non-negative")
    gap2 = (r1 - r2) ** 2
    prod = r1 * r2
    # half-width of the strip of analyticity around the real ϑ axis
    width = math.inf if prod == 0.0 else math.asinh(abs(r1 - r2) / (2.0 * math.sqrt(prod))) * 2.0

    def trapezoid(n):
        phi = 2.0 * math.pi * np.arange(n) / n
        base = gap2 + 4.0 * prod * np.sin(phi / 2.0) ** 2
        f = base ** gamma
        if cos_power == 2:
            f = f * np.sin(phi) ** 2
        return float(np.sum(f)) * 2.0 * math.pi / n

    def anchored(n):
        rule = tanh_sinh(0.0, 2.0 * math.pi, n | 1)
        half = np.minimum(rule.lo, rule.hi) / 2.0
        base = gap2 + 4.0 * prod * np.sin(half) ** 2
        f = np.where(base > 0.0, base, 0.0) ** gamma
        if cos_power == 2:
            f = f * np.sin(rule.x) ** 2
        return float(np.sum(f * rule.w))

    # ϑ = φ + π/2 maps sin ϑ to cos φ and cos²ϑ to sin²φ
    rule = trapezoid if width * n_nodes > 80.0 else anchored
    coarse, fine = rule(n_nodes), rule(2 * n_nodes)
    if rel_err(coarse, fine) > rel_tol:
        warnings.warn(f"angular quadrature changed by {rel_err(coarse, fine):.1e} under refinement",
                      AccuracyWarning, stacklevel=2)
    return fine


# --------------------------------------------------------------------------
# four-dimensional product rule


@dataclass(frozen=True)
class _Grid:
    r1: np.ndarray
    r2: np.ndarray
    par: np.ndarray   # component of r₁ − r₂ along r₁
    perp: np.ndarray  # component of r₁ − r₂ along r₁ rotated by +90°
    d2: np.ndarray    # |r₁ − r₂|² = par² + perp²
    w: np.ndarray     # e^{−u₁−u₂}, Jacobian and |r₁−r₂|^{2γ}; φ₁ not included
    cos_psi: np.ndarray
    sin_psi: np.ndarray


@lru_cache(maxsize=8)
def _grid(gamma: float, lam: float, n_rad: int, n_ang: int) -> _Grid:
    u1, w1 = laggauss(n_rad)
    lower = [tanh_sinh(0.0, float(a), n_rad | 1) for a in u1]
    upper = exp_sinh(0.0, n_rad | 1)
    u2 = np.stack([np.concatenate([lo.x, a + upper.lo]) for lo, a in zip(lower, u1)])
    du = np.stack([np.concatenate([-lo.hi, upper.lo]) for lo in lower])  # u₂ − u₁
    w2 = np.stack([np.concatenate([lo.w, upper.w]) for lo in lower]) * np.exp(-u2)
    ang: Rule = tanh_sinh(0.0, 2.0 * math.pi, n_ang | 1)
    # ψ measured from whichever end of [0, 2π] is closer keeps sin ψ and
    # 1 − cos ψ accurate next to the singular corner
    near = np.minimum(ang.lo, ang.hi)
    sin_psi = np.where(ang.lo <= ang.hi, np.sin(near), -np.sin(near))[None, None, :]
    vers = 2.0 * np.sin(near / 2.0)[None, None, :] ** 2  # 1 − cos ψ

    U1 = u1[:, None, None]
    U2 = u2[:, :, None]
    r1 = np.sqrt(U1 / lam)
    r2 = np.sqrt(U2 / lam)
    dr = -du[:, :, None] / (np.sqrt(lam) * (np.sqrt(U1) + np.sqrt(U2)))  # r₁ − r₂
    par = dr + r2 * vers
    perp = r2 * sin_psi
    d2 = par * par + perp * perp
    pair = d2 ** gamma if gamma != 0.0 else np.ones_like(d2)
    w = (w1[:, None, None] * w2[:, :, None] * ang.w[None, None, :]) * pair / (4.0 * lam ** 2)
    shape = w.shape
    b = lambda a: np.broadcast_to(a, shape)  # noqa: E731
    return _Grid(r1=b(r1), r2=b(r2), par=par, perp=b(perp), d2=d2, w=w,
                 cos_psi=b(1.0 - vers), sin_psi=b(sin_psi))


def _expect_on_grid(spec: IntegrandSpec, n_rad: int, n_ang: int) -> tuple[float, float]:
    """Return (∫ f·weight, ∫ weight) on the product grid."""
    g = _grid(spec.gamma, spec.lam, n_rad, n_ang)
    a, b, c, d = spec.monomial
    kinetic = spec.derivative_flag == "p2"
    # the φ₁ dependence is a trigonometric polynomial of degree ≤ 4, so an
    # (M = degree + 1)-point trapezoid rule is exact
    degree = 2 if kinetic else a + b + c + d
    m = degree + 1
    num = 0.0
    for k in range(m):
        phi1 = 2.0 * math.pi * (k + 0.5) / m
        cf, sf = math.cos(phi1), math.sin(phi1)
        x1, y1 = g.r1 * cf, g.r1 * sf
        if kinetic:
            dx = g.par * cf - g.perp * sf
            dy = g.par * sf + g.perp * cf
            f = _kinetic_bracket(spec.gamma, spec.lam, x1, dx, dy, g.d2)
        else:
            # r₂ points along φ₁ − ψ
            cos2 = cf * g.cos_psi + sf * g.sin_psi
            sin2 = sf * g.cos_psi - cf * g.sin_psi
            f = x1 ** a * y1 ** b * (g.r2 * cos2) ** c * (g.r2 * sin2) ** d
        num += float(np.sum(f * g.w))
    return 2.0 * math.pi * num / m, 2.0 * math.pi * float(np.sum(g.w))


def _kinetic_bracket(gamma, lam, x1, dx, dy, d2):
    """η⁻¹ ∂²η/∂x₁² with the singular pieces kept together."""
    out = lam * (lam * x1 * x1 - 1.0)
    if gamma != 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            sing = gamma * (gamma - 1.0) * (dx * dx - dy * dy) / (d2 * d2) - 2.0 * lam * gamma * x1 * dx / d2
        out = out + np.where(d2 > 0.0, sing, 0.0)
    return out


def _with_refinement(compute, cfg: QuadConfig, refine: bool, what: str) -> float:
    value = compute(cfg.radial_nodes, cfg.angular_nodes)
    if refine:
        r = cfg.refined()
        finer = compute(r.radial_nodes, r.angular_nodes)
        change = rel_err(value, finer)
        if change > cfg.rel_tol:
            warnings.warn(f"{what}: doubling the nodes changed the result by {change:.1e}",
                          AccuracyWarning, stacklevel=3)
    return value


def norm_quadrature(gamma: float, lam: float, cfg: QuadConfig = QuadConfig(), refine: bool = True) -> float:
    """∫ |r₁ − r₂|^{2γ} e^{−λ(r₁²+r₂²)} d⁴r; the normalisation is its inverse square root."""
    spec = IntegrandSpec(gamma, lam)
    return _with_refinement(lambda n, m: _expect_on_grid(spec, n, m)[1], cfg, refine, "norm integral")


def moment_quadrature(spec: IntegrandSpec, cfg: QuadConfig = QuadConfig(), refine: bool = True) -> float:
    """Normalised expectation of ``spec``'s integrand by the product rule.

    For ``derivative_flag="p2"`` the result is ⟨P_{x₁}²⟩/ħ².
    """
    def compute(n, m):
        num, den = _expect_on_grid(spec, n, m)
        val = num / den
        return -val if spec.derivative_flag == "p2" else val

    return _with_refinement(compute, cfg, refine, f"moment {spec.monomial}")


def p2_quadrature(gamma: float, lam: float, cfg: QuadConfig = QuadConfig(), refine: bool = True) -> float:
    """⟨P_{x₁}²⟩ in units of ħ², from the combined second-derivative integrand."""
    return moment_quadrature(IntegrandSpec(gamma, lam, derivative_flag="p2"), cfg, refine)


# --------------------------------------------------------------------------
# Monte Carlo

_MC_CHUNK = 1 << 17


def moment_montecarlo(spec: IntegrandSpec, cfg: QuadConfig = QuadConfig()) -> tuple[float, float]:
    """Ratio estimate of the normalised expectation and its standard error.

    Monomials use the Gaussian proposal e^{−λ(r₁²+r₂²)} on ℝ⁴ with weight
    |r₁ − r₂|^{2γ}.  The kinetic integrand contains |r₁ − r₂|^{2γ−2}
    pieces whose second moment diverges under that proposal for γ ≤ 1/2, so
    for 0 < γ < 1 the relative coordinate is drawn from a density tilted by
    |r₁ − r₂|^{2γ−2} instead, which keeps the weights bounded.
    """
    lam, gamma = spec.lam, spec.gamma
    kinetic = spec.derivative_flag == "p2"
    beta = gamma - 1.0 if kinetic and 0.0 < gamma < 1.0 else 0.0
    rng = np.random.Generator(np.random.PCG64(cfg.mc_seed))
    sd = math.sqrt(0.5 / lam)
    a, b, c, d = spec.monomial
    sums = np.zeros(5)  # Σw, Σwf, Σw², Σ(wf)², Σw·wf
    left = cfg.mc_samples
    while left > 0:
        n = min(_MC_CHUNK, left)
        left -= n
        if beta == 0.0:
            x1, y1, x2, y2 = rng.normal(0.0, sd, size=(4, n))
        else:
            cx, cy = rng.normal(0.0, sd, size=(2, n))
            rad = np.sqrt(rng.gamma(beta + 1.0, 1.0, size=n) / lam)
            th = rng.uniform(0.0, 2.0 * math.pi, size=n)
            rx, ry = rad * np.cos(th), rad * np.sin(th)
            s = 1.0 / math.sqrt(2.0)
            x1, y1, x2, y2 = s * (cx + rx), s * (cy + ry), s * (cx - rx), s * (cy - ry)
        dx, dy = x1 - x2, y1 - y2
        d2 = dx * dx + dy * dy
        w = d2 ** (gamma - beta) if gamma - beta != 0.0 else np.ones(n)
        if kinetic:
            f = -_kinetic_bracket(gamma, lam, x1, dx, dy, d2)
        else:
            f = x1 ** a * y1 ** b * x2 ** c * y2 ** d
        wf = w * f
        sums += [np.sum(w), np.sum(wf), np.sum(w * w), np.sum(wf * wf), np.sum(w * wf)]
    n = cfg.mc_samples
    sw, swf, sww, sff, swwf = sums
    mean = swf / sw
    resid = max(sff - 2.0 * mean * swwf + mean * mean * sww, 0.0)
    stderr = math.sqrt(resid / n) / (sw / n) / math.sqrt(n)
    return float(mean), float(stderr)


# --------------------------------------------------------------------------
# reduction identities

_U_PROBES = (0.05, 0.5, 2.0, 8.0)


def _varrho_direct(gamma: float, s: int, u: float, sign: int) -> float:
    k = s + (1 + sign) / 2.0
    f = lambda t: math.exp(-t) * t ** k * (t + u) ** (gamma - 2 * s)  # noqa: E731
    head, _ = quad(f, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=200)
    tail, _ = quad(f, 1.0, math.inf, epsabs=0.0, epsrel=1e-13, limit=200)
    return head + tail


def _radial_direct(gamma: float, s: int, n: float, sign: int) -> float:
    p = varrho_indices(gamma, s, sign)
    expo = (gamma + s) / 2.0 + n

    def integrand(rule):
        u = rule.lo
        return np.exp(-u / 2.0 + expo * np.log(u) + whittaker_w(p, u, log=True))

    val, _ = integrate_half_line(integrand, n=129, rel_tol=1e-11)
    return float(val)


def appendix_chain_check(gamma: float, s_max: int = 12, n: int = 1, sign: int = -1,
                         tol: float = 1e-7, lam: float = 1.0) -> list[dict]:
    """Dual-route checks of the radial reduction for s = 0..s_max.

    For every s two identities are tested: the Whittaker form of ϱ_s(u)
    against direct integration at a few u, and the Gamma-ratio form of R_n
    against direct integration of e^{−u/2} u^{(γ+s)/2+n} W(u).  Each row
    reports both values, the relative error and whether it is within
    ``tol``; ``coefficient`` holds Λ_s, which vanishes identically at γ = 0
    for s ≥ 1.
    """
    if s_max < 8:
        raise DomainError("s_max must be at least 8")
    if n not in (0, 1, 2) or sign not in (1, -1):
        raise DomainError("n must be 0, 1 or 2 and sign +1 or -1")
    rows = []
    for s in range(s_max + 1):
        coef = series_coefficient(gamma, s, lam, sign)
        closed = varrho_closed_form(gamma, s, np.array(_U_PROBES), sign)
        direct = [_varrho_direct(gamma, s, u, sign) for u in _U_PROBES]
        errs = [rel_err(c, o) for c, o in zip(closed, direct)]
        worst = int(np.argmax(errs))
        rows.append(dict(check="varrho", gamma=gamma, s=s, n=n, sign=sign, u=_U_PROBES[worst],
                         closed_form=float(closed[worst]), oracle=direct[worst],
                         rel_err=float(errs[worst]), coefficient=coef,
                         **{"pass": bool(errs[worst] <= tol)}))
        rc = radial_closed_form(gamma, s, n, sign)
        rd = _radial_direct(gamma, s, n, sign)
        e = rel_err(rc, rd)
        rows.append(dict(check="radial", gamma=gamma, s=s, n=n, sign=sign, u=None,
                         closed_form=rc, oracle=rd, rel_err=float(e), coefficient=coef,
                         **{"pass": bool(e <= tol)}))
    return rows


def angular_check(r1: float, r2: float, gamma: float, cos_power: int) -> dict:
    """Angular closed form versus :func:`angular_integral` at one point."""
    cf = angular_closed_form(r1, r2, gamma, cos_power)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", AccuracyWarning)
        num = angular_integral(r1, r2, gamma, cos_power, n_nodes=128)
    return dict(check="angular", r1=r1, r2=r2, gamma=gamma, cos_power=cos_power,
                closed_form=cf, oracle=num, rel_err=rel_err(cf, num))
