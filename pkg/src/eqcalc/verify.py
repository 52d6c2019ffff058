"""Verification suites: closed forms against independent oracles.

Every suite returns a list of rows shaped like
``{check, gamma, lambda, closed_form, oracle, rel_err, pass}`` plus
suite-specific fields, ready for JSON.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .exceptions import AccuracyWarning
from .fock1d import build_fock, fubini_study_metric, resolution_of_unity_check, symbol_expectation
from .moments import FiducialSpec, moment_table
from .oracle import (
    IntegrandSpec,
    QuadConfig,
    angular_check,
    appendix_chain_check,
    moment_montecarlo,
    moment_quadrature,
    norm_quadrature,
    p2_quadrature,
    rel_err,
)
from .symbol import symbol_1dof_quartic

__all__ = [
    "MONOMIALS",
    "ODD_MONOMIALS",
    "verify_moments",
    "verify_appendix",
    "verify_angular",
    "verify_fock",
    "all_passed",
]

# table entry -> monomial over (x1, y1, x2, y2)
MONOMIALS = {
    "q2": (2, 0, 0, 0),
    "q4": (4, 0, 0, 0),
    "q2q2_same": (2, 2, 0, 0),
    "q2q2_cross": (2, 0, 2, 0),
    "qq_cross": (1, 0, 1, 0),
    "q2q2_skew": (2, 0, 0, 2),
}
ODD_MONOMIALS = ((1, 0, 0, 0), (0, 1, 0, 0), (3, 0, 0, 0), (1, 0, 2, 0), (1, 1, 1, 0))


def _row(check, gamma, lam, closed, oracle, tol, **extra):
    e = rel_err(oracle, closed)
    return dict(check=check, gamma=gamma, **{"lambda": lam}, closed_form=closed, oracle=oracle,
                rel_err=e, **{"pass": bool(e <= tol)}, **extra)


def verify_moments(gamma: float, lam: float, cfg: QuadConfig = QuadConfig(), mc: bool = True,
                   refine: bool = True) -> list[dict]:
    """Every moment-table entry against quadrature and, optionally, Monte Carlo.

    Moments are evaluated at Ω = 1, ħ = 1/λ.  A row passes when the
    quadrature agrees to ``cfg.rel_tol`` and the Monte Carlo mean lies
    within three standard errors.
    """
    hbar = 1.0 / lam
    table = moment_table(FiducialSpec.of(gamma, 1.0, hbar))
    closed = {k: getattr(table, k) for k in ("q2", "q4", "q2q2_same", "q2q2_cross", "qq_cross")}
    closed["q2q2_skew"] = table.q4 / 3.0
    rows = []

    def add(name, c, quad_val, mc_pair):
        r = _row(name, gamma, lam, c, quad_val, cfg.rel_tol)
        if mc_pair is not None:
            mean, se = mc_pair
            z = abs(mean - c) / se if se > 0 else (0.0 if mean == c else math.inf)
            r.update(mc_mean=mean, mc_stderr=se, mc_z=z, mc_pass=bool(z <= 3.0))
            r["pass"] = r["pass"] and r["mc_pass"]
        rows.append(r)

    quads = {}
    for name, mono in MONOMIALS.items():
        spec = IntegrandSpec(gamma, lam, mono)
        quads[name] = moment_quadrature(spec, cfg, refine)
        add(name, closed[name], quads[name], moment_montecarlo(spec, cfg) if mc else None)

    spec = IntegrandSpec(gamma, lam, derivative_flag="p2")
    pq = p2_quadrature(gamma, lam, cfg, refine) * hbar ** 2
    pmc = None
    if mc:
        m, s = moment_montecarlo(spec, cfg)
        pmc = (m * hbar ** 2, s * hbar ** 2)
    add("p2", table.p2, pq, pmc)

    norm = norm_quadrature(gamma, lam, cfg, refine)
    add("norm_const", table.norm_const, norm ** -0.5, None)
    # ⟨V⟩ = 4(⟨x₁⁴⟩ + ⟨x₁²y₁²⟩ + ⟨x₁²x₂²⟩ + ⟨x₁²y₂²⟩) by symmetry
    v_quad = 4.0 * (quads["q4"] + quads["q2q2_same"] + quads["q2q2_cross"] + quads["q2q2_skew"])
    add("v_expect", table.v_expect, v_quad, None)

    for mono in ODD_MONOMIALS:
        spec = IntegrandSpec(gamma, lam, mono)
        q = moment_quadrature(spec, cfg, refine=False)
        r = dict(check="odd", gamma=gamma, **{"lambda": lam}, monomial=list(mono), closed_form=0.0,
                 oracle=q, rel_err=abs(q), **{"pass": bool(abs(q) <= cfg.rel_tol)})
        if mc:
            mean, se = moment_montecarlo(spec, cfg)
            r.update(mc_mean=mean, mc_stderr=se, mc_z=abs(mean) / se, mc_pass=bool(abs(mean) <= 3 * se))
            r["pass"] = r["pass"] and r["mc_pass"]
        rows.append(r)
    return rows


def verify_appendix(gamma: float, s_max: int = 12, tol: float = 1e-7) -> list[dict]:
    rows = []
    for sign in (-1, 1):
        for n in (0, 1, 2):
            rows += appendix_chain_check(gamma, s_max, n, sign, tol)
    return rows


def verify_angular(n_points: int = 50, seed: int = 42, tol: float = 1e-8) -> list[dict]:
    """Angular closed form against quadrature at random (r₁, r₂, γ)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    rows = []
    for _ in range(n_points):
        r1, r2 = rng.uniform(0.0, 3.0, 2)
        gamma = float(rng.uniform(0.0, 2.0))
        for k in (0, 2):
            d = angular_check(float(r1), float(r2), gamma, k)
            d["pass"] = bool(d["rel_err"] <= tol)
            rows.append(d)
    return rows


def verify_fock(dim: int = 128, hbar: float = 1.0, tol: float = 1e-6, symbol_tol: float = 1e-8,
                seed: int = 42) -> list[dict]:
    """Flat metric, resolution of unity and the quartic symbol in a truncated space."""
    f = build_fock(dim, hbar)
    rows = []
    s = math.sqrt(hbar)
    for p in (-s, 0.0, s):
        for q in (-s, 0.0, s):
            g = fubini_study_metric(f, p, q)
            dev = float(np.max(np.abs(g - np.eye(2))))
            rows.append(dict(check="metric", p=p, q=q, closed_form=1.0, oracle=float(g[0, 0]),
                             rel_err=dev, **{"pass": bool(dev <= tol)}))
    u = resolution_of_unity_check(f)
    rows.append(dict(check="unity", block=u.block, closed_form=1.0, oracle=float(np.real(u.matrix[0, 0])),
                     rel_err=u.max_dev, **{"pass": bool(u.max_dev <= tol)}))
    Q, P = f.Q, f.P
    H = P @ P + Q @ Q + np.linalg.matrix_power(Q, 4)
    H = 0.5 * (H + H.conj().T)
    rng = np.random.Generator(np.random.PCG64(seed))
    q2, p2, q4 = hbar / 2.0, hbar / 2.0, 0.75 * hbar ** 2
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        for p, q in rng.uniform(-2.0 * s, 2.0 * s, size=(20, 2)):
            val = symbol_expectation(f, H, float(p), float(q))
            ref = symbol_1dof_quartic(q2, p2, q4, float(p), float(q))
            e = rel_err(val, ref)
            rows.append(dict(check="symbol", p=float(p), q=float(q), closed_form=ref, oracle=val,
                             rel_err=e, **{"pass": bool(e <= symbol_tol)}))
    return rows


def all_passed(rows: list[dict]) -> bool:
    return all(r["pass"] for r in rows)
