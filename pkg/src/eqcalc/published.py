"""Transcribed reference formulas kept as regression fixtures.

These reproduce printed closed forms for some moments and for the enhanced
Hamiltonians.  Several of them disagree with the exact expansion in
:mod:`eqcalc.symbol` and with the quadrature oracle.  They are compared,
never trusted: :func:`discrepancy_report` lists every coefficient with its
published value, the assembled value and whether the two agree.
"""

from __future__ import annotations

from .moments import FiducialSpec, MomentTable, _base, _F, moment_q4
from .symbol import EnhancedHamiltonian, PhysicalParams

__all__ = [
    "published_p2",
    "published_q2q2_cross",
    "published_v",
    "published_v_split",
    "published_boson",
    "published_fermion",
    "published_anyon",
    "published_potential_symbol",
    "published_classical",
    "moment_discrepancies",
    "discrepancy_report",
]


def _gamma_ratio_p2(g: float) -> float:
    # γ·₂F₁((2−γ)/2,(1−γ)/2;3/2;1)/D; the ₂F₁ diverges at γ = 0, where the
    # product is read as 0 (its γ → 0⁺ limit is 1/2)
    if g == 0.0:
        return 0.0
    return g * _F((2.0 - g) / 2.0, (1.0 - g) / 2.0, 1.5) / _base(g)


def published_p2(f: FiducialSpec) -> float:
    return 0.5 * f.Omega * f.hbar * (1.0 + _gamma_ratio_p2(f.gamma) - f.gamma / 2.0)


def published_q2q2_cross(f: FiducialSpec) -> float:
    g = f.gamma
    pre = f.hbar ** 2 * (g + 3.0) * (g + 2.0) / (24.0 * f.Omega ** 2)
    return pre * _F((1.0 - g) / 2.0, -g / 2.0, 2.5) / _base(g)


def _v_bracket(g: float) -> float:
    return ((g + 3.0) * (g + 2.0) / (6.0 * _base(g))
            * (5.0 * _F((1.0 - g) / 2.0, -g / 2.0, 2.5)
               + g * (g - 1.0) / 5.0 * _F((3.0 - g) / 2.0, (2.0 - g) / 2.0, 3.5)))


def published_v(f: FiducialSpec) -> float:
    """Hypergeometric form of ⟨V⟩."""
    return f.hbar ** 2 / f.Omega ** 2 * _v_bracket(f.gamma)


def published_v_split(f: FiducialSpec) -> float:
    """(16/3)⟨Q_{x₁}⁴⟩ + 4⟨Q_{x₁}²Q_{x₂}²⟩ with the published cross moment."""
    return 16.0 / 3.0 * moment_q4(f) + 4.0 * published_q2q2_cross(f)


def published_boson(params: PhysicalParams) -> dict[str, float]:
    h, W, m, w, g = params.hbar, params.Omega, params.m, params.varpi, params.g
    return dict(kin_const=h * W / m, harm_const=h * m * w * w / W,
                q2=h * 3.0 * g / W, q1q2=0.0, const_quartic=h * h * 3.0 * g / W ** 2,
                quartic_mixed=2.0 * g)


def published_fermion(params: PhysicalParams) -> dict[str, float]:
    h, W, m, w, g = params.hbar, params.Omega, params.m, params.varpi, params.g
    return dict(kin_const=h * 1.5 * W / m, harm_const=h * 1.5 * m * w * w / W,
                q2=6.0 * h * 3.0 * g / W, q1q2=0.0, const_quartic=2.0 * h * h * 3.0 * g / W ** 2,
                quartic_mixed=2.0 * g)


def published_anyon(gamma: float, params: PhysicalParams) -> dict[str, float]:
    h, W, m, w, g = params.hbar, params.Omega, params.m, params.varpi, params.g
    ratio_qq = _F(-(1.0 + gamma) / 2.0, -gamma / 2.0, 1.5) / _base(gamma)
    return dict(
        kin_const=h * W / m * (1.0 + _gamma_ratio_p2(gamma) - gamma / 2.0),
        harm_const=h * m * w * w / (2.0 * W) * (2.0 + gamma),
        q2=h * g * (gamma + 2.0) / W * 2.5,
        q1q2=-h * g * (gamma + 2.0) / W * (ratio_qq - 1.0),
        # printed without the coupling g
        const_quartic=h * h / W ** 2 * _v_bracket(gamma),
        quartic_mixed=2.0 * g,
    )


def published_potential_symbol(params: PhysicalParams, table: MomentTable) -> dict[str, float]:
    """Coefficients of g⟨p,q|V|p,q⟩ as printed, fed with the true moments."""
    g, s = params.g, params.hbar / table.hbar
    return dict(q2=g * 10.0 * table.q2 * s,
                q1q2=g * 2.0 * (2.0 * table.qq_cross) * s,
                const_quartic=g * (16.0 / 3.0 * table.q4 + 4.0 * table.q2q2_cross) * s * s,
                quartic_mixed=2.0 * g)


def published_classical(params: PhysicalParams) -> dict[str, float]:
    # the printed classical Hamiltonian has no (q₁·q₁)(q₂·q₂) term
    return dict(kinetic=1.0 / (2.0 * params.m), harmonic=0.5 * params.m * params.varpi ** 2,
                quartic_self=params.g, quartic_mixed=0.0)


def _rel(a: float, b: float, floor: float = 1e-12) -> float:
    return abs(a - b) / max(abs(b), floor)


def _rows(name: str, published: dict, h: EnhancedHamiltonian, tol: float) -> list[dict]:
    rows = []
    for key, value in published.items():
        assembled = h.coefficient(key)
        err = _rel(value, assembled)
        rows.append(dict(fixture=name, coefficient=key, published=value, assembled=assembled,
                         rel_err=err, agrees=err <= tol))
    return rows


def discrepancy_report(h: EnhancedHamiltonian, tol: float = 1e-10) -> list[dict]:
    """Compare every applicable fixture with the assembled coefficients."""
    gamma, params = h.stats.gamma, h.params
    rows = []
    if gamma == 0.0:
        rows += _rows("boson", published_boson(params), h, tol)
    if gamma == 1.0:
        rows += _rows("fermion", published_fermion(params), h, tol)
    rows += _rows("anyon", published_anyon(gamma, params), h, tol)
    rows += _rows("potential_symbol", published_potential_symbol(params, h.moments), h, tol)
    rows += _rows("classical", published_classical(params), h, tol)
    return rows


def moment_discrepancies(f: FiducialSpec, table: MomentTable, tol: float = 1e-10) -> list[dict]:
    rows = []
    for key, value in (("p2", published_p2(f)), ("q2q2_cross", published_q2q2_cross(f)),
                       ("v_expect", published_v(f))):
        ref = getattr(table, key)
        err = _rel(value, ref)
        rows.append(dict(moment=key, gamma=f.gamma, published=value, closed_form=ref,
                         rel_err=err, agrees=err <= tol))
    return rows
