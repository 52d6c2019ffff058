"""Enhanced classical Hamiltonians from fiducial moments.

For the two-particle operator

    𝓗 = Σ_σ [P_σ²/2m + mϖ² Q_σ²/2] + g (Q₁² + Q₂²)²

the coherent-state symbol H(p, q) = ⟨η| 𝓗(P + p, Q + q) |η⟩ is a polynomial in
(p, q) whose coefficients are fiducial moments.  :func:`assemble_enhanced`
obtains it by expanding the quartic term monomial by monomial and replacing
every Q-monomial with its expectation value, so no coefficient is typed in
by hand.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import DomainError
from .moments import FiducialSpec, MomentTable, StatisticsParam, moment_table

__all__ = [
    "PhysicalParams",
    "PhaseSpacePoint",
    "Coefficient",
    "EnhancedHamiltonian",
    "InconsistencyError",
    "symbol_1dof_quartic",
    "assemble_enhanced",
    "enhanced_hamiltonian",
    "eval_hamiltonian",
    "classical_limit",
    "spectator_shift",
    "expansion_moment",
]


class InconsistencyError(ValueError):
    """A moment table does not belong to the requested physical parameters."""


@dataclass(frozen=True)
class PhysicalParams:
    m: float = 1.0
    varpi: float = 1.0
    g: float = 1.0
    hbar: float = 1.0
    Omega: float = 1.0

    def __post_init__(self):
        for name in ("m", "varpi", "g", "hbar", "Omega"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if not self.m > 0:
            raise DomainError("m must be positive")
        if self.varpi < 0 or self.g < 0 or self.hbar < 0:
            raise DomainError("varpi, g and hbar must be non-negative")
        if not self.Omega > 0:
            raise DomainError("Omega must be positive")


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Two particles in the plane; ``as_array`` orders (px1, py1, px2, py2, qx1, qy1, qx2, qy2)."""

    p1: tuple[float, float] = (0.0, 0.0)
    p2: tuple[float, float] = (0.0, 0.0)
    q1: tuple[float, float] = (0.0, 0.0)
    q2: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        for name in ("p1", "p2", "q1", "q2"):
            v = tuple(float(c) for c in getattr(self, name))
            if len(v) != 2 or not all(math.isfinite(c) for c in v):
                raise DomainError(f"{name} must be a finite 2-vector")
            object.__setattr__(self, name, v)

    def as_array(self) -> np.ndarray:
        return np.array(self.p1 + self.p2 + self.q1 + self.q2)

    @classmethod
    def from_array(cls, a) -> "PhaseSpacePoint":
        a = [float(v) for v in a]
        if len(a) != 8:
            raise DomainError("phase-space arrays have 8 components")
        return cls(tuple(a[0:2]), tuple(a[2:4]), tuple(a[4:6]), tuple(a[6:8]))


@dataclass(frozen=True)
class Coefficient:
    """``value`` multiplies the phase-space function named by ``term``; it scales as ħ^hbar_power."""

    name: str
    term: str
    hbar_power: int
    value: float


# phase-space functions of x = (px1, py1, px2, py2, qx1, qy1, qx2, qy2)
_TERMS = {
    "p1.p1+p2.p2": lambda x: x[0] ** 2 + x[1] ** 2 + x[2] ** 2 + x[3] ** 2,
    "q1.q1+q2.q2": lambda x: x[4] ** 2 + x[5] ** 2 + x[6] ** 2 + x[7] ** 2,
    "(q1.q1)^2+(q2.q2)^2": lambda x: (x[4] ** 2 + x[5] ** 2) ** 2 + (x[6] ** 2 + x[7] ** 2) ** 2,
    "(q1.q1)(q2.q2)": lambda x: (x[4] ** 2 + x[5] ** 2) * (x[6] ** 2 + x[7] ** 2),
    "q1.q2": lambda x: x[4] * x[6] + x[5] * x[7],
    "1": lambda x: 1.0,
}


@dataclass(frozen=True)
class EnhancedHamiltonian:
    params: PhysicalParams
    stats: StatisticsParam
    moments: MomentTable
    coefficients: tuple[Coefficient, ...]

    def coefficient(self, name: str) -> float:
        for c in self.coefficients:
            if c.name == name:
                return c.value
        raise KeyError(name)

    @property
    def c_kin_const(self) -> float:
        return self.coefficient("kin_const")

    @property
    def c_harm_const(self) -> float:
        return self.coefficient("harm_const")

    @property
    def c_q2(self) -> float:
        return self.coefficient("q2")

    @property
    def c_q1q2(self) -> float:
        return self.coefficient("q1q2")

    @property
    def c_const_quartic(self) -> float:
        return self.coefficient("const_quartic")

    def dump(self) -> list[dict]:
        return [dict(name=c.name, term=c.term, hbar_power=c.hbar_power, value=c.value)
                for c in self.coefficients]

    def dump_json(self, **kw) -> str:
        return json.dumps(self.dump(), **kw)


def symbol_1dof_quartic(q2_fid: float, p2_fid: float, q4_fid: float, p: float, q: float) -> float:
    """Symbol of P² + Q² + Q⁴ for a fiducial state with vanishing odd moments."""
    return p * p + q * q + q ** 4 + 6.0 * q * q * q2_fid + (p2_fid + q2_fid + q4_fid)


# --------------------------------------------------------------------------
# polynomial expansion
#
# Variables 0..3 are (qx1, qy1, qx2, qy2); 4..7 the matching Q components.


def _mul(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(i + j for i, j in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def _var(i: int) -> dict:
    e = [0] * 8
    e[i] = 1
    return {tuple(e): 1}


@lru_cache(maxsize=1)
def _shifted_potential() -> dict:
    """(Σ_i (q_i + Q_i)²)² as {exponent tuple: integer coefficient}."""
    total: dict = defaultdict(int)
    for i in range(4):
        lin = {**_var(i), **_var(i + 4)}
        for e, c in _mul(lin, lin).items():
            total[e] += c
    return _mul(dict(total), dict(total))


def expansion_moment(exps: tuple[int, int, int, int], table: MomentTable) -> float:
    """⟨Q_{x₁}^a Q_{y₁}^b Q_{x₂}^c Q_{y₂}^d⟩ from the table.

    Odd moments vanish under r → −r.  Monomials odd in the x (or y)
    components alone vanish under the reflection y → −y (or x → −x).  The
    remaining second and fourth moments follow from rotational and exchange
    symmetry; ⟨Q_{x₁}² Q_{y₂}²⟩ = ⟨Q_{x₁}⁴⟩/3.
    """
    a, b, c, d = exps
    deg = a + b + c + d
    if deg == 0:
        return 1.0
    if deg % 2 or (a + c) % 2 or (b + d) % 2:
        return 0.0
    if deg == 2:
        if 2 in exps:
            return table.q2
        return table.qq_cross  # x₁x₂ or y₁y₂
    if deg == 4 and all(k % 2 == 0 for k in exps):
        if 4 in exps:
            return table.q4
        if a == b == 2 or c == d == 2:
            return table.q2q2_same
        if a == c == 2 or b == d == 2:
            return table.q2q2_cross
        return table.q4 / 3.0  # x₁²y₂² or y₁²x₂²
    raise KeyError(f"moment {exps} is not tabulated")


def _potential_coefficients(table: MomentTable) -> tuple[float, float, float]:
    """Return (coefficient of Σq², of q₁·q₂, constant) in ⟨V(q + Q)⟩ − (Σq²)²."""
    by_q: dict = defaultdict(float)
    for e, c in _shifted_potential().items():
        by_q[e[:4]] += c * expansion_moment(e[4:], table)
    quartic: dict = defaultdict(int)
    for i, j in itertools.product(range(4), repeat=2):
        e = [0] * 4
        e[i] += 2
        e[j] += 2
        quartic[tuple(e)] += 1
    sq = [tuple(2 if k == i else 0 for k in range(4)) for i in range(4)]
    cross = [(1, 0, 1, 0), (0, 1, 0, 1)]
    c_sq = [by_q.get(e, 0.0) for e in sq]
    c_cross = [by_q.get(e, 0.0) for e in cross]
    scale = max(abs(v) for v in by_q.values())
    tol = 1e-12 * scale
    for e, v in by_q.items():
        deg = sum(e)
        if deg == 4:
            ok = abs(v - quartic.get(e, 0)) <= tol
        elif deg == 2:
            ok = e in sq or e in cross or abs(v) <= tol
        elif deg == 0:
            ok = True
        else:
            ok = abs(v) <= tol
        if not ok:
            raise InconsistencyError(f"unexpected coefficient {v} for q-monomial {e}")
    if max(c_sq) - min(c_sq) > tol or abs(c_cross[0] - c_cross[1]) > tol:
        raise InconsistencyError("expansion is not rotationally invariant")
    return c_sq[0], c_cross[0], by_q.get((0, 0, 0, 0), 0.0)


def assemble_enhanced(params: PhysicalParams, table: MomentTable) -> EnhancedHamiltonian:
    """Enhanced Hamiltonian for ``params`` from the moments in ``table``.

    The table must share Ω with ``params``.  If ``params.hbar`` is positive
    it must also share ħ; with ``params.hbar == 0`` the table's ħ is only
    used to strip the ħ powers, and every quantum coefficient becomes 0.
    """
    if not math.isclose(table.Omega, params.Omega, rel_tol=1e-12):
        raise InconsistencyError(f"table has Omega={table.Omega}, params have {params.Omega}")
    if params.hbar > 0 and not math.isclose(table.hbar, params.hbar, rel_tol=1e-12):
        raise InconsistencyError(f"table has hbar={table.hbar}, params have {params.hbar}")
    m, w, g = params.m, params.varpi, params.g
    c_sq, c_cross, c_const = _potential_coefficients(table)

    def rescale(value: float, power: int) -> float:
        if params.hbar == table.hbar:
            return value
        return value * (params.hbar / table.hbar) ** power

    coeffs = (
        Coefficient("kinetic", "p1.p1+p2.p2", 0, 1.0 / (2.0 * m)),
        Coefficient("harmonic", "q1.q1+q2.q2", 0, 0.5 * m * w * w),
        Coefficient("quartic_self", "(q1.q1)^2+(q2.q2)^2", 0, g),
        Coefficient("quartic_mixed", "(q1.q1)(q2.q2)", 0, 2.0 * g),
        Coefficient("kin_const", "1", 1, rescale(4.0 * table.p2 / (2.0 * m), 1)),
        Coefficient("harm_const", "1", 1, rescale(0.5 * m * w * w * 4.0 * table.q2, 1)),
        Coefficient("q2", "q1.q1+q2.q2", 1, rescale(g * c_sq, 1)),
        Coefficient("q1q2", "q1.q2", 1, rescale(g * c_cross, 1)),
        Coefficient("const_quartic", "1", 2, rescale(g * c_const, 2)),
    )
    return EnhancedHamiltonian(params, StatisticsParam(table.gamma), table, coeffs)


def enhanced_hamiltonian(gamma: float, params: PhysicalParams = PhysicalParams()) -> EnhancedHamiltonian:
    """Build the moment table for ``gamma`` and assemble (ħ = 0 allowed)."""
    hbar = params.hbar if params.hbar > 0 else 1.0
    return assemble_enhanced(params, moment_table(FiducialSpec.of(gamma, params.Omega, hbar)))


def _as_array(x) -> np.ndarray:
    if isinstance(x, PhaseSpacePoint):
        return x.as_array()
    a = np.asarray(x, dtype=float)
    if a.shape != (8,):
        raise DomainError("phase-space points have 8 components")
    return a


def eval_hamiltonian(h: EnhancedHamiltonian, x) -> float:
    a = _as_array(x)
    return math.fsum(c.value * _TERMS[c.term](a) for c in h.coefficients)


def classical_limit(h: EnhancedHamiltonian, x) -> float:
    """Only the ħ-independent part; it does not depend on γ."""
    a = _as_array(x)
    return math.fsum(c.value * _TERMS[c.term](a) for c in h.coefficients if c.hbar_power == 0)


def spectator_shift(h: EnhancedHamiltonian, n_spectators: int, ground_energy: float) -> float:
    """Additive constant contributed by ``n_spectators`` uncoupled systems in their ground state."""
    if n_spectators < 0:
        raise DomainError("n_spectators must be non-negative")
    return n_spectators * ground_energy
