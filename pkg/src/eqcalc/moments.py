"""Closed-form moments of the two-particle fiducial family.

The fiducial vector is

    η_γ(r₁, r₂) = N_γ (z₁ − z₂)^γ exp(−λ (r₁² + r₂²) / 2),   λ = Ω/ħ,

with z = x + i y and 0 ≤ γ < 2 (γ = 0 bosons, γ = 1 fermions).  All moments
below are centred (⟨Q⟩ = ⟨P⟩ = 0) and carry their natural powers of ħ/Ω.

Several of them are written through unit-argument ₂F₁ values built on

    D(γ) = ₂F₁((1−γ)/2, −γ/2; 3/2; 1),

which also fixes the normalisation.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields

from .exceptions import DomainError
from .specfun import HypParams, hyp2f1_unit, log_gamma

__all__ = [
    "StatisticsParam",
    "FiducialSpec",
    "MomentTable",
    "norm_constant",
    "moment_q2",
    "moment_p2",
    "moment_q4",
    "moment_q2q2_same",
    "moment_q2q2_cross",
    "moment_qq_cross",
    "moment_v",
    "moment_table",
]


@dataclass(frozen=True)
class StatisticsParam:
    """Exchange exponent γ; the exchange phase is α = πγ."""

    gamma: float

    def __post_init__(self):
        g = float(self.gamma)
        if not (0.0 <= g < 2.0):
            raise DomainError("gamma must lie in [0,2)")
        object.__setattr__(self, "gamma", g)

    @property
    def alpha(self) -> float:
        return math.pi * self.gamma

    @property
    def kind(self) -> str:
        if self.gamma == 0.0:
            return "boson"
        if self.gamma == 1.0:
            return "fermion"
        return "anyon"


@dataclass(frozen=True)
class FiducialSpec:
    """A member of the fiducial family, fixed by (γ, Ω, ħ)."""

    stats: StatisticsParam
    Omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.stats, StatisticsParam):
            object.__setattr__(self, "stats", StatisticsParam(self.stats))
        if not (self.Omega > 0.0 and math.isfinite(self.Omega)):
            raise DomainError("Omega must be positive")
        if not (self.hbar > 0.0 and math.isfinite(self.hbar)):
            raise DomainError("hbar must be positive for a fiducial vector")

    @classmethod
    def of(cls, gamma: float, Omega: float = 1.0, hbar: float = 1.0) -> "FiducialSpec":
        return cls(StatisticsParam(gamma), Omega, hbar)

    @property
    def gamma(self) -> float:
        return self.stats.gamma

    @property
    def lam(self) -> float:
        """λ = Ω/ħ."""
        return self.Omega / self.hbar


def _F(a: float, b: float, c: float) -> float:
    return hyp2f1_unit(HypParams(a, b, c))


def _base(g: float) -> float:
    return _F((1.0 - g) / 2.0, -g / 2.0, 1.5)


def norm_constant(f: FiducialSpec) -> float:
    """|N_γ|, fixed by ∫|η_γ|² d⁴r = 1."""
    g, lam = f.gamma, f.lam
    log_int = (2.5 * math.log(math.pi) - math.log(2.0) - (g + 2.0) * math.log(lam)
               + log_gamma(2.0 + g) - log_gamma(1.5) + math.log(_base(g)))
    return math.exp(-0.5 * log_int)


def moment_q2(f: FiducialSpec) -> float:
    """⟨Q_{x₁}²⟩ = ħ(γ+2)/(4Ω)."""
    return f.hbar * (f.gamma + 2.0) / (4.0 * f.Omega)


def moment_p2(f: FiducialSpec) -> float:
    """⟨P_{x₁}²⟩ = ħΩ(γ+2)/4.

    Follows from ⟨P²⟩ = ħ²⟨|∇η|²⟩: the relative coordinate carries the
    |ρ|^{2γ} weight, whose kinetic energy exceeds the Gaussian value by
    ħΩγ/4 per Cartesian component.
    """
    return f.hbar * f.Omega * (f.gamma + 2.0) / 4.0


def moment_q4(f: FiducialSpec) -> float:
    """⟨Q_{x₁}⁴⟩ as a combination of two unit-argument ₂F₁ values."""
    g = f.gamma
    pre = f.hbar ** 2 * (g + 3.0) * (g + 2.0) / (16.0 * f.Omega ** 2 * _base(g))
    bracket = 2.0 * _F((1.0 - g) / 2.0, -g / 2.0, 2.5)
    bracket += g * (g - 1.0) / 10.0 * _F((3.0 - g) / 2.0, (2.0 - g) / 2.0, 3.5)
    return pre * bracket


def moment_q2q2_same(f: FiducialSpec) -> float:
    """⟨Q_{x₁}² Q_{y₁}²⟩ = ⟨Q_{x₁}⁴⟩/3 (rotational invariance)."""
    return moment_q4(f) / 3.0


def moment_q2q2_cross(f: FiducialSpec) -> float:
    """⟨Q_{x₁}² Q_{x₂}²⟩.

    Equal to (3γ² + 5γ + 8)ħ²/(32Ω²); the hypergeometric form below is the
    one produced by the radial reduction.
    """
    g = f.gamma
    pre = f.hbar ** 2 * (g + 3.0) * (g + 2.0) / (16.0 * f.Omega ** 2 * _base(g))
    bracket = (2.0 / 3.0) * _F((1.0 - g) / 2.0, -g / 2.0, 2.5)
    bracket += g * (g - 1.0) / 10.0 * _F((3.0 - g) / 2.0, (2.0 - g) / 2.0, 3.5)
    return pre * bracket


def moment_qq_cross(f: FiducialSpec) -> float:
    """⟨Q_{x₁} Q_{x₂}⟩ = −γħ/(4Ω); never positive and decreasing in γ."""
    g = f.gamma
    ratio = _F(-(1.0 + g) / 2.0, -g / 2.0, 1.5) / _base(g)
    return -f.hbar * (g + 2.0) / (4.0 * f.Omega) * (ratio - 1.0)


def moment_v(f: FiducialSpec) -> float:
    """⟨V⟩ for V = (Q₁² + Q₂²)².

    Expanding the square, the homogeneous terms give (16/3)⟨Q_{x₁}⁴⟩ and the
    mixed terms 4⟨Q_{x₁}²Q_{x₂}²⟩ + 4⟨Q_{x₁}²Q_{y₂}²⟩, where the last moment
    equals ⟨Q_{x₁}⁴⟩/3.  The total is (γ+2)(γ+3)ħ²/Ω².
    """
    return (20.0 / 3.0) * moment_q4(f) + 4.0 * moment_q2q2_cross(f)


@dataclass(frozen=True)
class MomentTable:
    """Second and fourth moments of one fiducial vector.

    ``gamma``, ``Omega`` and ``hbar`` record where the table was evaluated,
    so consumers can check consistency and rescale in ħ.
    """

    norm_const: float
    q2: float
    p2: float
    q4: float
    q2q2_same: float
    q2q2_cross: float
    qq_cross: float
    v_expect: float
    gamma: float
    Omega: float
    hbar: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "MomentTable":
        names = [f.name for f in fields(cls)]
        missing = set(names) - set(d)
        if missing:
            raise KeyError(f"moment table is missing {sorted(missing)}")
        return cls(**{k: float(d[k]) for k in names})

    @classmethod
    def from_json(cls, text: str) -> "MomentTable":
        return cls.from_dict(json.loads(text))


def moment_table(f: FiducialSpec) -> MomentTable:
    q4 = moment_q4(f)
    return MomentTable(
        norm_const=norm_constant(f),
        q2=moment_q2(f),
        p2=moment_p2(f),
        q4=q4,
        q2q2_same=q4 / 3.0,
        q2q2_cross=moment_q2q2_cross(f),
        qq_cross=moment_qq_cross(f),
        v_expect=moment_v(f),
        gamma=f.gamma,
        Omega=f.Omega,
        hbar=f.hbar,
    )
