"""Hamilton's equations for enhanced Hamiltonians.

Every enhanced Hamiltonian here has the form T(p) + V(q), so kick-drift
splitting is exact and both schemes are explicit and symplectic.  States are
arrays ordered (px1, py1, px2, py2, qx1, qy1, qx2, qy2).
"""

from __future__ import annotations

import io
import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import AccuracyWarning, BlowUpError, DomainError
from .symbol import EnhancedHamiltonian, InconsistencyError, PhaseSpacePoint

__all__ = [
    "IntegratorConfig",
    "Trajectory",
    "ComparisonReport",
    "CSV_COLUMNS",
    "gradient",
    "energies",
    "angular_momentum",
    "characteristic_frequency",
    "integrate",
    "compare_statistics",
    "write_csv",
    "read_csv",
]

CSV_COLUMNS = ("t", "px1", "py1", "px2", "py2", "qx1", "qy1", "qx2", "qy2", "E")
BLOW_UP = 1e12
SCHEMES = ("leapfrog", "yoshida4")

_CBRT2 = 2.0 ** (1.0 / 3.0)
_YOSHIDA = (1.0 / (2.0 - _CBRT2), -_CBRT2 / (2.0 - _CBRT2), 1.0 / (2.0 - _CBRT2))


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    t_end: float
    scheme: str = "yoshida4"
    record_every: int = 1

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise DomainError("dt must be positive")
        if not (self.t_end > 0 and math.isfinite(self.t_end)):
            raise DomainError("t_end must be positive")
        if self.scheme not in SCHEMES:
            raise DomainError(f"scheme must be one of {SCHEMES}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise DomainError("record_every must be a positive integer")

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.t_end / self.dt)))


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (n, 8)
    energies: np.ndarray

    def __post_init__(self):
        if not (len(self.times) == len(self.states) == len(self.energies)):
            raise ValueError("times, states and energies must have equal lengths")

    def __len__(self) -> int:
        return len(self.times)

    def points(self) -> list[PhaseSpacePoint]:
        return [PhaseSpacePoint.from_array(s) for s in self.states]

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def energy_drift(self) -> float:
        e0 = self.energies[0]
        return float(np.max(np.abs(self.energies - e0)) / max(abs(e0), np.finfo(float).tiny))


class _Potential:
    """Coefficients of T and V pulled out of the coefficient list once."""

    def __init__(self, h: EnhancedHamiltonian):
        c = {k.name: k.value for k in h.coefficients}
        self.inv_m = 2.0 * c["kinetic"]
        self.a = c["harmonic"] + c["q2"]  # multiplies Σq²
        self.self_ = c["quartic_self"]
        self.mix = c["quartic_mixed"]
        self.cross = c["q1q2"]

    def force(self, q: np.ndarray) -> np.ndarray:
        """∂V/∂q for q of shape (..., 4)."""
        q1, q2 = q[..., 0:2], q[..., 2:4]
        A = np.sum(q1 * q1, axis=-1, keepdims=True)
        B = np.sum(q2 * q2, axis=-1, keepdims=True)
        d1 = (2.0 * self.a + 4.0 * self.self_ * A + 2.0 * self.mix * B) * q1 + self.cross * q2
        d2 = (2.0 * self.a + 4.0 * self.self_ * B + 2.0 * self.mix * A) * q2 + self.cross * q1
        return np.concatenate([d1, d2], axis=-1)

    def hessian(self, q: np.ndarray) -> np.ndarray:
        q1, q2 = q[0:2], q[2:4]
        A, B = q1 @ q1, q2 @ q2
        eye = np.eye(2)
        h11 = (2 * self.a + 4 * self.self_ * A + 2 * self.mix * B) * eye + 8 * self.self_ * np.outer(q1, q1)
        h22 = (2 * self.a + 4 * self.self_ * B + 2 * self.mix * A) * eye + 8 * self.self_ * np.outer(q2, q2)
        h12 = 4 * self.mix * np.outer(q1, q2) + self.cross * eye
        return np.block([[h11, h12], [h12.T, h22]])


def _state(x) -> np.ndarray:
    if isinstance(x, PhaseSpacePoint):
        return x.as_array()
    a = np.asarray(x, dtype=float)
    if a.shape != (8,) or not np.all(np.isfinite(a)):
        raise DomainError("a state has 8 finite components")
    return a


def gradient(h: EnhancedHamiltonian, x) -> tuple[np.ndarray, np.ndarray]:
    """(∂H/∂p, ∂H/∂q), each ordered (x1, y1, x2, y2)."""
    s = _state(x)
    pot = _Potential(h)
    return pot.inv_m * s[:4], pot.force(s[4:])


def energies(h: EnhancedHamiltonian, states: np.ndarray) -> np.ndarray:
    """H on every row of ``states``; agrees with :func:`eval_hamiltonian`."""
    x = np.asarray(states, dtype=float).T
    from .symbol import _TERMS

    return sum(c.value * np.broadcast_to(_TERMS[c.term](x), x.shape[1:]) for c in h.coefficients)


def angular_momentum(states: np.ndarray) -> np.ndarray:
    """L = Σ_σ q_σ × p_σ for each row."""
    s = np.atleast_2d(states)
    return (s[:, 4] * s[:, 1] - s[:, 5] * s[:, 0]) + (s[:, 6] * s[:, 3] - s[:, 7] * s[:, 2])


def characteristic_frequency(h: EnhancedHamiltonian, x0) -> float:
    """Largest small-oscillation frequency about the configuration of ``x0``."""
    pot = _Potential(h)
    top = float(np.max(np.linalg.eigvalsh(pot.hessian(_state(x0)[4:]))))
    if top <= 0:
        return 0.0
    return math.sqrt(top * pot.inv_m)


def _splitting(scheme: str, dt: float) -> tuple[list[float], list[float]]:
    """Kick and drift lengths of one step: K₀ D₀ K₁ D₁ … K_r, adjacent half-kicks merged."""
    weights = (1.0,) if scheme == "leapfrog" else _YOSHIDA
    kicks, drifts, pending = [], [], 0.0
    for w in weights:
        kicks.append(pending + 0.5 * w * dt)
        drifts.append(w * dt)
        pending = 0.5 * w * dt
    kicks.append(pending)
    return kicks, drifts


def _run(pot: _Potential, s0: np.ndarray, kicks, drifts, n: int, keep: list[int]) -> np.ndarray:
    # scalar arithmetic: per-step array overhead dominates for 8 components
    px1, py1, px2, py2, x1, y1, x2, y2 = (float(v) for v in s0)
    a2, s4, m2, c, im = 2.0 * pot.a, 4.0 * pot.self_, 2.0 * pot.mix, pot.cross, pot.inv_m
    stages = list(zip(kicks, [d * im for d in drifts] + [None]))
    out = np.empty((len(keep), 8))
    out[0] = s0
    k = 1
    for step in range(1, n + 1):
        for kick, d in stages:
            A = x1 * x1 + y1 * y1
            B = x2 * x2 + y2 * y2
            f1 = a2 + s4 * A + m2 * B
            f2 = a2 + s4 * B + m2 * A
            px1 -= kick * (f1 * x1 + c * x2)
            py1 -= kick * (f1 * y1 + c * y2)
            px2 -= kick * (f2 * x2 + c * x1)
            py2 -= kick * (f2 * y2 + c * y1)
            if d is not None:
                x1 += d * px1
                y1 += d * py1
                x2 += d * px2
                y2 += d * py2
        if not max(abs(px1), abs(py1), abs(px2), abs(py2), abs(x1), abs(y1), abs(x2), abs(y2)) <= BLOW_UP:
            raise BlowUpError(f"state exceeded {BLOW_UP:g} at step {step}")
        if k < len(keep) and step == keep[k]:
            out[k] = (px1, py1, px2, py2, x1, y1, x2, y2)
            k += 1
    return out


def integrate(h: EnhancedHamiltonian, x0, cfg: IntegratorConfig) -> Trajectory:
    s0 = _state(x0)
    pot = _Potential(h)
    omega = characteristic_frequency(h, s0)
    if omega * cfg.dt > 0.1:
        warnings.warn(f"dt*omega = {omega * cfg.dt:.3g} exceeds 0.1", AccuracyWarning, stacklevel=2)
    n = cfg.n_steps
    keep = list(range(0, n + 1, cfg.record_every))
    if keep[-1] != n:
        keep.append(n)
    out = _run(pot, s0, *_splitting(cfg.scheme, cfg.dt), n, keep)
    times = np.array(keep, dtype=float) * cfg.dt
    return Trajectory(times, out, energies(h, out))


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    gammas: tuple[float, ...]
    trajectories: tuple[Trajectory, ...]
    distances: dict  # (i, j) -> state distance per recorded time
    cross_energies: np.ndarray  # [i, j]: energy drift of trajectory j under Hamiltonian i

    @property
    def max_distance(self) -> float:
        return max((float(np.max(d)) for d in self.distances.values()), default=0.0)

    def summary(self) -> dict:
        return dict(
            gammas=list(self.gammas),
            max_distance=self.max_distance,
            pairs=[dict(gamma_a=self.gammas[i], gamma_b=self.gammas[j], max_distance=float(np.max(d)),
                        final_distance=float(d[-1])) for (i, j), d in sorted(self.distances.items())],
            energy_drift=[t.energy_drift() for t in self.trajectories],
        )


def compare_statistics(h_list: Sequence[EnhancedHamiltonian], x0, cfg: IntegratorConfig,
                       coincidence_tol: float = 1e-10) -> ComparisonReport:
    """Integrate each Hamiltonian from ``x0`` and measure pairwise separation.

    All Hamiltonians must share their physical parameters.  With ħ = 0 they
    must coincide; a separation above ``coincidence_tol`` then raises
    :class:`InconsistencyError`.
    """
    h_list = list(h_list)
    if not h_list:
        raise DomainError("at least one Hamiltonian is required")
    if any(h.params != h_list[0].params for h in h_list):
        raise InconsistencyError("all Hamiltonians must share PhysicalParams")
    trajs = tuple(integrate(h, x0, cfg) for h in h_list)
    dist = {(i, j): np.linalg.norm(trajs[i].states - trajs[j].states, axis=1)
            for i, j in itertools.combinations(range(len(trajs)), 2)}
    cross = np.array([[float(np.max(np.abs(energies(hi, t.states) - energies(hi, t.states[:1]))))
                       for t in trajs] for hi in h_list])
    report = ComparisonReport(tuple(h.stats.gamma for h in h_list), trajs, dist, cross)
    if h_list[0].params.hbar == 0 and report.max_distance > coincidence_tol:
        raise InconsistencyError(f"classical trajectories separate by {report.max_distance:.3e}")
    return report


def write_csv(traj: Trajectory, target, comments: Sequence[str] = ()) -> None:
    """Write ``traj`` to a path or text stream; ``comments`` become '#' lines."""
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for t, s, e in zip(traj.times, traj.states, traj.energies):
        buf.write(",".join(repr(float(v)) for v in (t, *s, e)) + "\n")
    if hasattr(target, "write"):
        target.write(buf.getvalue())
    else:
        with open(target, "w", newline="") as fh:
            fh.write(buf.getvalue())


def read_csv(source) -> Trajectory:
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    if tuple(lines[0].split(",")) != CSV_COLUMNS:
        raise ValueError("unexpected trajectory header")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]]).reshape(-1, len(CSV_COLUMNS))
    return Trajectory(data[:, 0], data[:, 1:9], data[:, 9])
