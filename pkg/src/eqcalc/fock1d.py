"""Single-mode coherent states in a truncated number basis.

Convention: Q = √(ħ/2)(a + a†), P = i√(ħ/2)(a† − a), so that (Q + iP)|0⟩ = 0
and [Q, P] = iħ away from the truncation edge.  Coherent states are

    |p, q⟩ = e^{−iqP/ħ} e^{ipQ/ħ} |0⟩.

The exponentials are taken through eigendecompositions of the truncated Q
and P, which keeps every state exactly unitary and lets many displacements
share two basis changes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammainccinv

from .exceptions import AccuracyWarning, DomainError, TruncationWarning

__all__ = [
    "FockSpace",
    "CoherentState",
    "UnityReport",
    "build_fock",
    "coherent_state",
    "coherent_amplitudes",
    "symbol_expectation",
    "fubini_study_metric",
    "default_cutoff",
    "resolution_of_unity_check",
]

LEAK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class FockSpace:
    dim: int
    hbar: float
    Q: np.ndarray
    P: np.ndarray
    _eig_q: tuple = field(repr=False)
    _eig_p: tuple = field(repr=False)

    def identity(self) -> np.ndarray:
        return np.eye(self.dim)

    def ground(self) -> np.ndarray:
        e = np.zeros(self.dim, dtype=complex)
        e[0] = 1.0
        return e


@dataclass(frozen=True, eq=False)
class CoherentState:
    p: float
    q: float
    amplitudes: np.ndarray
    leakage: float  # weight on the top quarter of the basis

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def build_fock(dim: int = 128, hbar: float = 1.0) -> FockSpace:
    if dim < 8:
        raise DomainError("dim must be at least 8")
    if not (hbar > 0 and math.isfinite(hbar)):
        raise DomainError("hbar must be positive")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    s = math.sqrt(hbar / 2.0)
    Q = s * (a + a.T)
    P = 1j * s * (a.T - a)
    Q.setflags(write=False)
    P.setflags(write=False)
    return FockSpace(dim, float(hbar), Q, P, np.linalg.eigh(Q), np.linalg.eigh(P))


def _leakage(psi: np.ndarray) -> np.ndarray:
    top = psi.shape[0] - psi.shape[0] // 4
    return np.sum(np.abs(psi[top:]) ** 2, axis=0)


def coherent_amplitudes(f: FockSpace, p, q) -> np.ndarray:
    """Columns are |p_k, q_k⟩ for the broadcast arrays ``p`` and ``q``."""
    p, q = np.broadcast_arrays(np.atleast_1d(np.asarray(p, float)), np.atleast_1d(np.asarray(q, float)))
    p, q = p.ravel(), q.ravel()
    lq, vq = f._eig_q
    lp, vp = f._eig_p
    c = vq.conj()[0][:, None] * np.exp(1j * np.outer(lq, p) / f.hbar)
    psi = vq @ c
    psi = vp @ (np.exp(-1j * np.outer(lp, q) / f.hbar) * (vp.conj().T @ psi))
    return psi


def coherent_state(f: FockSpace, p: float, q: float) -> CoherentState:
    psi = coherent_amplitudes(f, p, q)[:, 0]
    leak = float(_leakage(psi[:, None])[0])
    if leak > LEAK_TOL or abs(np.linalg.norm(psi) - 1.0) > LEAK_TOL:
        warnings.warn(f"coherent state at (p, q) = ({p}, {q}) reaches the truncation edge "
                      f"(weight {leak:.2e}); increase dim", TruncationWarning, stacklevel=2)
    return CoherentState(float(p), float(q), psi, leak)


def symbol_expectation(f: FockSpace, hamiltonian: np.ndarray, p: float, q: float) -> float:
    """⟨p, q|𝓗|p, q⟩ for a Hermitian matrix 𝓗."""
    h = np.asarray(hamiltonian)
    if h.shape != (f.dim, f.dim):
        raise DomainError(f"hamiltonian must be {f.dim}x{f.dim}")
    if not np.allclose(h, h.conj().T, rtol=0, atol=1e-12 * max(1.0, float(np.max(np.abs(h))))):
        raise DomainError("hamiltonian must be Hermitian")
    psi = coherent_state(f, p, q).amplitudes
    return float(np.real(np.vdot(psi, h @ psi)))


def _metric_fd(f: FockSpace, p: float, q: float, step: float) -> np.ndarray:
    offsets = np.array([[0, 0], [step, 0], [-step, 0], [0, step], [0, -step]])
    psi = coherent_amplitudes(f, p + offsets[:, 0], q + offsets[:, 1])
    centre = psi[:, 0]
    d = np.stack([(psi[:, 1] - psi[:, 2]) / (2 * step), (psi[:, 3] - psi[:, 4]) / (2 * step)], axis=1)
    proj = centre.conj() @ d
    gram = d.conj().T @ d - np.outer(proj.conj(), proj)
    return 2.0 * f.hbar * np.real(gram)


def fubini_study_metric(f: FockSpace, p: float, q: float, step: float | None = None,
                        tol: float = 1e-6) -> np.ndarray:
    """Metric in (p, q) from central differences, Richardson-extrapolated.

    The flat result is the identity.  A warning is raised when the
    Richardson error estimate exceeds ``tol``.
    """
    if step is None:
        step = 1e-4 * math.sqrt(f.hbar)
    if not step > 0:
        raise DomainError("step must be positive")
    coarse = _metric_fd(f, p, q, step)
    fine = _metric_fd(f, p, q, step / 2.0)
    if np.max(np.abs(fine - coarse)) / 3.0 > tol:
        warnings.warn(f"metric is step-size sensitive at step={step}", AccuracyWarning, stacklevel=2)
    return (4.0 * fine - coarse) / 3.0


def default_cutoff(f: FockSpace, n_max: int, tol: float = 1e-9) -> float:
    """Phase-space radius beyond which level ``n_max`` carries weight below ``tol``.

    Larger radii only help while the displaced states stay clear of the
    truncation edge, hence the modest default.
    """
    return math.sqrt(2.0 * f.hbar * float(gammainccinv(n_max + 1, tol)))


@dataclass(frozen=True, eq=False)
class UnityReport:
    matrix: np.ndarray
    block: int
    diag_dev: float
    offdiag_dev: float

    @property
    def max_dev(self) -> float:
        return max(self.diag_dev, self.offdiag_dev)

    def deviations(self) -> np.ndarray:
        b = self.block
        return np.abs(self.matrix[:b, :b] - np.eye(b))


def resolution_of_unity_check(f: FockSpace, radial_cutoff: float | None = None, n_quad: int = 96,
                              block: int | None = None) -> UnityReport:
    """∫|p,q⟩⟨p,q| dp dq/(2πħ) over the disc of radius ``radial_cutoff``.

    Gauss–Legendre in the radius and the trapezoid rule in the angle; the
    angular rule is exact for every pair of levels in the space.  Entries
    are checked on the leading ``block`` levels (default dim/4).
    """
    if block is None:
        block = f.dim // 4
    if radial_cutoff is None:
        radial_cutoff = default_cutoff(f, block)
    if n_quad < 8:
        raise DomainError("n_quad must be at least 8")
    x, w = np.polynomial.legendre.leggauss(n_quad)
    r = 0.5 * radial_cutoff * (x + 1.0)
    wr = 0.5 * radial_cutoff * w * r
    n_ang = 2 * f.dim
    th = 2.0 * np.pi * np.arange(n_ang) / n_ang
    rr, tt = np.meshgrid(r, th, indexing="ij")
    weights = np.repeat(wr, n_ang) * (2.0 * np.pi / n_ang) / (2.0 * np.pi * f.hbar)
    psi = coherent_amplitudes(f, (rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel())
    m = (psi * weights) @ psi.conj().T
    dev = np.abs(m[:block, :block] - np.eye(block))
    diag = float(np.max(np.diag(dev)))
    off = float(np.max(dev - np.diag(np.diag(dev)))) if block > 1 else 0.0
    return UnityReport(m, block, diag, off)
