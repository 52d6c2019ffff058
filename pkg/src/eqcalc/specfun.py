"""Scalar special functions: log-Gamma, Pochhammer symbols, Gauss ₂F₁, Whittaker W.

Everything here works in double precision without external special-function
libraries.  The hypergeometric routines cover real parameters and real
arguments in ``[-1, 1]``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import AccuracyWarning, ConvergenceError, DivergenceError, DomainError
from .quadrature import exp_sinh, integrate_half_line

__all__ = [
    "HypParams",
    "WhittakerParams",
    "log_gamma",
    "gamma_sign_log",
    "rgamma",
    "digamma",
    "pochhammer",
    "nonpositive_integer",
    "hyp2f1_unit",
    "hyp2f1_partial",
    "whittaker_w",
]

EULER_GAMMA = 0.57721566490153286061
_INT_TOL = 1e-12
MAX_TERMS = 1_000_000

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class HypParams:
    """Parameters ``(a, b, c)`` of the Gauss function ₂F₁(a, b; c; z)."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.a, self.b, self.c)):
            raise DomainError("hypergeometric parameters must be finite")
        if nonpositive_integer(self.c) is not None:
            raise DomainError(f"c = {self.c} is a pole of the series")

    @property
    def excess(self) -> float:
        """``c - a - b``, which controls convergence at z = 1."""
        return self.c - self.a - self.b


@dataclass(frozen=True)
class WhittakerParams:
    """Indices ``(mu, nu)`` of W_{mu,nu}."""

    mu: float
    nu: float


def nonpositive_integer(x: float, tol: float = _INT_TOL) -> int | None:
    """Return ``-x`` as an int if ``x`` is within ``tol`` of 0, -1, -2, ...; else None."""
    n = round(x)
    if n <= 0 and abs(x - n) <= tol:
        return -int(n)
    return None


# --------------------------------------------------------------------------
# Gamma machinery


@lru_cache(maxsize=None)
def _zeta_values(kmax: int = 48) -> tuple[float, ...]:
    # zeta(k) for k = 2..kmax via a short direct sum plus Euler-Maclaurin tail
    out = [0.0, 0.0]
    n_cut = 30
    for k in range(2, kmax + 1):
        head = math.fsum(j ** (-k) for j in range(n_cut - 1, 0, -1))
        nn = float(n_cut)
        tail = nn ** (1 - k) / (k - 1) + 0.5 * nn ** (-k)
        for coef, order in ((1 / 12, 1), (-1 / 720, 3), (1 / 30240, 5), (-1 / 1209600, 7)):
            tail += coef * pochhammer(k, order) * nn ** (-k - order)
        out.append(head + tail)
    return tuple(out)


def _lgamma1p_small(e: float) -> float:
    """ln Γ(1+e) for |e| ≤ 0.25, accurate in the relative sense near e = 0."""
    zeta = _zeta_values()
    acc = -EULER_GAMMA * e
    power = -e
    for k in range(2, len(zeta)):
        power *= -e
        term = zeta[k] * power / k
        acc += term
        if abs(term) < 1e-18 * abs(acc):
            break
    return acc


def _lanczos(x: float) -> float:
    x -= 1.0
    s = _LANCZOS[0]
    for i in range(1, 9):
        s += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(s)


def log_gamma(x: float) -> float:
    """Natural logarithm of Γ(x) for x > 0.

    Uses the Lanczos approximation (g = 7, nine terms) away from the zeros
    of ln Γ at 1 and 2, and a zeta-series expansion close to them so that
    the relative error stays small there too.
    """
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    if abs(x - 1.0) <= 0.25:
        return _lgamma1p_small(x - 1.0)
    if abs(x - 2.0) <= 0.25:
        e = x - 2.0
        return math.log1p(e) + _lgamma1p_small(e)
    if x < 0.75:
        return log_gamma(x + 1.0) - math.log(x)
    return _lanczos(x)


def gamma_sign_log(x: float) -> tuple[float, float]:
    """Return ``(sign, ln|Γ(x)|)`` for any real x that is not a pole."""
    if x > 0.0:
        return 1.0, log_gamma(x)
    if nonpositive_integer(x, 0.0) is not None:
        raise DomainError(f"Γ has a pole at {x}")
    s = math.sin(math.pi * x)
    return math.copysign(1.0, s), math.log(math.pi) - math.log(abs(s)) - log_gamma(1.0 - x)


def rgamma(x: float) -> float:
    """1/Γ(x), equal to zero at the poles."""
    if x <= 0.0 and nonpositive_integer(x, 0.0) is not None:
        return 0.0
    sign, lg = gamma_sign_log(x)
    return sign * math.exp(-lg)


def _gamma_ratio(num: tuple[float, ...], den: tuple[float, ...]) -> float:
    # Π Γ(num) / Π Γ(den); a pole in the denominator gives 0
    for d in den:
        if d <= 0.0 and nonpositive_integer(d, 0.0) is not None:
            return 0.0
    sign, acc = 1.0, 0.0
    for v in num:
        s, lg = gamma_sign_log(v)
        sign *= s
        acc += lg
    for v in den:
        s, lg = gamma_sign_log(v)
        sign *= s
        acc -= lg
    return sign * math.exp(acc)


def digamma(x: float) -> float:
    """ψ(x) for real x away from the poles."""
    if x <= 0.0:
        if nonpositive_integer(x, 0.0) is not None:
            raise DomainError(f"ψ has a pole at {x}")
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    # Σ B_{2k}/(2k x^{2k}); the first omitted term is below 1e-17 for x ≥ 12
    series = inv2 * (1 / 12 - inv2 * (1 / 120 - inv2 * (1 / 252 - inv2 * (
        1 / 240 - inv2 * (1 / 132 - inv2 * (691 / 32760 - inv2 / 12))))))
    return acc + math.log(x) - 0.5 / x - series


def pochhammer(a: float, s: int) -> float:
    """Rising factorial (a)_s = a(a+1)...(a+s-1) by direct product."""
    if s < 0 or int(s) != s:
        raise DomainError("pochhammer index must be a non-negative integer")
    out = 1.0
    for k in range(int(s)):
        out *= a + k
    return out


# --------------------------------------------------------------------------
# Gauss hypergeometric function


def _terminating_order(p: HypParams) -> int | None:
    orders = [n for n in (nonpositive_integer(p.a), nonpositive_integer(p.b)) if n is not None]
    return min(orders) if orders else None


def _finite_sum(a: float, b: float, c: float, z: float, n: int) -> float:
    terms = [1.0]
    t = 1.0
    for k in range(n):
        t *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        terms.append(t)
    return math.fsum(terms)


def hyp2f1_unit(p: HypParams) -> float:
    """₂F₁(a, b; c; 1).

    A terminating series (a or b a non-positive integer) is summed exactly.
    Otherwise Gauss's theorem Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)) is used, which
    requires c − a − b > 0.
    """
    n = _terminating_order(p)
    if n is not None:
        return _finite_sum(round(p.a) if nonpositive_integer(p.a) == n else p.a,
                           round(p.b) if nonpositive_integer(p.b) == n else p.b,
                           p.c, 1.0, n)
    if p.excess <= 0.0:
        raise DivergenceError(
            f"₂F₁({p.a}, {p.b}; {p.c}; 1) diverges: c - a - b = {p.excess} <= 0")
    return _gamma_ratio((p.c, p.excess), (p.c - p.a, p.c - p.b))


def _series(a: float, b: float, c: float, z: float, tol: float) -> float:
    """Direct partial sums with a 3-consecutive tail test."""
    if z == 0.0:
        return 1.0
    chunk = 256
    total = [1.0]
    partial = 1.0
    t = 1.0
    quiet = 0
    k = 0
    while k < MAX_TERMS:
        ks = np.arange(k, k + chunk, dtype=float)
        ratios = (a + ks) * (b + ks) / ((c + ks) * (ks + 1.0)) * z
        terms = t * np.cumprod(ratios)
        for j, term in enumerate(terms):
            partial += term
            rho = abs(ratios[j + 1]) if j + 1 < chunk else abs(ratios[j])
            # geometric bound on what is left once the ratio settles below 1
            tail = abs(term) * (rho / (1.0 - rho) if rho < 1.0 else math.inf)
            small = abs(term) < tol * abs(partial) and tail < tol * abs(partial)
            quiet = quiet + 1 if small else 0
            if quiet >= 3:
                total.extend(terms[: j + 1].tolist())
                return math.fsum(total)
        total.extend(terms.tolist())
        partial = math.fsum(total)
        t = float(terms[-1])
        if t == 0.0:
            return partial
        k += chunk
    raise ConvergenceError(f"₂F₁ series did not settle within {MAX_TERMS} terms")


def _unit_richardson(p: HypParams, tol: float) -> float:
    """Partial sums at z = 1, extrapolated in n with error exponents σ, σ+1, ..."""
    a, b, c, sigma = p.a, p.b, p.c, p.excess
    n0, levels = 32, 12
    n_max = n0 * 2 ** (levels - 1)
    ks = np.arange(n_max - 1, dtype=float)
    terms = np.empty(n_max)
    terms[0] = 1.0
    terms[1:] = np.cumprod((a + ks) * (b + ks) / ((c + ks) * (ks + 1.0)))
    sums, acc, start = [], [], 0
    for i in range(levels):
        stop = n0 * 2 ** i
        acc.append(math.fsum(terms[start:stop]))
        start = stop
        sums.append(math.fsum(acc))
    table = [[s] for s in sums]
    for i in range(1, levels):
        for j in range(1, i + 1):
            prev, cur = table[i - 1][j - 1], table[i][j - 1]
            table[i].append(cur + (cur - prev) / (2.0 ** (sigma + j - 1) - 1.0))
    # pick the most stable diagonal entry
    best, best_err = table[-1][-1], math.inf
    for i in range(2, levels):
        err = abs(table[i][i] - table[i - 1][i - 1])
        if err <= best_err:
            best, best_err = table[i][i], err
    if best_err > max(tol, 1e-12) * abs(best) * 100:
        warnings.warn(f"₂F₁ at z = 1 extrapolated with estimated relative error "
                      f"{best_err / abs(best):.1e}", AccuracyWarning, stacklevel=3)
    return best


def _near_one(p: HypParams, z: float, tol: float) -> float:
    """z close to 1: expand around 1 - z (connection formulas)."""
    a, b, c = p.a, p.b, p.c
    sigma = p.excess
    w = 1.0 - z
    m = round(sigma)
    gap = abs(sigma - m)
    if gap > 1e-6:
        first = _gamma_ratio((c, sigma), (c - a, c - b))
        second = _gamma_ratio((c, -sigma), (a, b))
        out = 0.0
        if first != 0.0:
            out += first * _series(a, b, 1.0 - sigma, w, tol)
        if second != 0.0:
            out += second * w ** sigma * _series(c - a, c - b, 1.0 + sigma, w, tol)
        return out
    if gap > 0.0:
        try:
            return _series(a, b, c, z, tol)
        except ConvergenceError:
            warnings.warn("c - a - b is nearly an integer; using the integer-limit formula",
                          AccuracyWarning, stacklevel=3)
    if m < 0:
        return w ** sigma * _near_one(HypParams(c - a, c - b, c), z, tol)
    return _log_case(a, b, int(m), w, tol)


def _log_case(a: float, b: float, m: int, w: float, tol: float) -> float:
    # c = a + b + m with integer m >= 0
    c = a + b + m
    head = 0.0
    if m > 0:
        pre = _gamma_ratio((float(m), c), (a + m, b + m))
        t, terms = 1.0, [1.0]
        for k in range(1, m):
            t *= (a + k - 1) * (b + k - 1) / (k * (k - m)) * w
            terms.append(t)
        head = pre * math.fsum(terms)
    pre = _gamma_ratio((c,), (a, b))
    if pre == 0.0:
        return head
    lw = math.log(w)
    coef = 1.0 / math.factorial(m)
    terms = []
    quiet = 0
    for k in range(MAX_TERMS):
        bracket = (lw - digamma(k + 1.0) - digamma(k + m + 1.0)
                   + digamma(a + k + m) + digamma(b + k + m))
        term = coef * bracket
        terms.append(term)
        quiet = quiet + 1 if abs(term) < tol * abs(math.fsum(terms)) else 0
        if quiet >= 3:
            break
        coef *= (a + m + k) * (b + m + k) / ((k + 1) * (k + m + 1)) * w
    return head - (-w) ** m * pre * math.fsum(terms)


def hyp2f1_partial(p: HypParams, z: float, tol: float = 1e-14) -> float:
    """₂F₁(a, b; c; z) for real z in [-1, 1] from its power series.

    Parameters
    ----------
    p : HypParams
    z : float
        Argument, ``-1 <= z <= 1``.
    tol : float
        Relative size below which three consecutive terms end a summation.

    Notes
    -----
    On ``0 < z <= 0.75`` the defining series is summed directly.  Closer to
    1 the series converges too slowly, so it is re-expanded in powers of
    ``1 - z``; at ``z = 1`` the partial sums are Richardson-extrapolated
    using their known algebraic error exponents.  Negative ``z`` is mapped
    into ``[0, 1/2]`` by a Pfaff transformation.

    Raises
    ------
    DomainError
        If ``|z| > 1``.
    DivergenceError
        At ``z = 1`` with ``c - a - b <= 0`` and a non-terminating series.
    ConvergenceError
        If a summation needs more than 10⁶ terms.
    """
    z = float(z)
    if not abs(z) <= 1.0:
        raise DomainError(f"|z| must not exceed 1, got {z}")
    n = _terminating_order(p)
    if n is not None:
        a = float(round(p.a)) if nonpositive_integer(p.a) == n else p.a
        b = float(round(p.b)) if nonpositive_integer(p.b) == n else p.b
        return _finite_sum(a, b, p.c, z, n)
    if z == 0.0:
        return 1.0
    if z < 0.0:
        w = z / (z - 1.0)
        return (1.0 - z) ** (-p.a) * hyp2f1_partial(HypParams(p.a, p.c - p.b, p.c), w, tol)
    if z == 1.0:
        if p.excess <= 0.0:
            raise DivergenceError(f"series diverges at z = 1 (c - a - b = {p.excess})")
        return _unit_richardson(p, tol)
    if z <= 0.75:
        return _series(p.a, p.b, p.c, z, tol)
    return _near_one(p, z, tol)


# --------------------------------------------------------------------------
# Whittaker W


_HEAD_TERMS = 96


def _whittaker_log_head(alpha: float, beta: float, c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """ln ∫₀^c t^{α-1} e^{-t} (1 + t/z)^β dt for c ≤ min(z, 1)/2, term by term."""
    k = np.arange(1, _HEAD_TERMS)[:, None]
    binom = np.vstack([np.ones_like(c), np.cumprod((beta - k + 1) / k * (c / z), axis=0)])
    expo = np.vstack([np.ones_like(c), np.cumprod(-c / k * np.ones_like(c), axis=0)])
    total = np.zeros_like(c)
    for n in range(_HEAD_TERMS):
        total += np.sum(expo[: n + 1] * binom[n::-1], axis=0) / (alpha + n)
    return alpha * np.log(c) + np.log(total)


def whittaker_w(p: WhittakerParams, z, rel_tol: float = 1e-12, log: bool = False):
    """Whittaker function W_{mu,nu}(z) for z > 0.

    Evaluated from

        W(z) = e^{-z/2} z^mu / Γ(α) ∫₀^∞ e^{-t} t^{α-1} (1 + t/z)^β dt,

    with α = ν − μ + 1/2 and β = ν + μ − 1/2, on an exp-sinh rule that is
    refined until two successive levels agree to ``rel_tol``.  Since W is
    even in ν, the sign of ν giving the larger α is used.  The integrand is
    positive, so W > 0 and ``log=True`` returns ln W, which stays finite
    where W itself would overflow.  Accepts a scalar or an array.
    """
    nu = abs(p.nu)
    alpha = nu - p.mu + 0.5
    beta = nu + p.mu - 0.5
    if alpha <= 0.0:
        raise DomainError(f"W_{{{p.mu},{p.nu}}}: integral representation needs "
                          f"|nu| - mu + 1/2 > 0")
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(~(zz > 0.0)):
        raise DomainError("whittaker_w requires z > 0")
    lga = log_gamma(alpha)

    def log_integrand(t):
        logf = (alpha - 1.0) * np.log(t) - t - lga
        if beta != 0.0:
            logf = logf + beta * np.log1p(t / zz[:, None])
        return logf

    if alpha < 1.0:
        # t^{α-1} is singular at 0: integrate [0, c] termwise, the rest numerically
        c = 0.5 * np.minimum(zz, 1.0)
        log_head = _whittaker_log_head(alpha, beta, c, zz) - lga
        depth = 70.0
    else:
        c = np.zeros_like(zz)
        log_head = None
        # the integrand changes character at t ~ z, so the smallest node must
        # sit well below min(z)
        depth = max(70.0, math.log(1.0 / float(np.min(zz))) + 25.0)
    t_lo = -math.asinh(depth / (0.5 * math.pi))
    n0 = 65 if t_lo >= -4.5 else 97
    # per-argument scale taken from the coarsest rule keeps exp() in range
    coarse = exp_sinh(0.0, n0, t_lo).lo[None, :]
    shift = np.max(log_integrand(c[:, None] + coarse), axis=1)
    val, change = integrate_half_line(
        lambda rule: np.exp(log_integrand(c[:, None] + rule.lo[None, :]) - shift[:, None]),
        n=n0, rel_tol=rel_tol, t_lo=t_lo)
    if change > 1e-9:
        warnings.warn(f"Whittaker quadrature changed by {change:.1e} at the last refinement",
                      AccuracyWarning, stacklevel=2)
    if log_head is not None:
        val = val + np.exp(log_head - shift)
    out = -0.5 * zz + p.mu * np.log(zz) + shift + np.log(val)
    if not log:
        out = np.exp(out)
    return float(out[0]) if np.ndim(z) == 0 else out
