"""Numerical Mellin integrals ``int_0^inf x^(nu-k) f(x) dx``.

[0, 1] uses tanh-sinh, which absorbs the x^(nu-k) endpoint singularity.
[1, inf) uses the exponential map x = e^t followed by an exp-sinh rule in t,
so algebraic decay in x becomes double-exponential decay. Oscillatory tails
are split at half-period boundaries, each piece integrated by Gauss-Legendre,
and the partial sums extrapolated with Wynn's epsilon algorithm.
"""
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_TOL = 1e-9
DEFAULT_OSC_TOL = 1e-6
MAX_LEVEL = 12
MAX_HALF_PERIODS = 200
MAX_EPS_COLUMNS = 60
DEFAULT_CUTOFFS = (10.0, 100.0, 1000.0)

_EPS = 2.220446049250313e-16
_HALF_PI = 0.5 * math.pi

# tanh-sinh: |pi sinh t| stays below ~640, so exp() never overflows
_TS_TMAX = 6.0
# exp-sinh on [1, inf): t = exp(pi/2 sinh tau) in [1e-300, 709]
_ES_TLO = -math.asinh(690.0 / _HALF_PI)
_ES_THI = math.asinh(math.log(709.0) / _HALF_PI)

_GL_NODES, _GL_WEIGHTS = (a.tolist() for a in np.polynomial.legendre.leggauss(32))


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool
    method_trace: str


@dataclass(frozen=True)
class DivergenceReport:
    cutoffs: Tuple[float, ...]
    values: Tuple[float, ...]
    increments: Tuple[float, ...]
    growing: bool
    ratio: float


def _de_integrate(term, t_lo, t_hi, tol, max_level=MAX_LEVEL, min_level=3):
    """Trapezoidal sums of ``term`` on [t_lo, t_hi], halving the step per level.

    Returns (value, err, evaluations, converged, level).
    """
    total = 0.0
    abs_total = 0.0
    evals = 0
    for j in range(math.ceil(t_lo), math.floor(t_hi) + 1):
        v = term(float(j))
        total += v
        abs_total += abs(v)
        evals += 1
    h = 1.0
    prev = total
    est, err = prev, math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        j = math.ceil(t_lo / h)
        if j % 2 == 0:
            j += 1
        while j * h <= t_hi:
            v = term(j * h)
            total += v
            abs_total += abs(v)
            evals += 1
            j += 2
        est = h * total
        err = max(abs(est - prev), 8 * _EPS * h * abs_total)
        prev = est
        if level >= min_level and err <= tol * abs(est):
            return est, err, evals, True, level
    return est, err, evals, False, max_level


def _tanh_sinh(g, a, b, tol, max_level=MAX_LEVEL):
    """int_a^b g(x) dx for g possibly singular (integrably) at the ends."""
    width = b - a

    def term(t):
        u = math.pi * math.sinh(t)
        left = width / (1.0 + math.exp(-u))
        right = width / (1.0 + math.exp(u))
        if left == 0.0 or right == 0.0:
            return 0.0
        w = math.pi * math.cosh(t) * left * (right / width)
        x = a + left if t < 0 else b - right
        return w * g(x)

    return _de_integrate(term, -_TS_TMAX, _TS_TMAX, tol, max_level)


def _exp_sinh_tail(f, p, tol, max_level=MAX_LEVEL):
    """int_1^inf x^p f(x) dx through x = exp(t), t = exp(pi/2 sinh tau)."""

    def term(tau):
        t = math.exp(_HALF_PI * math.sinh(tau))
        fx = f(math.exp(t))
        if fx == 0.0:
            return 0.0
        # log of x^p * |f(x)| * dx/dtau, with ln x = t
        log_mag = (
            (p + 1.0) * t
            + math.log(abs(fx))
            + math.log(t)
            + math.log(_HALF_PI * math.cosh(tau))
        )
        if log_mag < -745.0:
            return 0.0
        return math.copysign(math.exp(log_mag), fx)

    return _de_integrate(term, _ES_TLO, _ES_THI, tol, max_level)


def _gauss_legendre(g, a, b):
    c = 0.5 * (a + b)
    r = 0.5 * (b - a)
    return r * math.fsum(w * g(c + r * x) for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def _wynn(seq, max_cols=MAX_EPS_COLUMNS):
    """Wynn epsilon table; returns (estimate, error) from the steadiest even column."""
    n = len(seq)
    if n == 1:
        return seq[0], math.inf
    best = (seq[-1], abs(seq[-1] - seq[-2]))
    prev = [0.0] * (n + 1)
    cur = list(seq)
    for col in range(1, max_cols + 1):
        if len(cur) < 2:
            break
        nxt = []
        for j in range(len(cur) - 1):
            d = cur[j + 1] - cur[j]
            if d == 0.0:
                break
            nxt.append(prev[j + 1] + 1.0 / d)
        if len(nxt) < len(cur) - 1:
            # exact agreement: the column holding cur has converged
            if col % 2 == 1:
                return cur[-1], 0.0
            break
        prev, cur = cur, nxt
        if col % 2 == 0 and len(cur) >= 2:
            if not all(math.isfinite(c) for c in cur[-3:]):
                break
            err = abs(cur[-1] - cur[-2])
            if len(cur) >= 3:
                err = max(err, abs(cur[-2] - cur[-3]))
            if err < best[1]:
                best = (cur[-1], err)
    return best


def tail_extrapolate(partials: Sequence[float]) -> float:
    """Limit of a slowly converging sequence of partial sums (epsilon algorithm)."""
    if len(partials) < 3:
        raise ValueError("need at least three partial sums")
    if all(p == partials[0] for p in partials):
        return float(partials[0])
    return _wynn([float(p) for p in partials])[0]


def _oscillatory_tail(f, p, period, tol):
    half = 0.5 * period

    def g(x):
        return x ** p * f(x)

    j = math.floor(1.0 / half) + 1
    bounds = [1.0, j * half]
    partials: List[float] = [_gauss_legendre(g, 1.0, bounds[1])]
    evals = len(_GL_NODES)
    value, err = partials[0], math.inf
    last = None
    while len(partials) < MAX_HALF_PERIODS:
        a = bounds[-1]
        bounds.append(a + half)
        partials.append(partials[-1] + _gauss_legendre(g, a, a + half))
        evals += len(_GL_NODES)
        if len(partials) >= 20 and len(partials) % 10 == 0:
            value, err = _wynn(partials)
            if last is not None:
                err = max(err, abs(value - last))
            last = value
            if err <= tol * abs(value):
                return value, err, evals, True, len(partials)
    return value, err, evals, False, len(partials)


def mellin_quad(
    f: Callable[[float], float],
    nu: float,
    k: float = 1.0,
    tol: float = DEFAULT_TOL,
    oscillatory: bool = False,
    period_hint: Optional[float] = None,
) -> QuadResult:
    """``int_0^inf x^(nu-k) f(x) dx``.

    The error estimate is the sum of the head and tail estimates; converged
    means it is within ``tol`` relative to the returned value.
    """
    p = nu - k
    if not p > -1.0:
        raise ValueError(f"nu - k = {p!r} must exceed -1 for integrability at 0")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if oscillatory and not (period_hint and period_hint > 0):
        raise ValueError("oscillatory integrands need a positive period_hint")

    piece_tol = 0.25 * tol
    h_val, h_err, h_evals, h_ok, h_lvl = _tanh_sinh(
        lambda x: x ** p * f(x), 0.0, 1.0, piece_tol
    )
    trace = [f"tanh-sinh[0,1] level={h_lvl}"]
    if oscillatory:
        t_val, t_err, t_evals, t_ok, pieces = _oscillatory_tail(f, p, period_hint, piece_tol)
        trace.append(f"half-periods[1,inf) n={pieces} wynn-epsilon")
    else:
        t_val, t_err, t_evals, t_ok, t_lvl = _exp_sinh_tail(f, p, piece_tol)
        trace.append(f"exp-sinh(ln x)[1,inf) level={t_lvl}")
    value = h_val + t_val
    err = h_err + t_err
    converged = h_ok and t_ok and err <= tol * abs(value)
    return QuadResult(value, err, h_evals + t_evals, converged, "; ".join(trace))


def integrate_real_line(f, tol=DEFAULT_TOL, oscillatory=False, period_hint=None):
    """``int_-inf^inf f(x) dx`` for even f, as twice the half-line integral."""
    r = mellin_quad(f, 1.0, 1.0, tol, oscillatory, period_hint)
    return QuadResult(
        2.0 * r.value,
        2.0 * r.abs_error_estimate,
        r.evaluations,
        r.converged,
        "2 x (" + r.method_trace + ")",
    )


def divergence_probe(f, nu, k=1.0, cutoffs=DEFAULT_CUTOFFS, growth_ratio=0.5):
    """Integrate up to each cutoff and decide whether the values keep growing.

    Growing means the last increment is at least ``growth_ratio`` times the
    previous one (same sign) and not negligible.
    """
    cutoffs = tuple(float(c) for c in cutoffs)
    if len(cutoffs) < 3:
        raise ValueError("need at least three cutoffs")
    if any(b <= a for a, b in zip(cutoffs, cutoffs[1:])) or cutoffs[0] <= 0:
        raise ValueError("cutoffs must be positive and increasing")
    p = nu - k
    if not p > -1.0:
        raise ValueError(f"nu - k = {p!r} must exceed -1 for integrability at 0")

    def g(x):
        return x ** p * f(x)

    points = [0.0]
    if cutoffs[0] > 1.0:
        points.append(1.0)
    points.extend(cutoffs)
    acc = 0.0
    reached = {}
    for a, b in zip(points, points[1:]):
        acc += _tanh_sinh(g, a, b, 1e-10)[0]
        reached[b] = acc
    values = tuple(reached[c] for c in cutoffs)
    incs = tuple(b - a for a, b in zip(values, values[1:]))
    prev_inc, last_inc = incs[-2], incs[-1]
    ratio = last_inc / prev_inc if prev_inc != 0.0 else 0.0
    growing = ratio >= growth_ratio and abs(last_inc) > 1e-12 * max(1.0, abs(values[-1]))
    return DivergenceReport(cutoffs, values, incs, growing, ratio)
