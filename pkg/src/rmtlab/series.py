"""Direct summation of ``f(x) = sum_n phi(n) (-1)^n / n! x^(m n)``."""
import math
from dataclasses import dataclass
from typing import List

from . import specfun
from .expr import Pole

DEFAULT_MAX_TERMS = 400


class MalformedPhiError(ValueError):
    """phi has a pole at a non-negative integer, so the series is meaningless."""


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_estimate: float
    converged: bool


def _term(phi, m, log_x, n):
    try:
        log_phi, sign = phi.log_abs(float(n))
    except Pole:
        raise MalformedPhiError(f"phi({n}) is a pole") from None
    if log_phi == -math.inf:
        return 0.0
    if n % 2:
        sign = -sign
    log_mag = log_phi - specfun.log_gamma(n + 1.0) + m * n * log_x
    if log_mag > 709.78:
        return sign * math.inf
    return sign * math.exp(log_mag)


def eval_series(phi, m, x, tol=1e-12, max_terms=DEFAULT_MAX_TERMS, compensated=True):
    """Sum the series at ``x`` until two consecutive terms are negligible.

    Terms are formed in log space. With ``compensated`` the partial sums are
    accumulated exactly (``math.fsum``); otherwise left to right.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_terms < 2:
        raise ValueError("max_terms must be at least 2")
    if x < 0:
        raise ValueError("x must be non-negative")
    if m < 1:
        raise ValueError("m must be a positive integer")

    try:
        first = phi.evaluator(0.0)
    except Pole:
        raise MalformedPhiError("phi(0) is a pole") from None
    if x == 0.0:
        return SeriesResult(first, 1, 0.0, True)

    log_x = math.log(x)
    terms: List[float] = [first]
    naive = first
    small_run = 0
    n = 1
    while n < max_terms:
        t = _term(phi, m, log_x, n)
        terms.append(t)
        naive += t
        n += 1
        if not math.isfinite(t):
            break
        if abs(t) <= tol * abs(naive):
            small_run += 1
            if small_run == 2:
                break
        else:
            small_run = 0

    value = math.fsum(terms) if compensated else naive
    estimate = max(abs(terms[-1]), abs(terms[-2]))
    converged = (
        small_run == 2
        and math.isfinite(value)
        and estimate <= tol * max(1.0, abs(value))
    )
    return SeriesResult(value, len(terms), estimate, converged)


@dataclass(frozen=True)
class ConsistencyRecord:
    x: float
    series_value: float
    direct_value: float
    rel_diff: float
    passed: bool


def series_consistency_check(entry, x_grid, tol=1e-9):
    """Compare the series of ``entry`` with its direct evaluator on ``x_grid``."""
    records = []
    for x in x_grid:
        s = eval_series(entry.phi, entry.m, x).value
        d = entry.f_direct(x)
        scale = max(abs(s), abs(d))
        rel = abs(s - d) / scale if scale > 0 else 0.0
        ok = rel <= tol or (abs(s) <= 1e-14 and abs(d) <= 1e-14)
        records.append(ConsistencyRecord(x, s, d, rel, ok))
    return records
