"""Closed-form Mellin integrals from the coefficient function.

For ``f(x) = sum_n phi(n) (-1)^n / n! x^(m n)``::

    int_0^inf x^(nu - k) f(x) dx = (1/m) Gamma(s) phi(-s),   s = (nu + 1 - k) / m

provided ``nu > k - 1``. With m = k = 1 this is the classic master theorem
``Gamma(nu) phi(-nu)``; with m = 2 and nu = k the integral over the whole
real line of an even f is ``sqrt(pi) phi(-1/2)``.
"""
import enum
import math
from dataclasses import dataclass
from typing import Optional

from . import specfun
from .expr import EvalDomainError, Pole
from .phi import phi_eval

SQRT_PI = math.sqrt(math.pi)


class Status(str, enum.Enum):
    FINITE = "finite"
    DIVERGENT = "divergent"
    INVALID = "invalid"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RmtQuery:
    nu: float
    m: int = 1
    k: float = 1.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")


@dataclass(frozen=True)
class RmtResult:
    status: Status
    value: Optional[float]
    s: float
    detail: str

    @property
    def finite(self):
        return self.status is Status.FINITE


def rmt_generalized(phi, m, k, nu, strip=None):
    """``(1/m) Gamma(s) phi(-s)`` with s = (nu + 1 - k)/m, classified.

    ``strip`` is an optional open interval (lo, hi) of exponents
    ``sigma = nu + 1 - k`` where the integral converges; sigma >= hi is
    reported as divergent even when phi(-s) is finite there (the formula
    then returns the analytic continuation, not the integral).
    """
    if int(m) != m or m < 1:
        raise ValueError(f"m must be a positive integer, got {m!r}")
    sigma = nu + 1.0 - k
    s = sigma / m
    if s <= specfun.POLE_TOL:
        return RmtResult(
            Status.INVALID,
            None,
            s,
            f"s = (nu+1-k)/m = {s:.17g} <= 0 (pole tolerance {specfun.POLE_TOL:g});"
            " convergence at x = 0 requires nu > k - 1",
        )
    if strip is not None and sigma >= strip[1]:
        return RmtResult(
            Status.DIVERGENT,
            None,
            s,
            f"nu+1-k = {sigma:.17g} >= {strip[1]:g}: integral diverges at infinity",
        )
    try:
        p = phi_eval(phi, -s)
    except Pole:
        return RmtResult(
            Status.DIVERGENT,
            None,
            s,
            f"phi(-s) pole at s={s:.17g} (pole tolerance {specfun.POLE_TOL:g})",
        )
    except EvalDomainError as exc:
        # phi is not defined at -s, so the formula says nothing
        return RmtResult(Status.INVALID, None, s, f"phi(-s) undefined at s={s:.17g}: {exc}")
    value = specfun.gamma(s).value * p / m
    return RmtResult(Status.FINITE, value, s, "finite")


def rmt(phi, nu, strip=None):
    """``int_0^inf x^(nu-1) f(x) dx = Gamma(nu) phi(-nu)``."""
    return rmt_generalized(phi, 1, 1.0, nu, strip=strip)


def rmt_symmetric(phi):
    """``int_-inf^inf f(x) dx = sqrt(pi) phi(-1/2)`` for even f with m = 2."""
    try:
        p = phi_eval(phi, -0.5)
    except Pole:
        return RmtResult(Status.DIVERGENT, None, 0.5, "phi(-s) pole at s=0.5")
    except EvalDomainError as exc:
        return RmtResult(Status.INVALID, None, 0.5, f"phi(-s) undefined at s=0.5: {exc}")
    return RmtResult(Status.FINITE, SQRT_PI * p, 0.5, "finite")


def classify(phi, m, k, nu, strip=None):
    """Return ``(status, reason)`` for the query."""
    res = rmt_generalized(phi, m, k, nu, strip=strip)
    return res.status, res.detail
