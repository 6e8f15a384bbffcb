"""Coefficient functions phi(n) and the built-in catalog of test functions.

A function f with expansion ``f(x) = sum_n phi(n) (-1)^n / n! x^(m n)`` is
described by its coefficient function phi, continued to real arguments.
Each catalog entry pairs phi with a direct evaluator of f, the power m, the
strip of exponents where the Mellin integral converges, and the expected
closed form of the Mellin transform as an expression in ``n``.
"""
import inspect
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

from . import expr, specfun
from .expr import Pole

__all__ = [
    "Pole",
    "PoleSet",
    "PhiFunction",
    "CatalogEntry",
    "UnknownEntryError",
    "ZeroAtOriginError",
    "PoleAtOriginError",
    "phi_eval",
    "phi_from_expression",
    "catalog_lookup",
    "catalog_names",
    "catalog_parameters",
]


class ZeroAtOriginError(ValueError):
    """phi(0) must be non-zero."""


class PoleAtOriginError(ValueError):
    """phi has a pole at 0."""


class UnknownEntryError(LookupError):
    def __init__(self, name):
        self.name = name
        super().__init__(
            f"unknown catalog entry {name!r}; available: {', '.join(catalog_names())}"
        )

    def __str__(self):
        return self.args[0]


@dataclass(frozen=True)
class PoleSet:
    """Declared poles of phi.

    ``kind`` is one of "none", "shifted" (poles where ``s + shift`` is a
    non-positive integer), "explicit" (listed in ``points``) or "unknown".
    """

    kind: str = "none"
    shift: float = 0.0
    points: Tuple[float, ...] = ()

    def contains(self, s, tol=specfun.POLE_TOL):
        if self.kind == "shifted":
            return specfun.is_gamma_pole(s + self.shift, tol)
        if self.kind == "explicit":
            return any(abs(s - p) <= tol for p in self.points)
        return False

    def describe(self):
        if self.kind == "shifted":
            return f"s + {self.shift:g} in {{0, -1, -2, ...}}"
        if self.kind == "explicit":
            return "{" + ", ".join(f"{p:g}" for p in self.points) + "}"
        return self.kind


def _log_abs_from_value(evaluator):
    def log_abs(n):
        v = evaluator(n)
        if v == 0.0:
            return -math.inf, 1.0
        return math.log(abs(v)), math.copysign(1.0, v)

    return log_abs


@dataclass(frozen=True)
class PhiFunction:
    """The coefficient function phi, evaluable at any real argument.

    ``evaluator`` raises :class:`Pole` at a pole. ``log_abs`` returns
    ``(ln|phi(n)|, sign)`` and is used by the series evaluator to postpone
    overflow; it defaults to one derived from ``evaluator``.
    """

    name: str
    evaluator: Callable[[float], float]
    phi_at_zero: float
    poles: PoleSet = PoleSet()
    formula: str = ""
    log_abs: Optional[Callable[[float], Tuple[float, float]]] = None

    def __post_init__(self):
        if self.phi_at_zero == 0.0:
            raise ZeroAtOriginError(f"{self.name}: phi(0) must be non-zero")
        if self.log_abs is None:
            object.__setattr__(self, "log_abs", _log_abs_from_value(self.evaluator))
        try:
            at0 = self.evaluator(0.0)
        except Pole:
            raise PoleAtOriginError(f"{self.name}: phi has a pole at 0") from None
        if abs(at0 - self.phi_at_zero) > 1e-12 * abs(self.phi_at_zero):
            raise ValueError(f"{self.name}: phi_at_zero disagrees with evaluator(0)")

    def __call__(self, s):
        return self.evaluator(s)

    def scaled(self, lam):
        """phi_lam(n) = lam**n phi(n), the coefficients of f(lam**(1/m) x)."""
        if lam <= 0:
            raise ValueError("scale must be positive")
        base, log_base = self.evaluator, self.log_abs
        log_lam = math.log(lam)

        def evaluator(s):
            return lam ** s * base(s)

        def log_abs(n):
            la, sign = log_base(n)
            return la + n * log_lam, sign

        return PhiFunction(
            name=f"{lam:g}^n*{self.name}",
            evaluator=evaluator,
            phi_at_zero=self.phi_at_zero,
            poles=self.poles,
            formula=f"{lam!r}^n*({self.formula or self.name})",
            log_abs=log_abs,
        )


def phi_eval(phi, s):
    """phi(s); raises :class:`Pole` when s is a pole of phi."""
    return phi.evaluator(s)


def phi_from_expression(ast, name=None):
    """Wrap a parsed expression in n as a PhiFunction."""
    text = expr.format_ast(ast) if name is None else name

    def evaluator(s):
        return expr.eval_ast(ast, s)

    try:
        at0 = evaluator(0.0)
    except Pole:
        raise PoleAtOriginError(f"{text}: phi has a pole at 0") from None
    except expr.EvalDomainError as exc:
        raise ValueError(f"{text}: phi(0) is undefined ({exc})") from None
    if at0 == 0.0:
        raise ZeroAtOriginError(f"{text}: phi(0) = 0 is not allowed")
    return PhiFunction(
        name=text,
        evaluator=evaluator,
        phi_at_zero=at0,
        poles=PoleSet("unknown"),
        formula=text,
    )


# -- built-in coefficient functions -----------------------------------------


def _raise_on_pole(x):
    g = specfun.gamma(x)
    if g.at_pole:
        raise Pole(f"gamma pole at {x!r}")
    return g.value


def _unit_phi():
    return PhiFunction(
        name="1",
        evaluator=lambda s: 1.0,
        phi_at_zero=1.0,
        formula="1",
        log_abs=lambda n: (0.0, 1.0),
    )


def _factorial_phi():
    return PhiFunction(
        name="gamma(n+1)",
        evaluator=lambda s: _raise_on_pole(s + 1.0),
        phi_at_zero=1.0,
        poles=PoleSet("shifted", 1.0),
        formula="gamma(n+1)",
        log_abs=lambda n: (specfun.log_gamma(n + 1.0), 1.0),
    )


_LOG_SQRT_PI = 0.5 * math.log(math.pi)
_LOG4 = math.log(4.0)


def _cos_phi():
    # Gamma(n+1)/Gamma(2n+1) = sqrt(pi) 4^-n / Gamma(n+1/2) by duplication; entire
    def evaluator(s):
        return math.sqrt(math.pi) * 4.0 ** -s * specfun.reciprocal_gamma(s + 0.5)

    return PhiFunction(
        name="gamma(n+1)/gamma(2*n+1)",
        evaluator=evaluator,
        phi_at_zero=evaluator(0.0),
        formula="gamma(n+1)/gamma(2*n+1)",
        log_abs=lambda n: (_LOG_SQRT_PI - n * _LOG4 - specfun.log_gamma(n + 0.5), 1.0),
    )


def _bessel_phi():
    def evaluator(s):
        return 4.0 ** -s * specfun.reciprocal_gamma(s + 1.0)

    return PhiFunction(
        name="1/(4^n*gamma(n+1))",
        evaluator=evaluator,
        phi_at_zero=1.0,
        formula="1/(4^n*gamma(n+1))",
        log_abs=lambda n: (-n * _LOG4 - specfun.log_gamma(n + 1.0), 1.0),
    )


def _pochhammer_phi(a):
    # Gamma(a+n)/Gamma(a)
    def evaluator(s):
        if specfun.is_gamma_pole(a + s):
            raise Pole(f"gamma pole at {a + s!r}")
        return specfun.gamma_ratio(a + s, a)

    lga = specfun.log_gamma(a)
    text = f"gamma({a!r}+n)/gamma({a!r})"
    return PhiFunction(
        name=text,
        evaluator=evaluator,
        phi_at_zero=1.0,
        poles=PoleSet("shifted", a),
        formula=text,
        log_abs=lambda n: (specfun.log_gamma(a + n) - lga, 1.0),
    )


# -- catalog -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """A named test function f with its coefficient function and oracles.

    ``nu_validity`` is the open interval of exponents sigma for which
    ``int_0^inf x^(sigma-1) f(x) dx`` converges; for a query (nu, k) the
    relevant exponent is ``sigma = nu + 1 - k``. ``expected_closed_form``
    is an expression in ``n`` read as sigma.
    """

    name: str
    phi: PhiFunction
    m: int
    f_direct: Callable[[float], float]
    parity: str
    nu_validity: Tuple[float, float]
    expected_closed_form: Optional[expr.Ast]
    oscillatory: bool = False
    period_hint: Optional[float] = None
    series_radius: float = math.inf
    params: Tuple[Tuple[str, float], ...] = field(default=())
    closed_form_text: str = ""

    def expected(self, sigma):
        """Closed-form Mellin transform at exponent sigma."""
        return expr.eval_ast(self.expected_closed_form, sigma)


def _exp():
    return CatalogEntry(
        name="exp",
        phi=_unit_phi(),
        m=1,
        f_direct=lambda x: math.exp(-x),
        parity="none",
        nu_validity=(0.0, math.inf),
        expected_closed_form=expr.parse("gamma(n)"),
        closed_form_text="gamma(n)",
    )


def _gauss():
    return CatalogEntry(
        name="gauss",
        phi=_unit_phi(),
        m=2,
        f_direct=lambda x: math.exp(-x * x),
        parity="even",
        nu_validity=(0.0, math.inf),
        expected_closed_form=expr.parse("gamma(n/2)/2"),
        closed_form_text="gamma(n/2)/2",
    )


def _geometric():
    return CatalogEntry(
        name="geometric",
        phi=_factorial_phi(),
        m=1,
        f_direct=lambda x: 1.0 / (1.0 + x),
        parity="none",
        nu_validity=(0.0, 1.0),
        expected_closed_form=expr.parse("pi/sin(pi*n)"),
        closed_form_text="pi/sin(pi*n)",
        series_radius=1.0,
    )


def _cauchy():
    return CatalogEntry(
        name="cauchy",
        phi=_factorial_phi(),
        m=2,
        f_direct=lambda x: 1.0 / (1.0 + x * x),
        parity="even",
        nu_validity=(0.0, 2.0),
        expected_closed_form=expr.parse("gamma(n/2)*gamma(1-n/2)/2"),
        closed_form_text="gamma(n/2)*gamma(1-n/2)/2",
        series_radius=1.0,
    )


def _cos():
    return CatalogEntry(
        name="cos",
        phi=_cos_phi(),
        m=2,
        f_direct=math.cos,
        parity="even",
        nu_validity=(0.0, 1.0),
        expected_closed_form=expr.parse("gamma(n)*cos(pi*n/2)"),
        closed_form_text="gamma(n)*cos(pi*n/2)",
        oscillatory=True,
        period_hint=2.0 * math.pi,
    )


def _bessel_j0():
    return CatalogEntry(
        name="bessel_j0",
        phi=_bessel_phi(),
        m=2,
        f_direct=specfun.bessel_j0,
        parity="even",
        nu_validity=(0.0, 1.5),
        expected_closed_form=expr.parse("2^(n-1)*gamma(n/2)/gamma(1-n/2)"),
        closed_form_text="2^(n-1)*gamma(n/2)/gamma(1-n/2)",
        oscillatory=True,
        period_hint=2.0 * math.pi,
    )


def _algebraic(a=1.5):
    a = float(a)
    if not a > 0:
        raise ValueError(f"algebraic_a needs a > 0, got {a!r}")

    def f(x):
        return (1.0 + x * x) ** -a

    return CatalogEntry(
        name="algebraic_a",
        phi=_pochhammer_phi(a),
        m=2,
        f_direct=f,
        parity="even",
        nu_validity=(0.0, 2.0 * a),
        expected_closed_form=expr.parse(f"gamma(n/2)*gamma({a!r}-n/2)/(2*gamma({a!r}))"),
        closed_form_text=f"gamma(n/2)*gamma({a!r}-n/2)/(2*gamma({a!r}))",
        series_radius=1.0,
        params=(("a", a),),
    )


_BUILDERS = {
    "exp": _exp,
    "gauss": _gauss,
    "geometric": _geometric,
    "cauchy": _cauchy,
    "cos": _cos,
    "bessel_j0": _bessel_j0,
    "algebraic_a": _algebraic,
}

_DEFAULTS = {name: build() for name, build in _BUILDERS.items()}


def catalog_names():
    return tuple(_BUILDERS)


def catalog_parameters(name):
    """Names of the parameters entry ``name`` accepts."""
    if name not in _BUILDERS:
        raise UnknownEntryError(name)
    return tuple(inspect.signature(_BUILDERS[name]).parameters)


def catalog_lookup(name, **params):
    """Return the catalog entry ``name``; parametrised entries accept overrides."""
    if name not in _BUILDERS:
        raise UnknownEntryError(name)
    if not params:
        return _DEFAULTS[name]
    try:
        return _BUILDERS[name](**params)
    except TypeError:
        raise ValueError(
            f"entry {name!r} does not accept parameters {sorted(params)}"
        ) from None
