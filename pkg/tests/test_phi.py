import math

import pytest

from rmtlab import expr
from rmtlab.phi import (
    PhiFunction,
    PoleAtOriginError,
    UnknownEntryError,
    ZeroAtOriginError,
    catalog_lookup,
    catalog_names,
    catalog_parameters,
    phi_eval,
    phi_from_expression,
)
from rmtlab.expr import Pole

CATALOG = catalog_names()


def test_names():
    assert CATALOG == (
        "exp",
        "gauss",
        "geometric",
        "cauchy",
        "cos",
        "bessel_j0",
        "algebraic_a",
    )


def test_phi_eval_examples():
    unit = catalog_lookup("exp").phi
    fact = catalog_lookup("geometric").phi
    assert phi_eval(unit, -0.5) == 1.0
    assert phi_eval(fact, -0.5) == pytest.approx(1.7724538509055160, rel=1e-14)
    with pytest.raises(Pole):
        phi_eval(fact, -1.0)


def test_lookup_examples():
    e = catalog_lookup("exp")
    assert e.m == 1 and e.phi(3.7) == 1.0
    assert e.f_direct(2.0) == math.exp(-2.0)
    g = catalog_lookup("gauss")
    assert g.m == 2 and g.parity == "even" and g.phi(0.3) == 1.0
    assert g.f_direct(1.5) == math.exp(-2.25)
    with pytest.raises(UnknownEntryError) as info:
        catalog_lookup("nosuch")
    assert "gauss" in str(info.value)


def test_parametrised_entry():
    assert catalog_parameters("algebraic_a") == ("a",)
    assert catalog_parameters("exp") == ()
    e = catalog_lookup("algebraic_a", a=2.0)
    assert e.nu_validity == (0.0, 4.0)
    assert e.f_direct(1.0) == 0.25
    assert e.phi(1.0) == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(ValueError):
        catalog_lookup("exp", a=2.0)
    with pytest.raises(ValueError):
        catalog_lookup("algebraic_a", a=-1.0)


def test_phi_from_expression_examples():
    one = phi_from_expression(expr.parse("1"))
    assert one.phi_at_zero == 1.0
    cos_phi = phi_from_expression(expr.parse("gamma(n+1)/gamma(2*n+1)"))
    assert cos_phi.phi_at_zero == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ZeroAtOriginError):
        phi_from_expression(expr.parse("n"))
    with pytest.raises(PoleAtOriginError):
        phi_from_expression(expr.parse("gamma(n)"))


def test_phi_function_rejects_zero_at_origin():
    with pytest.raises(ZeroAtOriginError):
        PhiFunction("zero", lambda s: 0.0, 0.0)


@pytest.mark.parametrize("name", CATALOG)
def test_phi_at_zero_matches_evaluator(name):
    phi = catalog_lookup(name).phi
    assert phi.phi_at_zero != 0
    assert abs(phi(0.0) - phi.phi_at_zero) <= 1e-12 * abs(phi.phi_at_zero)


@pytest.mark.parametrize("name", CATALOG)
def test_builtin_phi_matches_its_formula(name):
    # the built-in evaluators are rewritten for accuracy; the formula text is the reference
    phi = catalog_lookup(name).phi
    ref = expr.parse(phi.formula)
    for s in [0.0, 0.5, 1.0, 2.0, 3.5, -0.25, -0.3, -0.7, -1.3]:
        try:
            want = expr.eval_ast(ref, s)
        except Pole:
            if phi.poles.kind == "none":
                continue  # removable singularity in the written formula
            with pytest.raises(Pole):
                phi(s)
            continue
        assert phi(s) == pytest.approx(want, rel=1e-12), s


@pytest.mark.parametrize("name", CATALOG)
def test_declared_poles_raise(name):
    phi = catalog_lookup(name).phi
    for s in [-0.5, -1.0, -1.5, -2.0, -2.5, -3.0]:
        if phi.poles.contains(s):
            with pytest.raises(Pole):
                phi(s)
        else:
            assert math.isfinite(phi(s))


@pytest.mark.parametrize("name", CATALOG)
def test_phi_reproduces_series_coefficients(name, taylor_coefficients):
    entry = catalog_lookup(name)
    m = entry.m
    coeffs = taylor_coefficients(name, 12 * m)
    for k in range(13):
        from_series = coeffs[m * k] * math.factorial(k) * (-1) ** k
        assert entry.phi(float(k)) == pytest.approx(from_series, rel=1e-9), k
        if m == 2:
            assert coeffs[m * k + 1] == 0.0 if m * k + 1 < len(coeffs) else True


MP_F = {
    "exp": lambda mp, x: mp.exp(-x),
    "gauss": lambda mp, x: mp.exp(-x * x),
    "geometric": lambda mp, x: 1 / (1 + x),
    "cauchy": lambda mp, x: 1 / (1 + x * x),
    "cos": lambda mp, x: mp.cos(x),
    "bessel_j0": lambda mp, x: mp.besselj(0, x),
    "algebraic_a": lambda mp, x: (1 + x * x) ** mp.mpf(-1.5),
}


@pytest.mark.parametrize("name", CATALOG)
def test_closed_form_oracle_against_independent_quadrature(name):
    # confirm every expected Mellin form with mpmath, independent of rmtlab.quad
    import mpmath as mp

    entry = catalog_lookup(name)
    f = MP_F[name]
    lo, hi = entry.nu_validity
    sigmas = [s for s in (0.25, 0.5, 0.75, 1.25, 1.75, 2.5) if lo < s < hi]
    with mp.workdps(30):
        for sigma in sigmas:
            sig = mp.mpf(sigma)
            # x = u^(1/sigma) removes the x^(sigma-1) singularity on [0, 1]
            head = mp.quad(lambda u: f(mp, u ** (1 / sig)), [0, 1]) / sig
            if entry.oscillatory:
                tail = mp.quadosc(lambda x: x ** (sig - 1) * f(mp, x), [1, mp.inf], period=2 * mp.pi)
            else:
                # x = e^y; algebraic tails need a long reach, exponential ones are gone by y = 8
                ys = [0, 10, 50, 400] if hi < math.inf else [0, 2, 4, 8]
                tail = mp.quad(lambda y: mp.exp(sig * y) * f(mp, mp.exp(y)), ys)
            ref = head + tail
            assert entry.expected(sigma) == pytest.approx(float(ref), rel=1e-10), sigma


def test_scaled_phi():
    phi = catalog_lookup("geometric").phi
    p2 = phi.scaled(2.0)
    assert p2(1.5) == pytest.approx(2.0**1.5 * phi(1.5), rel=1e-15)
    assert p2.log_abs(3.0)[0] == pytest.approx(math.log(8 * 6), rel=1e-14)
