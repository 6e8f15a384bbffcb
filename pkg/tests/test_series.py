import math

import pytest
from hypothesis import given, strategies as st

from rmtlab import expr
from rmtlab.phi import PhiFunction, catalog_lookup, catalog_names, phi_from_expression
from rmtlab.series import MalformedPhiError, eval_series, series_consistency_check

UNIT = catalog_lookup("exp").phi
FACT = catalog_lookup("geometric").phi


def test_exp_at_one():
    r = eval_series(UNIT, 1, 1.0, tol=1e-12)
    assert r.converged
    assert r.value == pytest.approx(0.36787944117144233, rel=1e-15)


def test_geometric_inside_disc():
    r = eval_series(FACT, 1, 0.5, tol=1e-12)
    assert r.converged
    assert r.value == pytest.approx(2.0 / 3.0, abs=1e-11)


def test_geometric_outside_disc_does_not_converge():
    r = eval_series(FACT, 1, 2.0, tol=1e-12, max_terms=200)
    assert not r.converged
    assert r.terms_used == 200


def test_zero_argument_gives_phi_at_zero():
    for name in catalog_names():
        e = catalog_lookup(name)
        assert eval_series(e.phi, e.m, 0.0).value == e.phi.phi_at_zero
        assert e.f_direct(0.0) == pytest.approx(e.phi.phi_at_zero, rel=1e-15)


def test_converged_estimate_within_tolerance():
    for x in [0.1, 0.5, 1.0, 3.0]:
        r = eval_series(UNIT, 2, x, tol=1e-10)
        assert r.converged
        assert r.truncation_estimate <= 1e-10 * max(1.0, abs(r.value))


def test_pole_at_integer_is_malformed():
    phi = phi_from_expression(expr.parse("gamma(3-n)"))
    with pytest.raises(MalformedPhiError):
        eval_series(phi, 1, 0.5)


def test_argument_checks():
    with pytest.raises(ValueError):
        eval_series(UNIT, 1, 1.0, tol=0.0)
    with pytest.raises(ValueError):
        eval_series(UNIT, 1, 1.0, max_terms=1)
    with pytest.raises(ValueError):
        eval_series(UNIT, 1, -1.0)


def test_log_space_terms_survive_large_factorials():
    # 1/(1+x) at x = 0.99 needs thousands of terms; Gamma(n+1) itself would overflow past n = 170
    r = eval_series(FACT, 1, 0.99, tol=1e-12, max_terms=5000)
    assert r.converged
    assert r.value == pytest.approx(1 / 1.99, rel=1e-10)


def test_expression_phi_falls_back_to_values():
    phi = phi_from_expression(expr.parse("1/(4^n*gamma(n+1))"))
    r = eval_series(phi, 2, 3.0)
    assert r.value == pytest.approx(catalog_lookup("bessel_j0").f_direct(3.0), rel=1e-12)


@pytest.mark.parametrize(
    "name, grid",
    [
        ("exp", [0.0, 0.5, 1.0, 2.0]),
        ("cos", [0.0, 1.0, 3.0]),
        ("geometric", [0.0]),
        ("gauss", [0.0, 0.3, 1.0, 2.0]),
        ("geometric", [0.1, 0.5, 0.8]),
        ("cauchy", [0.1, 0.5, 0.8]),
        ("bessel_j0", [0.5, 4.0, 8.0]),
        ("algebraic_a", [0.2, 0.6, 0.8]),
    ],
)
def test_consistency(name, grid):
    records = series_consistency_check(catalog_lookup(name), grid, tol=1e-9)
    assert len(records) == len(grid)
    assert all(r.passed for r in records), records


def test_consistency_geometric_origin():
    (r,) = series_consistency_check(catalog_lookup("geometric"), [0.0], tol=1e-9)
    assert r.series_value == 1.0 and r.direct_value == 1.0 and r.passed


def test_consistency_detects_a_wrong_pairing():
    wrong = catalog_lookup("exp")
    from dataclasses import replace

    wrong = replace(wrong, f_direct=lambda x: math.exp(-2 * x))
    assert not all(r.passed for r in series_consistency_check(wrong, [0.5, 1.0]))


@pytest.mark.parametrize("name", catalog_names())
def test_compensated_and_naive_agree(name):
    e = catalog_lookup(name)
    radius = 0.9 if e.nu_validity[1] < math.inf and name in ("geometric", "cauchy", "algebraic_a") else 3.0
    for x in [radius * j / 6 for j in range(1, 7)]:
        a = eval_series(e.phi, e.m, x).value
        b = eval_series(e.phi, e.m, x, compensated=False).value
        assert abs(a - b) <= 1e-9 * abs(a), (name, x)


@given(st.floats(min_value=0.0, max_value=5.0))
def test_exp_series_matches_math(x):
    assert eval_series(UNIT, 1, x, tol=1e-15).value == pytest.approx(math.exp(-x), rel=1e-12)
