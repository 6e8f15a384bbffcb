import math

import pytest

SYMPY_F = {
    "exp": lambda sp, x: sp.exp(-x),
    "gauss": lambda sp, x: sp.exp(-(x**2)),
    "geometric": lambda sp, x: 1 / (1 + x),
    "cauchy": lambda sp, x: 1 / (1 + x**2),
    "cos": lambda sp, x: sp.cos(x),
    "bessel_j0": lambda sp, x: sp.besselj(0, x),
    "algebraic_a": lambda sp, x: (1 + x**2) ** sp.Rational(-3, 2),
}


@pytest.fixture(scope="session")
def taylor_coefficients():
    """Taylor coefficients of each catalog f computed symbolically."""
    import sympy as sp

    x = sp.Symbol("x")
    cache = {}

    def coeffs(name, order):
        key = (name, order)
        if key not in cache:
            expr = SYMPY_F[name](sp, x)
            poly = sp.series(expr, x, 0, order + 1).removeO()
            cache[key] = [float(poly.coeff(x, j)) for j in range(order + 1)]
        return cache[key]

    return coeffs


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.fixture
def relerr():
    return rel


_CRITERIA = {}


def pytest_collection_modifyitems(items):
    for item in items:
        fn = getattr(item, "function", None)
        if item.name.startswith("test_ac") and fn is not None and fn.__doc__:
            _CRITERIA[item.nodeid] = (int(item.name[7:9]), fn.__doc__.strip().splitlines()[0])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    outcome = {}
    for status in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(status, []):
            if rep.nodeid in _CRITERIA and (rep.when == "call" or status != "passed"):
                outcome[rep.nodeid] = "PASS" if status == "passed" else "FAIL"
    terminalreporter.section("acceptance criteria")
    for nodeid, (num, text) in sorted(_CRITERIA.items(), key=lambda kv: kv[1][0]):
        terminalreporter.write_line(f"AC{num:<3}{outcome.get(nodeid, 'NOT RUN'):8}{text}")
