import math

import pytest
from hypothesis import given, settings, strategies as st

from rmtlab.expr import (
    Binary,
    Call,
    Constant,
    EvalDomainError,
    ExprSyntaxError,
    FUNCTIONS,
    Number,
    Pole,
    Unary,
    UnknownIdentifierError,
    Variable,
    eval_ast,
    format_ast,
    parse,
)

N = Variable("n")


def test_parse_call():
    assert parse("gamma(n+1)") == Call("gamma", (Binary("+", N, Number(1.0)),))


def test_parse_precedence():
    ast = parse("1/(4^n*gamma(n+1))")
    assert ast == Binary(
        "/",
        Number(1.0),
        Binary(
            "*",
            Binary("^", Number(4.0), N),
            Call("gamma", (Binary("+", N, Number(1.0)),)),
        ),
    )


def test_unary_minus_not_allowed_as_exponent():
    with pytest.raises(ExprSyntaxError) as info:
        parse("2^-n")
    assert info.value.offset == 2


def test_parenthesised_negative_exponent():
    assert eval_ast(parse("2^(-n)"), 3.0) == 0.125


def test_unary_minus_binds_looser_than_power():
    assert eval_ast(parse("-2^2"), 0.0) == -4.0
    assert parse("-n*2") == Binary("*", Unary("-", N), Number(2.0))


def test_power_chains_to_the_right():
    assert eval_ast(parse("2^3^2"), 0.0) == 512.0


def test_whitespace_and_constants():
    assert parse(" pi * e ") == Binary("*", Constant("pi"), Constant("e"))
    assert parse("1.5e-3") == Number(1.5e-3)


@pytest.mark.parametrize(
    "text", ["", "1+", "(n", "gamma(n", "pow(n)", "gamma(n, 2)", "n n", "1 $ 2", "2e"]
)
def test_syntax_errors(text):
    with pytest.raises(ExprSyntaxError):
        parse(text)


def test_syntax_error_reports_offset_and_expectation():
    with pytest.raises(ExprSyntaxError) as info:
        parse("gamma(n+1")
    assert info.value.offset == 9
    assert "')'" in info.value.expected


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("beta(n)")
    assert info.value.offset == 0
    with pytest.raises(UnknownIdentifierError):
        parse("x + 1")


def test_eval_examples():
    assert eval_ast(parse("gamma(n+1)"), -0.5) == pytest.approx(1.7724538509055160, rel=1e-14)
    with pytest.raises(Pole):
        eval_ast(parse("gamma(n+1)"), -1.0)
    assert eval_ast(parse("1"), 123.0) == 1.0


def test_rgamma_is_zero_at_poles():
    assert eval_ast(parse("rgamma(n)"), -2.0) == 0.0


@pytest.mark.parametrize(
    "text, n",
    [("ln(n)", 0.0), ("1/n", 0.0), ("sqrt(n)", -1.0), ("n^0.5", -2.0), ("0^n", -1.0), ("lgamma(n)", -0.5)],
)
def test_domain_errors(text, n):
    with pytest.raises(EvalDomainError):
        eval_ast(parse(text), n)


def test_lgamma_pole_is_a_pole():
    with pytest.raises(Pole):
        eval_ast(parse("lgamma(n)"), -3.0)


def test_format_examples():
    assert format_ast(parse("n+1*2")) == "(n + (1 * 2))"
    assert format_ast(parse("0.5e-3 + 1e300")) == "(0.0005 + 1e+300)"
    assert format_ast(parse("gamma(n)")) == "gamma(n)"


# random AST generator shared with the acceptance suite
numbers = st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False).map(Number)
leaves = st.one_of(numbers, st.just(N), st.sampled_from([Constant("pi"), Constant("e")]))


def _extend(children):
    unary_calls = st.builds(
        lambda f, a: Call(f, (a,)),
        st.sampled_from([f for f, k in FUNCTIONS.items() if k == 1]),
        children,
    )
    pow_call = st.builds(lambda a, b: Call("pow", (a, b)), children, children)
    binary = st.builds(Binary, st.sampled_from(["+", "-", "*", "/", "^"]), children, children)
    neg = st.builds(lambda a: Unary("-", a), children)
    return st.one_of(binary, neg, unary_calls, pow_call)


asts = st.recursive(leaves, _extend, max_leaves=12)


@settings(max_examples=300)
@given(asts)
def test_format_round_trip(ast):
    assert parse(format_ast(ast)) == ast


@settings(max_examples=300)
@given(asts, st.floats(min_value=-50, max_value=50, allow_nan=False))
def test_eval_is_total_and_deterministic(ast, n):
    def run():
        try:
            return ("ok", eval_ast(ast, n))
        except Pole:
            return ("pole", None)
        except EvalDomainError:
            return ("domain", None)

    first, second = run(), run()
    assert first[0] == second[0]
    if first[0] == "ok":
        assert math.isnan(first[1]) is False
        assert first[1] == second[1] or (math.isinf(first[1]) and first[1] == second[1])
