import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgcurves.expr import (EvalDomainError, ExprSyntaxError, Num, UnknownIdentifierError,
                           differentiate, evaluate, parse)


def test_parse_and_evaluate_examples():
    assert evaluate(parse("s^2/2", "s"), 2.0) == 2.0
    assert evaluate(parse("sinh(2*ln(s))", "s"), 1.0) == 0.0
    assert evaluate(parse("cosh(2*ln(s))", "s"), 1.0) == 1.0
    assert evaluate(parse("2*cosh(2*ln(s)) - sinh(2*ln(s))", "s"), 2.0) == pytest.approx(19 / 8,
                                                                                          rel=1e-15)


@pytest.mark.parametrize("text, value", [
    ("-x^2", -9.0),
    ("2^3^2", 512.0),
    ("2^-1", 0.5),
    ("1 - 2 - 3", -4.0),
    ("8/4/2", 1.0),
    ("-(x)*2", -6.0),
    ("pi", math.pi),
    ("e^2", math.e ** 2),
    ("abs(-x)", 3.0),
    ("1.5e1 + .5", 15.5),
])
def test_precedence_and_associativity(text, value):
    assert evaluate(parse(text), 3.0) == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("text, column", [
    ("2*+x", 3),
    ("x +", 4),
    ("(x", 3),
    ("x)", 2),
    ("sin x", 1),
    ("2 $ x", 3),
    ("x^x", 2),
    ("", 1),
])
def test_syntax_errors_report_columns(text, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.column == column


def test_unknown_identifier_names_it():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("2*y + 1")
    assert info.value.name == "y" and info.value.column == 3
    with pytest.raises(UnknownIdentifierError):
        parse("foo(x)")


@pytest.mark.parametrize("text, at", [("1/s", 0.0), ("ln(s)", -1.0), ("sqrt(s)", -4.0),
                                      ("s^0.5", -1.0), ("exp(s)", 1000.0)])
def test_domain_errors_carry_subexpression(text, at):
    e = parse(text, "s")
    with pytest.raises(EvalDomainError) as info:
        e.evaluate(at)
    assert info.value.at == at
    assert str(info.value.subexpr)


def test_domain_error_on_arrays_points_at_first_bad_value():
    with pytest.raises(EvalDomainError) as info:
        parse("ln(s)", "s").evaluate(np.array([1.0, 2.0, -3.0, -4.0]))
    assert info.value.at == -3.0


def test_derivative_examples():
    assert evaluate(differentiate(parse("s^2/2", "s")), 3.0) == 3.0
    assert evaluate(differentiate(parse("sinh(2*ln(s))", "s")), 1.0) == pytest.approx(2.0)
    d = differentiate(parse("7.5"))
    assert isinstance(d, Num) and d.value == 0.0


def test_third_derivative_of_polynomial():
    e = parse("x^4 - 2*x^3 + x")
    assert differentiate(e, 3).evaluate(2.0) == pytest.approx(24 * 2 - 12)


def test_array_evaluation_matches_scalar():
    e = parse("sin(x)*exp(-x) + x^3")
    xs = np.linspace(-1, 1, 7)
    assert np.array_equal(e.evaluate(xs), np.array([e.evaluate(float(x)) for x in xs]))


def test_constant_folding():
    assert isinstance(parse("2*3 + sin(0)"), Num)
    assert str(parse("x*1 + 0")) == "x"


def test_subs_composes():
    e = parse("x^2 + 1").subs(parse("x - 2"))
    assert e.evaluate(5.0) == 10.0


def test_invalid_variable_name():
    with pytest.raises(ValueError):
        parse("x", "sin")


# --- properties -----------------------------------------------------------------------

TEMPLATES = [
    "sin({a}*x) + {b}*x^2",
    "exp({a}*x)*cos(x)",
    "cosh({a}*x) - sinh({b}*x)",
    "ln(x^2 + {a}^2 + 1)",
    "sqrt(x^2 + {a}^2 + 1)",
    "tanh({a}*x + {b})",
    "x^3/({a}^2 + 1) - {b}*x",
    "1/(x^2 + {a}^2 + 1)",
    "(x^3 - 3/(x + 4))/12 * {a}",
    "sinh({a}*ln(x + 4)) + {b}",
    "abs({a}*x + 7) + x",
]

coefs = st.floats(-2, 2, allow_nan=False).map(lambda v: round(v, 3))
points = st.floats(-2, 2, allow_nan=False)


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(TEMPLATES), coefs, coefs, points)
def test_derivative_matches_central_difference(template, a, b, x):
    text = template.format(a=f"({a})", b=f"({b})")
    e = parse(text)
    h = 1e-5
    fd = (e.evaluate(x + h) - e.evaluate(x - h)) / (2 * h)
    exact = differentiate(e).evaluate(x)
    assert abs(exact - fd) <= 1e-6 * (1 + abs(exact))


@st.composite
def trees(draw, depth=0):
    leaf = st.one_of(st.just("x"), st.integers(0, 9).map(str),
                     st.floats(0.1, 9, allow_nan=False).map(lambda v: f"{v:.3f}"))
    if depth > 3:
        return draw(leaf)
    kind = draw(st.sampled_from(["leaf", "bin", "neg", "pow", "call"]))
    if kind == "leaf":
        return draw(leaf)
    if kind == "bin":
        op = draw(st.sampled_from("+-*/"))
        return f"({draw(trees(depth + 1))}) {op} ({draw(trees(depth + 1))})"
    if kind == "neg":
        return f"-({draw(trees(depth + 1))})"
    if kind == "pow":
        return f"({draw(trees(depth + 1))})^{draw(st.sampled_from(['2', '3', '-1', '0.5']))}"
    func = draw(st.sampled_from(["sin", "cos", "tanh", "exp", "sinh", "abs"]))
    return f"{func}({draw(trees(depth + 1))})"


GRID = np.linspace(-1.3, 1.7, 9)


def _values(e):
    out = []
    for x in GRID:
        try:
            out.append(e.evaluate(float(x)))
        except EvalDomainError:
            out.append(None)
    return out


@settings(max_examples=300, deadline=None)
@given(trees())
def test_print_parse_round_trip(text):
    first = parse(text)
    second = parse(str(first))
    assert str(second) == str(first)
    for u, v in zip(_values(first), _values(second)):
        if u is None or v is None:
            assert u is v
        elif math.isfinite(u):
            assert v == pytest.approx(u, rel=1e-12, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(TEMPLATES), st.sampled_from(TEMPLATES), coefs, coefs, points)
def test_differentiation_is_linear(t1, t2, k, a, x):
    f = parse(t1.format(a=f"({a})", b="1"))
    g = parse(t2.format(a="0.5", b=f"({a})"))
    combined = differentiate(parse(f"({k})*({f}) + ({g})"))
    separate = k * differentiate(f).evaluate(x) + differentiate(g).evaluate(x)
    assert combined.evaluate(x) == pytest.approx(separate, rel=1e-10, abs=1e-10)
