"""Expression and script parsing: grammar, spans, and print round-trips."""

import random

import pytest
from hypothesis import given, settings

from conftest import random_poly
from lctkit import (
    DEFAULT_VARIABLES,
    EISENSTEIN,
    ParseError,
    Polynomial,
    RATIONALS,
    ScriptError,
    format_poly,
    parse_poly,
    parse_script,
)
from lctkit.parser import (
    BlowupDirective,
    ChartDirective,
    OrbitDirective,
    StopDirective,
    SubstDirective,
    TranslateDirective,
)
from test_algebra import polys


def test_default_variables():
    assert DEFAULT_VARIABLES == ("x", "y", "z")


# -- expression grammar ------------------------------------------------------


def test_basic_forms():
    assert parse_poly("x^2 + y^2 + z^3") == parse_poly("z^3+y^2+x^2")
    assert parse_poly("-x") == -parse_poly("x")
    assert parse_poly("x - - y") == parse_poly("x + y")
    assert parse_poly("(x + y)^2") == parse_poly("x^2 + 2*x*y + y^2")
    assert parse_poly("(1+i)*(1-i)") == parse_poly("2")
    assert parse_poly("1/2 * x") == parse_poly("x") / 2
    assert parse_poly("x^0") == parse_poly("1")


def test_multiplication_must_be_explicit():
    with pytest.raises(ParseError) as info:
        parse_poly("2x")
    assert "'*'" in info.value.message


def test_generator_literal_follows_field():
    assert parse_poly("j^2", EISENSTEIN) == parse_poly("-1 - j", EISENSTEIN)
    with pytest.raises(ParseError):
        parse_poly("i", RATIONALS)


def test_custom_variables():
    f = parse_poly("u^2 + v^3", variables=("u", "v"))
    assert f.variables == ("u", "v")
    with pytest.raises(ParseError):
        parse_poly("x", variables=("u", "v"))


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("x^", 1, 3),
        ("x + ", 1, 5),
        ("(1+i", 1, 5),
        ("w^2", 1, 1),
        ("x^-2", 1, 3),
        ("", 1, 1),
        ("x**2", 1, 3),
    ],
)
def test_error_spans(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.span is not None
    assert (info.value.span.line, info.value.span.column) == (line, column)


def test_division_only_inside_rational_literals():
    assert parse_poly("3/4") == parse_poly("3") / 4
    with pytest.raises(ParseError):
        parse_poly("x/2")
    with pytest.raises(ParseError):
        parse_poly("x/y")
    with pytest.raises(ParseError):
        parse_poly("1/0")


# -- printing round-trips ----------------------------------------------------


def test_format_examples():
    cases = [
        "x^2 + y^2 + z^3",
        "0",
        "1",
        "-x",
        "x^2 + (1+i)*y",
        "(1/2)*x*y^3",
        "x^2 + y^2*z + z^4",
    ]
    for text in cases:
        f = parse_poly(text)
        assert parse_poly(format_poly(f)) == f


def test_round_trip_seeded_batch():
    rng = random.Random(2024)
    for _ in range(200):
        f = random_poly(rng)
        assert parse_poly(format_poly(f)) == f


@settings(max_examples=200, deadline=None, derandomize=True)
@given(polys())
def test_round_trip_property(f):
    assert parse_poly(format_poly(f)) == f


# -- resolution scripts ------------------------------------------------------


def test_script_directives():
    script = parse_script(
        "# resolve one chart\n"
        "blowup x y z\n"
        "chart z\n"
        "subst z := z + y*z^4\n"
        "translate z := z + i\n"
        "orbit 2\n"
        "stop\n"
    )
    kinds = [type(s) for s in script.steps]
    assert kinds == [
        BlowupDirective,
        ChartDirective,
        SubstDirective,
        TranslateDirective,
        OrbitDirective,
        StopDirective,
    ]
    blow, chart, subst, trans, orbit, _ = script.steps
    assert blow.center == ("x", "y", "z")
    assert chart.variable == "z"
    assert subst.expression == parse_poly("z + y*z^4")
    assert trans.value == parse_poly("i").constant_term
    assert orbit.count == 2


@pytest.mark.parametrize(
    "text,message_part",
    [
        ("chart z", "chart must immediately follow blowup"),
        ("blowup x", "at least 2 variables"),
        ("blowup x y z\nchart w", "not in the blowup center"),
        ("orbit 0", "at least 1"),
        ("orbit", "usage"),
        ("frobnicate x", "unknown command"),
        ("blowup x y y", "duplicate"),
    ],
)
def test_script_errors(text, message_part):
    with pytest.raises(ScriptError) as info:
        parse_script(text)
    assert message_part in info.value.message
    assert info.value.span is not None


def test_script_spans_use_line_numbers():
    with pytest.raises(ScriptError) as info:
        parse_script("blowup x y z\nchart z\nchart y")
    assert info.value.span.line == 3


def test_empty_polynomial_rejected_in_scripts():
    with pytest.raises(ParseError):
        parse_script("subst z :=")
