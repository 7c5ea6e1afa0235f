"""Expression grammar, canonical formatter, and the resolution script DSL.

Grammar (whitespace insensitive, multiplication always explicit):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | power
    power  := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

'^' binds tighter than unary minus, so -x^2 is -(x^2). '/' occurs only
inside rational literals. NAME resolves to a session variable or to the
field generator; anything else is an error with a source span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebra import (
    GAUSS,
    FieldElement,
    NumberField,
    Polynomial,
    format_element,
)
from .errors import ParseError, ScriptError

DEFAULT_VARIABLES = ("x", "y", "z")


@dataclass(frozen=True)
class SourceSpan:
    """1-based position of a token inside the input text."""

    line: int
    column: int
    length: int


@dataclass(frozen=True)
class _Token:
    kind: str  # INT NAME OP EOF
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, max(1, len(self.text)))


def _tokenize(text: str, line: int = 1, column: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
            continue
        if ch.isspace():
            column += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, column))
            column += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], line, column))
            column += j - i
            i = j
            continue
        if text[i : i + 2] == ":=":
            tokens.append(_Token("OP", ":=", line, column))
            column += 2
            i += 2
            continue
        if ch in "+-*/^()":
            tokens.append(_Token("OP", ch, line, column))
            column += 1
            i += 1
            continue
        raise ParseError(
            f"unexpected character {ch!r}", SourceSpan(line, column, 1)
        )
    tokens.append(_Token("EOF", "", line, column))
    return tokens


class _Session:
    """Resolves names against the session's variables and field generator."""

    def __init__(self, field: NumberField, variables: Sequence[str]):
        variables = tuple(variables)
        if len(variables) < 1:
            raise ParseError("at least one variable is required")
        if len(set(variables)) != len(variables):
            raise ParseError(f"duplicate variables in {variables}")
        for v in variables:
            if not v.isidentifier():
                raise ParseError(f"bad variable name {v!r}")
        if field.generator_name in variables:
            raise ParseError(
                f"field generator {field.generator_name!r} collides with a variable"
            )
        self.field = field
        self.variables = variables

    def resolve(self, name: str, span: SourceSpan) -> Polynomial:
        if name in self.variables:
            return Polynomial.variable(self.field, self.variables, name)
        if name == self.field.generator_name:
            return Polynomial.constant(
                self.field, self.variables, self.field.generator()
            )
        raise ParseError(f"unknown symbol {name!r}", span)


class _ExprParser:
    def __init__(self, tokens: list[_Token], session: _Session):
        self.tokens = tokens
        self.pos = 0
        self.session = session

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect_op(self, text: str) -> _Token:
        tok = self.current
        if tok.kind == "OP" and tok.text == text:
            return self._advance()
        raise ParseError(f"expected {text!r}", tok.span)

    def parse_expr(self) -> Polynomial:
        result = self.parse_term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self._advance().text
            rhs = self.parse_term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while self.current.kind == "OP" and self.current.text == "*":
            self._advance()
            result = result * self.parse_factor()
        return result

    def parse_factor(self) -> Polynomial:
        if self.current.kind == "OP" and self.current.text == "-":
            self._advance()
            return -self.parse_factor()
        return self.parse_power()

    def parse_power(self) -> Polynomial:
        base = self.parse_atom()
        if self.current.kind == "OP" and self.current.text == "^":
            self._advance()
            tok = self.current
            if tok.kind != "INT":
                raise ParseError(
                    "exponent must be a non-negative integer literal", tok.span
                )
            self._advance()
            return base ** int(tok.text)
        return base

    def parse_atom(self) -> Polynomial:
        tok = self.current
        if tok.kind == "INT":
            self._advance()
            value = Fraction(int(tok.text))
            if self.current.kind == "OP" and self.current.text == "/":
                self._advance()
                den = self.current
                if den.kind != "INT":
                    raise ParseError("expected an integer denominator", den.span)
                self._advance()
                if int(den.text) == 0:
                    raise ParseError("zero denominator", den.span)
                value = value / int(den.text)
            return Polynomial.constant(
                self.session.field, self.session.variables, value
            )
        if tok.kind == "NAME":
            self._advance()
            return self.session.resolve(tok.text, tok.span)
        if tok.kind == "OP" and tok.text == "(":
            self._advance()
            inner = self.parse_expr()
            self._expect_op(")")
            return inner
        if tok.kind == "EOF":
            raise ParseError("unexpected end of expression", tok.span)
        raise ParseError(f"unexpected {tok.text!r}", tok.span)

    def expect_done(self) -> None:
        tok = self.current
        if tok.kind != "EOF":
            hint = ""
            if tok.kind in ("NAME", "INT"):
                hint = " (multiplication must be written with '*')"
            raise ParseError(f"unexpected {tok.text!r}{hint}", tok.span)


def parse_poly(
    text: str,
    field: NumberField = GAUSS,
    variables: Sequence[str] = DEFAULT_VARIABLES,
) -> Polynomial:
    """Parse an expression into an exact Polynomial over the session ring."""
    session = _Session(field, variables)
    parser = _ExprParser(_tokenize(text), session)
    if parser.current.kind == "EOF":
        raise ParseError("empty expression", parser.current.span)
    result = parser.parse_expr()
    parser.expect_done()
    return result


def format_poly(poly: Polynomial) -> str:
    """Canonical textual form: terms in ascending total degree, ties broken
    by reverse-lexicographic exponent order; parse_poly round-trips it."""
    if poly.is_zero():
        return "0"
    rendered: list[tuple[str, str]] = []  # (sign, body) with sign '+' or '-'
    for exps, coeff in poly.sorted_terms():
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(poly.variables, exps)
            if e > 0
        )
        if coeff.is_rational:
            q = coeff.as_fraction()
            sign = "-" if q < 0 else "+"
            mag = abs(q)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
        else:
            # Non-rational coefficients keep their own signs inside parens.
            sign = "+"
            body = f"({format_element(coeff)})"
            if mono:
                body = f"{body}*{mono}"
        rendered.append((sign, body))
    first_sign, first_body = rendered[0]
    parts = [first_body if first_sign == "+" else f"-{first_body}"]
    for sign, body in rendered[1:]:
        parts.append(f"{sign} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Resolution script DSL.


@dataclass(frozen=True)
class BlowupDirective:
    center: tuple[str, ...]
    span: SourceSpan


@dataclass(frozen=True)
class ChartDirective:
    variable: str
    span: SourceSpan


@dataclass(frozen=True)
class SubstDirective:
    """Introduce a new coordinate for `variable`.

    The right-hand side states what the NEW coordinate equals in terms of
    the current ones (e.g. `subst z := z + y*z^4` introduces Z = z + y*z^4);
    the engine rewrites the strict transform in the new coordinate.
    """

    variable: str
    expression: Polynomial
    span: SourceSpan


@dataclass(frozen=True)
class TranslateDirective:
    """Recenter on the point `variable = value`.

    `translate z := z - 1` replaces z by z - 1 in the strict transform, so
    the new origin is the old point z = -1. Note the direction is the
    opposite of subst: here the right-hand side is what gets substituted
    for the variable.
    """

    variable: str
    value: FieldElement
    span: SourceSpan


@dataclass(frozen=True)
class OrbitDirective:
    """Declare that the analysis below this point holds at `count` conjugate
    points; pole candidates found below are replicated accordingly."""

    count: int
    span: SourceSpan


@dataclass(frozen=True)
class StopDirective:
    span: SourceSpan


ScriptStep = Union[
    BlowupDirective,
    ChartDirective,
    SubstDirective,
    TranslateDirective,
    OrbitDirective,
    StopDirective,
]


@dataclass(frozen=True)
class ResolutionScript:
    steps: tuple[ScriptStep, ...]


def parse_script(
    text: str,
    field: NumberField = GAUSS,
    variables: Sequence[str] = DEFAULT_VARIABLES,
) -> ResolutionScript:
    """Parse the line-oriented script DSL.

    One step per line: `blowup x y z`, `chart z`, `subst z := z + y*z^4`,
    `translate z := z - 1`, `orbit 2`, `stop`. Blank lines and text after
    '#' are ignored.
    """
    session = _Session(field, variables)
    steps: list[ScriptStep] = []
    last_blowup: Optional[BlowupDirective] = None
    stopped = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = _tokenize(line, line=line_no, column=1)
        head = tokens[0]
        if head.kind != "NAME":
            raise ScriptError(f"expected a script command", head.span)
        if stopped:
            raise ScriptError("no steps allowed after stop", head.span)
        command = head.text
        rest = tokens[1:]

        if command == "blowup":
            names = []
            for tok in rest[:-1]:
                if tok.kind != "NAME" or tok.text not in session.variables:
                    raise ScriptError(
                        f"blowup center must list session variables", tok.span
                    )
                names.append(tok.text)
            if rest[-1].kind != "EOF":
                raise ScriptError("unexpected trailing input", rest[-1].span)
            if len(set(names)) != len(names):
                raise ScriptError("duplicate variable in blowup center", head.span)
            if len(names) < 2:
                raise ScriptError(
                    "blowup center needs at least 2 variables", head.span
                )
            step = BlowupDirective(tuple(names), head.span)
            steps.append(step)
            last_blowup = step
            continue

        if command == "chart":
            if last_blowup is None or not (
                steps and steps[-1] is last_blowup
            ):
                raise ScriptError("chart must immediately follow blowup", head.span)
            if (
                len(rest) != 2
                or rest[0].kind != "NAME"
                or rest[1].kind != "EOF"
            ):
                raise ScriptError("usage: chart VARIABLE", head.span)
            var = rest[0].text
            if var not in last_blowup.center:
                raise ScriptError(
                    f"chart variable {var!r} not in the blowup center", rest[0].span
                )
            steps.append(ChartDirective(var, head.span))
            continue

        if command in ("subst", "translate"):
            if len(rest) < 3 or rest[0].kind != "NAME":
                raise ScriptError(f"usage: {command} VARIABLE := EXPRESSION", head.span)
            var_tok = rest[0]
            if var_tok.text not in session.variables:
                raise ScriptError(f"unknown variable {var_tok.text!r}", var_tok.span)
            if not (rest[1].kind == "OP" and rest[1].text == ":="):
                raise ScriptError("expected ':='", rest[1].span)
            expr_parser = _ExprParser(rest[2:], session)
            expression = expr_parser.parse_expr()
            expr_parser.expect_done()
            if command == "subst":
                steps.append(SubstDirective(var_tok.text, expression, head.span))
            else:
                var_poly = Polynomial.variable(
                    session.field, session.variables, var_tok.text
                )
                shift = expression - var_poly
                if shift.variables_present():
                    raise ScriptError(
                        "translate right-hand side must be the variable "
                        "plus a field constant",
                        head.span,
                    )
                steps.append(
                    TranslateDirective(var_tok.text, shift.constant_term, head.span)
                )
            continue

        if command == "orbit":
            if (
                len(rest) != 2
                or rest[0].kind != "INT"
                or rest[1].kind != "EOF"
            ):
                raise ScriptError("usage: orbit COUNT", head.span)
            count = int(rest[0].text)
            if count < 1:
                raise ScriptError("orbit count must be at least 1", rest[0].span)
            steps.append(OrbitDirective(count, head.span))
            continue

        if command == "stop":
            if rest[0].kind != "EOF":
                raise ScriptError("stop takes no arguments", rest[0].span)
            steps.append(StopDirective(head.span))
            stopped = True
            continue

        raise ScriptError(f"unknown command {command!r}", head.span)

    # A blowup not followed by a chart is allowed only as the final step
    # (all children then resolve automatically).
    for i, step in enumerate(steps[:-1]):
        if isinstance(step, BlowupDirective) and not isinstance(
            steps[i + 1], ChartDirective
        ):
            raise ScriptError(
                "blowup must be followed by chart (or end the script)",
                steps[i + 1].span,
            )
    return ResolutionScript(tuple(steps))
