"""Blow-up charts with exact bookkeeping of the exceptional exponents (k),
Jacobian exponents (h), and strict transforms, plus the resolution driver.

Every chart stores, for each variable currently carrying an exceptional
divisor, the order k of the total transform and the order h of the Jacobian
determinant along it. The defining identity

    f(map_from_root) = (prod of e**k_e) * strict

is asserted exactly after every step while a polynomial chart map exists
(it is checked stepwise, and up to a constant factor, once a nonlinear
coordinate rewrite enters the path; see apply_affine).

Coordinate-change directions: `translate` substitutes its right-hand side
for the variable (recentring the chart on another point), while `subst`
declares a new coordinate equal to an expression in the old ones and
rewrites the strict transform in it. The two run in opposite directions;
each docstring states its own.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence, Union

from .algebra import FieldElement, NumberField, Polynomial
from .errors import (
    ChartError,
    FactorizationDestroyedError,
    InternalInconsistencyError,
    ScriptError,
    UnitInputError,
    ZeroPolynomialError,
)
from .parser import (
    BlowupDirective,
    ChartDirective,
    OrbitDirective,
    ResolutionScript,
    ScriptStep,
    StopDirective,
    SubstDirective,
    TranslateDirective,
    format_poly,
)


class ChartStatus(enum.Enum):
    OPEN = "Open"
    UNIT_STRICT = "UnitStrict"
    SMOOTH_STRICT = "SmoothStrict"
    DEPTH_LIMIT = "DepthLimit"


@dataclass(frozen=True)
class BlowupStep:
    """One origin blow-up: this chart covers the direction of chart_variable.
    divisor identifies the new exceptional divisor; siblings share it."""

    center: tuple[str, ...]
    chart_variable: str
    divisor: str

    @property
    def label(self) -> str:
        return f"U_{self.chart_variable}"


@dataclass(frozen=True)
class TranslateStep:
    """Recentring: variable was replaced by variable + value. When localized
    is set, the variable carried an exceptional divisor that the move pushed
    away from the origin; its monomial factor was absorbed into strict as a
    unit and its k/h entries dropped."""

    variable: str
    value: FieldElement
    localized: bool

    @property
    def label(self) -> str:
        return f"T_{self.variable}"


@dataclass(frozen=True)
class RewriteStep:
    """Coordinate rewrite: the new coordinate equals `expression` in the old
    ones. jacobian_unit is d(expression)/d(variable), a unit at the origin.
    exact_inverse marks the affine case, whose inverse stays polynomial."""

    variable: str
    expression: Polynomial
    jacobian_unit: Polynomial
    exact_inverse: bool

    @property
    def label(self) -> str:
        return f"S_{self.variable}"


PathStep = Union[BlowupStep, TranslateStep, RewriteStep]


@dataclass(frozen=True)
class Chart:
    field: NumberField
    variables: tuple[str, ...]
    steps: tuple[PathStep, ...]
    exceptional: tuple[str, ...]
    divisor_ids: Mapping[str, str]
    f_exponents: Mapping[str, int]
    jac_exponents: Mapping[str, int]
    strict: Polynomial
    status: ChartStatus
    map_from_root: Optional[Mapping[str, Polynomial]]
    orbit_factor: int = 1

    @property
    def depth(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, BlowupStep))

    @property
    def path(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.steps)

    def path_text(self) -> str:
        return "/".join(self.path) or "root"


def _classify(strict: Polynomial) -> ChartStatus:
    # SmoothStrict accepts any nonzero gradient at the origin, including one
    # pointing along an exceptional divisor. That is a deliberately weak
    # termination certificate (the strict transform may still be tangent to
    # the divisor), which is why smooth leaves leave the result uncertified.
    if strict.is_unit_at_origin():
        return ChartStatus.UNIT_STRICT
    if any(bool(strict.partial(v).constant_term) for v in strict.variables):
        return ChartStatus.SMOOTH_STRICT
    return ChartStatus.OPEN


def classify(chart: Chart) -> Chart:
    """Recompute the status from the strict transform (DepthLimit is a driver
    annotation and is not produced here)."""
    return replace(chart, status=_classify(chart.strict))


def _assert_content_free(chart: Chart) -> None:
    for e in chart.exceptional:
        if chart.strict.is_zero() or chart.strict.order_in(e) != 0:
            raise FactorizationDestroyedError(
                f"strict transform has content in exceptional variable {e!r} "
                f"at {chart.path_text()}"
            )


def _monomial_times_strict(chart: Chart) -> Polynomial:
    total = chart.strict
    for e in chart.exceptional:
        k = chart.f_exponents[e]
        if k:
            total = total * Polynomial.variable(chart.field, chart.variables, e) ** k
    return total


def _assert_step_identity(
    parent: Chart, child: Chart, substitution: Mapping[str, Polynomial]
) -> None:
    """The total transform must pull back exactly across one step."""
    lhs = _monomial_times_strict(parent).substitute(dict(substitution))
    rhs = _monomial_times_strict(child)
    if lhs != rhs:
        raise InternalInconsistencyError(
            f"total transform identity failed at {child.path_text()}"
        )


def make_root_chart(f: Polynomial) -> Chart:
    """Start a resolution: extract any monomial factor of f itself (those
    coordinate divisors count as candidates with h = 0) and classify."""
    if f.is_zero():
        raise ZeroPolynomialError("cannot resolve the zero polynomial")
    if f.is_unit_at_origin():
        raise UnitInputError("resolution requires f(0) = 0")
    content, strict = f.coordinate_content()
    exceptional = tuple(v for v in f.variables if content.get(v, 0) > 0)
    chart = Chart(
        field=f.field,
        variables=f.variables,
        steps=(),
        exceptional=exceptional,
        divisor_ids={v: f"root/{v}" for v in exceptional},
        f_exponents={v: content[v] for v in exceptional},
        jac_exponents={v: 0 for v in exceptional},
        strict=strict,
        status=_classify(strict),
        map_from_root={
            v: Polynomial.variable(f.field, f.variables, v) for v in f.variables
        },
    )
    _assert_content_free(chart)
    return chart


def blowup_origin(chart: Chart, center: Sequence[str]) -> tuple[Chart, ...]:
    """Blow up the origin of the chart along the given center variables.

    Returns one child chart per center variable v; in that child every other
    center variable w is replaced by w*v and {v = 0} is the new exceptional
    divisor, shared (same divisor id) across the siblings.
    """
    if chart.status is not ChartStatus.OPEN:
        raise ChartError(
            f"blow-up of a chart with status {chart.status.value} at "
            f"{chart.path_text()}"
        )
    center = tuple(center)
    unknown = set(center) - set(chart.variables)
    if unknown:
        raise ChartError(f"center contains unknown variables {sorted(unknown)}")
    if len(set(center)) != len(center):
        raise ChartError("center variables must be distinct")
    if len(center) < 2:
        raise ChartError("center must contain at least 2 variables")
    center = tuple(v for v in chart.variables if v in center)
    s = len(center)
    divisor = f"E@{chart.path_text()}"
    children = []
    for v in center:
        v_poly = Polynomial.variable(chart.field, chart.variables, v)
        substitution = {
            w: Polynomial.variable(chart.field, chart.variables, w) * v_poly
            for w in center
            if w != v
        }
        pulled = chart.strict.substitute(substitution)
        c, strict_child = pulled.monomial_content(v)
        if c < 1:
            raise InternalInconsistencyError(
                f"blow-up produced no exceptional order in chart U_{v}"
            )
        k = dict(chart.f_exponents)
        h = dict(chart.jac_exponents)
        k[v] = k.get(v, 0) + sum(k.get(w, 0) for w in center if w != v) + c
        h[v] = h.get(v, 0) + sum(h.get(w, 0) for w in center if w != v) + (s - 1)
        divisor_ids = dict(chart.divisor_ids)
        divisor_ids[v] = divisor
        exceptional = tuple(
            x for x in chart.variables if x == v or x in chart.exceptional
        )
        map_from_root = None
        if chart.map_from_root is not None:
            map_from_root = {
                x: p.substitute(substitution)
                for x, p in chart.map_from_root.items()
            }
        child = Chart(
            field=chart.field,
            variables=chart.variables,
            steps=chart.steps + (BlowupStep(center, v, divisor),),
            exceptional=exceptional,
            divisor_ids=divisor_ids,
            f_exponents=k,
            jac_exponents=h,
            strict=strict_child,
            status=_classify(strict_child),
            map_from_root=map_from_root,
            orbit_factor=1,
        )
        _assert_content_free(child)
        _assert_step_identity(chart, child, substitution)
        children.append(child)
    new_ks = {child.f_exponents[child.steps[-1].chart_variable] for child in children}
    new_hs = {child.jac_exponents[child.steps[-1].chart_variable] for child in children}
    if len(new_ks) != 1 or len(new_hs) != 1:
        raise InternalInconsistencyError(
            f"sibling charts disagree on the new divisor: k in {new_ks}, h in {new_hs}"
        )
    return tuple(children)


def translate(chart: Chart, var: str, value) -> Chart:
    """Recentre the chart on the point var = value.

    The variable is replaced by var + value in the strict transform, so the
    new origin is the old point var = value. Translating a variable that
    carries an exceptional divisor is allowed only for value != 0: the
    divisor then misses the new origin, its monomial factor (var + value)^k
    is absorbed into the strict transform as a unit, and its k/h entries are
    dropped from the chart.
    """
    value = chart.field.coerce(value)
    if var not in chart.variables:
        raise ChartError(f"unknown variable {var!r}")
    var_poly = Polynomial.variable(chart.field, chart.variables, var)
    shifted = var_poly + Polynomial.constant(chart.field, chart.variables, value)
    substitution = {var: shifted}
    localized = var in chart.exceptional
    if localized and value.is_zero():
        raise ChartError(
            f"translation of exceptional variable {var!r} by 0 would keep the "
            "divisor through the origin; the monomial factorization cannot "
            "survive a translation along it"
        )
    strict_new = chart.strict.substitute(substitution)
    exceptional = chart.exceptional
    k = dict(chart.f_exponents)
    h = dict(chart.jac_exponents)
    divisor_ids = dict(chart.divisor_ids)
    if localized:
        strict_new = shifted ** k[var] * strict_new
        exceptional = tuple(e for e in exceptional if e != var)
        del k[var]
        del h[var]
        del divisor_ids[var]
    map_from_root = None
    if chart.map_from_root is not None:
        map_from_root = {
            x: p.substitute(substitution) for x, p in chart.map_from_root.items()
        }
    child = Chart(
        field=chart.field,
        variables=chart.variables,
        steps=chart.steps + (TranslateStep(var, value, localized),),
        exceptional=exceptional,
        divisor_ids=divisor_ids,
        f_exponents=k,
        jac_exponents=h,
        strict=strict_new,
        status=_classify(strict_new),
        map_from_root=map_from_root,
        orbit_factor=1,
    )
    _assert_content_free(child)
    _assert_step_identity(chart, child, substitution)
    return child


def _rewrite_in_new_coordinate(
    f: Polynomial, var: str, expression: Polynomial, c1: FieldElement
) -> Polynomial:
    """Find F with F(var := expression) = f, treating `var` in F as the new
    coordinate. Exists iff f is polynomial in the new coordinate; the greedy
    triangular solve below is exact and its failure is a correct negative."""
    if f.is_zero():
        return f
    var_poly = Polynomial.variable(f.field, f.variables, var)
    bound = f.degree_in(var)
    result = Polynomial.zero(f.field, f.variables)
    residual = f
    last_order = -1
    while not residual.is_zero():
        m = residual.order_in(var)
        if m > bound or m <= last_order:
            raise ChartError(
                f"the strict transform is not polynomial in the new "
                f"coordinate {var!r} = {format_poly(expression)}"
            )
        last_order = m
        coeff = residual.coefficient_of(var, m) / c1**m
        result = result + coeff * var_poly**m
        residual = residual - coeff * expression**m
    return result


def apply_affine(chart: Chart, var: str, expression: Polynomial) -> Chart:
    """Rewrite the chart in a new coordinate for `var`.

    The expression states what the NEW coordinate equals in terms of the
    current ones and must fix the origin and be invertible there. Two shapes
    are supported exactly:

    - affine in var (c*var + q with c a nonzero constant, q free of var):
      inverted by the polynomial map var := (var - q)/c, so the chart map
      from the root survives;
    - triangular (every term contains var, unit coefficient on var^1):
      the strict transform is rewritten by exact decomposition and the chart
      map is dropped (the inverse is only a power series).

    Either way k and h are unchanged, the Jacobian factor of the rewrite is
    a unit recorded on the step, and the monomial factorization is
    re-checked afterwards (FactorizationDestroyedError on mismatch).
    """
    if var not in chart.variables:
        raise ChartError(f"unknown variable {var!r}")
    chart.strict._check_ring(expression)
    if expression.is_zero():
        raise ChartError("substitution expression must be nonzero")
    if expression.constant_term:
        raise ChartError("substitution must fix the origin")
    linear_coeff = expression.coefficient_of(var, 1)
    c1 = linear_coeff.constant_term
    if not c1:
        raise ChartError(
            f"substitution for {var!r} has no unit linear part; it is not "
            "invertible near the origin"
        )
    affine = (
        expression.degree_in(var) == 1 and not linear_coeff.variables_present()
    )
    var_poly = Polynomial.variable(chart.field, chart.variables, var)
    if affine:
        offset = expression.coefficient_of(var, 0)
        if var in chart.exceptional and not offset.is_zero():
            raise ChartError(
                f"substitution moves the exceptional divisor {{{var} = 0}} "
                "off the coordinate hyperplane"
            )
        inverse = (var_poly - offset) / c1
        substitution = {var: inverse}
        strict_new = chart.strict.substitute(substitution)
        map_from_root = None
        if chart.map_from_root is not None:
            map_from_root = {
                x: p.substitute(substitution)
                for x, p in chart.map_from_root.items()
            }
        jacobian_unit = Polynomial.constant(chart.field, chart.variables, c1)
        step = RewriteStep(var, expression, jacobian_unit, True)
    else:
        if expression.order_in(var) < 1:
            raise ChartError(
                f"substitution for {var!r} mixes in terms free of it and is "
                "not affine; it cannot be inverted exactly"
            )
        strict_new = _rewrite_in_new_coordinate(chart.strict, var, expression, c1)
        map_from_root = None
        jacobian_unit = expression.partial(var)
        step = RewriteStep(var, expression, jacobian_unit, False)
    child = Chart(
        field=chart.field,
        variables=chart.variables,
        steps=chart.steps + (step,),
        exceptional=chart.exceptional,
        divisor_ids=dict(chart.divisor_ids),
        f_exponents=dict(chart.f_exponents),
        jac_exponents=dict(chart.jac_exponents),
        strict=strict_new,
        status=ChartStatus.OPEN,
        map_from_root=map_from_root,
        orbit_factor=1,
    )
    child = classify(child)
    _assert_content_free(child)
    # The defining property of the rewrite, checked exactly either way.
    if strict_new.substitute({var: expression}) != chart.strict:
        raise InternalInconsistencyError(
            f"coordinate rewrite of {var!r} failed to reproduce the strict "
            "transform"
        )
    return child


# ---------------------------------------------------------------------------
# Jacobian verification.


def _poly_determinant(rows: list[list[Polynomial]]) -> Polynomial:
    """Cofactor expansion along the first row; exact and independent of the
    additive bookkeeping it is used to audit."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    first = rows[0]
    total = None
    for j in range(n):
        entry = first[j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = entry * _poly_determinant(minor)
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    if total is None:
        zero_ring = rows[0][0]
        return Polynomial.zero(zero_ring.field, zero_ring.variables)
    return total


def _step_substitution(chart_field, variables, step: PathStep):
    """The map (old coordinates as polynomials in new coordinates) of one step."""
    out = {}
    if isinstance(step, BlowupStep):
        v_poly = Polynomial.variable(chart_field, variables, step.chart_variable)
        for w in step.center:
            if w != step.chart_variable:
                out[w] = Polynomial.variable(chart_field, variables, w) * v_poly
    elif isinstance(step, TranslateStep):
        out[step.variable] = Polynomial.variable(
            chart_field, variables, step.variable
        ) + Polynomial.constant(chart_field, variables, step.value)
    else:
        # Old `var` in terms of the new coordinate is only a power series in
        # general; the rewrite's Jacobian is handled from `expression`
        # directly in the stepwise audit.
        out[step.variable] = step.expression
    return out


def _verify_stepwise(chart: Chart) -> bool:
    """Replay the path, recomputing each step's Jacobian determinant by
    cofactor expansion and accumulating divisor exponents independently."""
    field = chart.field
    variables = chart.variables
    exponents: dict[str, int] = {}
    for step in chart.steps:
        if isinstance(step, BlowupStep):
            v = step.chart_variable
            substitution = _step_substitution(field, variables, step)
            rows = []
            for old in variables:
                image = substitution.get(
                    old, Polynomial.variable(field, variables, old)
                )
                rows.append([image.partial(new) for new in variables])
            det = _poly_determinant(rows)
            if det.is_zero():
                return False
            c, residual = det.monomial_content(v)
            if not residual.is_unit_at_origin() or residual.variables_present():
                return False
            pulled = sum(
                exponents.get(w, 0) for w in step.center if w != v
            )
            exponents[v] = exponents.get(v, 0) + c + pulled
        elif isinstance(step, TranslateStep):
            if step.localized:
                if step.value.is_zero():
                    return False
                exponents.pop(step.variable, None)
            # A pure translation has Jacobian 1 and moves no divisor order.
        else:
            unit = step.expression.partial(step.variable)
            if unit != step.jacobian_unit:
                return False
            if not unit.is_unit_at_origin():
                return False
    recorded = {v: h for v, h in chart.jac_exponents.items() if h != 0}
    accumulated = {v: h for v, h in exponents.items() if h != 0}
    return recorded == accumulated


def _verify_composed(chart: Chart) -> bool:
    """Cofactor-expand the Jacobian matrix of the composed chart map and
    check it is a unit times the recorded exceptional monomial."""
    assert chart.map_from_root is not None
    rows = [
        [chart.map_from_root[old].partial(new) for new in chart.variables]
        for old in chart.variables
    ]
    det = _poly_determinant(rows)
    if det.is_zero():
        return False
    residual = det
    for e in chart.exceptional:
        c, residual = residual.monomial_content(e)
        if c != chart.jac_exponents[e]:
            return False
    return residual.is_unit_at_origin()


def verify_jacobian(chart: Chart) -> bool:
    """True iff an independent Jacobian computation reproduces the recorded
    h-exponents: the composed-map determinant when the polynomial chart map
    exists, and a stepwise determinant replay always."""
    if chart.map_from_root is not None and not _verify_composed(chart):
        return False
    return _verify_stepwise(chart)


# ---------------------------------------------------------------------------
# Resolution driver.


@dataclass(frozen=True)
class Auto:
    max_depth: int = 24


@dataclass(frozen=True)
class Scripted:
    script: ResolutionScript
    max_depth: int = 24


Strategy = Union[Auto, Scripted]


@dataclass(frozen=True)
class TreeNode:
    chart: Chart
    children: tuple["TreeNode", ...]

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ResolutionTree:
    root_polynomial: Polynomial
    root: TreeNode
    strategy_log: tuple[str, ...]

    def nodes(self) -> Iterator[TreeNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> Iterator[TreeNode]:
        return (node for node in self.nodes() if node.is_leaf)

    def has_depth_limit(self) -> bool:
        return any(
            leaf.chart.status is ChartStatus.DEPTH_LIMIT for leaf in self.leaves()
        )


def _auto_center(chart: Chart) -> Optional[tuple[str, ...]]:
    """Blow-up center for the automatic strategy: every variable the strict
    transform actually involves, falling back to all non-exceptional
    variables when fewer than two appear. None when no valid center exists."""
    involved = chart.strict.variables_present()
    if len(involved) >= 2:
        return involved
    fallback = tuple(v for v in chart.variables if v not in chart.exceptional)
    if len(fallback) >= 2:
        return fallback
    return None


def _depth_limited(chart: Chart, log: list[str], reason: str) -> TreeNode:
    log.append(f"[{chart.path_text()}] {reason}")
    return TreeNode(replace(chart, status=ChartStatus.DEPTH_LIMIT), ())


def _auto_expand(chart: Chart, max_depth: int, log: list[str]) -> TreeNode:
    if chart.status is not ChartStatus.OPEN:
        return TreeNode(chart, ())
    if chart.depth >= max_depth:
        return _depth_limited(chart, log, f"depth limit {max_depth} reached")
    center = _auto_center(chart)
    if center is None:
        return _depth_limited(chart, log, "no valid origin center")
    log.append(f"[{chart.path_text()}] blowup center ({', '.join(center)})")
    children = blowup_origin(chart, center)
    return TreeNode(
        chart, tuple(_auto_expand(c, max_depth, log) for c in children)
    )


def _scripted_expand(
    chart: Chart,
    steps: tuple[ScriptStep, ...],
    index: int,
    max_depth: int,
    log: list[str],
) -> TreeNode:
    while True:
        if index >= len(steps):
            return _auto_expand(chart, max_depth, log)
        step = steps[index]

        if isinstance(step, OrbitDirective):
            log.append(
                f"[{chart.path_text()}] orbit {step.count}: candidates below "
                "replicated"
            )
            chart = replace(chart, orbit_factor=chart.orbit_factor * step.count)
            index += 1
            continue

        if isinstance(step, StopDirective):
            if chart.status is ChartStatus.OPEN:
                return _depth_limited(chart, log, "stopped by script while open")
            return TreeNode(chart, ())

        if isinstance(step, SubstDirective):
            log.append(
                f"[{chart.path_text()}] subst {step.variable} := "
                f"{format_poly(step.expression)}"
            )
            rewritten = apply_affine(chart, step.variable, step.expression)
            jac = rewritten.steps[-1].jacobian_unit
            log.append(
                f"[{chart.path_text()}] rewrite Jacobian factor "
                f"{format_poly(jac)} (unit; h unchanged)"
            )
            child = _scripted_expand(rewritten, steps, index + 1, max_depth, log)
            return TreeNode(chart, (child,))

        if isinstance(step, TranslateDirective):
            log.append(
                f"[{chart.path_text()}] translate {step.variable} to the point "
                f"{step.variable} = {step.value}"
            )
            moved = translate(chart, step.variable, step.value)
            moved_node = _scripted_expand(moved, steps, index + 1, max_depth, log)
            # The untranslated origin still needs its own analysis; it
            # continues automatically as sibling branches.
            origin_children: tuple[TreeNode, ...] = ()
            if chart.status is ChartStatus.OPEN:
                if chart.depth >= max_depth:
                    origin_children = (
                        _depth_limited(chart, log, f"depth limit {max_depth} reached"),
                    )
                else:
                    center = _auto_center(chart)
                    if center is not None:
                        log.append(
                            f"[{chart.path_text()}] blowup center "
                            f"({', '.join(center)}) for the origin branch"
                        )
                        origin_children = tuple(
                            _auto_expand(c, max_depth, log)
                            for c in blowup_origin(chart, center)
                        )
            return TreeNode(chart, origin_children + (moved_node,))

        if isinstance(step, BlowupDirective):
            if chart.status is not ChartStatus.OPEN:
                raise ScriptError(
                    f"blowup requested on a {chart.status.value} chart at "
                    f"{chart.path_text()}",
                    step.span,
                )
            if chart.depth >= max_depth:
                return _depth_limited(chart, log, f"depth limit {max_depth} reached")
            log.append(
                f"[{chart.path_text()}] blowup center ({', '.join(step.center)})"
            )
            children = blowup_origin(chart, step.center)
            follow: Optional[str] = None
            if index + 1 < len(steps) and isinstance(steps[index + 1], ChartDirective):
                follow = steps[index + 1].variable
            nodes = []
            for child in children:
                if follow is not None and child.steps[-1].chart_variable == follow:
                    nodes.append(
                        _scripted_expand(child, steps, index + 2, max_depth, log)
                    )
                else:
                    nodes.append(_auto_expand(child, max_depth, log))
            return TreeNode(chart, tuple(nodes))

        if isinstance(step, ChartDirective):
            raise ScriptError("chart must immediately follow blowup", step.span)

        raise ScriptError(f"unsupported script step {step!r}", getattr(step, "span", None))


def resolve(f: Polynomial, strategy: Strategy) -> ResolutionTree:
    """Build the resolution tree for f (which must vanish at the origin).

    Auto repeatedly blows up the origin of every Open chart; Scripted follows
    its script along one path while every sibling resolves automatically.
    Charts still Open when the depth budget runs out are flagged DepthLimit,
    never dropped.
    """
    root = make_root_chart(f)
    log: list[str] = [
        f"[root] content {dict(root.f_exponents)!r} strict "
        f"{format_poly(root.strict)}"
    ]
    if isinstance(strategy, Auto):
        node = _auto_expand(root, strategy.max_depth, log)
    elif isinstance(strategy, Scripted):
        node = _scripted_expand(
            root, strategy.script.steps, 0, strategy.max_depth, log
        )
    else:
        raise ChartError(f"unknown strategy {strategy!r}")
    for leaf in ResolutionTree(f, node, ()).leaves():
        log.append(f"[{leaf.chart.path_text()}] leaf {leaf.chart.status.value}")
    return ResolutionTree(f, node, tuple(log))


def total_transform_identity(tree: ResolutionTree, chart: Chart) -> bool:
    """Exact global check f(map) = monomial * strict for charts that kept a
    polynomial map; tolerates one overall constant factor, which is what a
    constant-Jacobian rescaling legitimately introduces."""
    if chart.map_from_root is None:
        return True
    lhs = tree.root_polynomial.substitute(dict(chart.map_from_root))
    rhs = _monomial_times_strict(chart)
    if lhs == rhs:
        return True
    if lhs.is_zero() or rhs.is_zero():
        return False
    lead = next(iter(sorted(rhs.terms)))
    if lead not in lhs.terms:
        return False
    ratio = lhs.terms[lead] / rhs.terms[lead]
    return lhs == rhs * ratio
