"""Newton-polyhedron oracle: the candidate pole index computed combinatorially,
independent of any blow-up.

For f vanishing at the origin, t0 is the parameter where the diagonal
(t, ..., t) first meets the polyhedron conv(support + positive orthant);
the reported value is 1/t0. Two independent computations are run and must
agree exactly: facet-normal enumeration (dual) and basic-solution
enumeration of the min-max program (primal). The value is what the
polyhedron alone determines; for degenerate boundaries it is only a
candidate, and no nondegeneracy check is attempted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .algebra import Polynomial, Rational, _fraction
from .errors import (
    InternalInconsistencyError,
    UnitInputError,
    ZeroPolynomialError,
)


# ---------------------------------------------------------------------------
# Small exact linear algebra over Fraction.


def _solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]):
    """Solve M x = b by Gaussian elimination; None if singular."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _null_space(matrix: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    """Basis of the null space of a (possibly non-square) matrix with n columns."""
    rows = [row[:] for row in matrix]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def _rank(matrix: list[list[Fraction]], n: int) -> int:
    if not matrix:
        return 0
    return n - len(_null_space(matrix, n))


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, preserving direction."""
    denoms = [v.denominator for v in vec]
    lcm = 1
    for d in denoms:
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonData:
    """Support, validated facet normals (primitive integers, paired with the
    weighted order N), the diagonal parameter t0, and lambda_np = 1/t0."""

    support: tuple[tuple[int, ...], ...]
    facet_normals: tuple[tuple[tuple[int, ...], int], ...]
    t0: Fraction
    lambda_np: Fraction


def support(f: Polynomial) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors with nonzero coefficients, canonically sorted."""
    if f.is_zero():
        raise ZeroPolynomialError("support of the zero polynomial")
    return f.support()


def w_order(f: Polynomial, weights: Sequence[Rational]) -> Fraction:
    """N(w) = min over the support of w . a, for nonnegative rational w."""
    pts = support(f)
    w = [_fraction(c) for c in weights]
    if len(w) != len(f.variables):
        raise ValueError(f"expected {len(f.variables)} weights, got {len(w)}")
    if any(c < 0 for c in w):
        raise ValueError("weights must be non-negative")
    if all(c == 0 for c in w):
        raise ValueError("weights must not all be zero")
    return min(sum(c * e for c, e in zip(w, a)) for a in pts)


def weighted_candidate(f: Polynomial, weights: Sequence[Rational]) -> Fraction:
    """The pole candidate (sum of w) / N(w) of the weight-w divisor."""
    w = [_fraction(c) for c in weights]
    if any(c <= 0 for c in w):
        raise ValueError("weights must be strictly positive")
    n = w_order(f, w)
    if n == 0:
        raise UnitInputError("N(w) = 0: the polynomial is a unit in this filtration")
    return sum(w) / n


def _dot(w: Sequence[Fraction], a: Sequence[int]) -> Fraction:
    return sum(c * e for c, e in zip(w, a))


def _facet_normals(pts: list[tuple[int, ...]], d: int):
    """Enumerate facet normals of conv(points + positive orthant).

    Every facet is the affine span of some affinely independent subset of
    support points together with some coordinate recession directions, so
    brute force over (point subset, coordinate subset) pairs finds them all;
    each candidate normal is validated globally before being kept.
    """
    found: dict[tuple[int, ...], Fraction] = {}
    indices = range(len(pts))
    for s in range(1, d + 1):
        for subset in itertools.combinations(indices, s):
            base = pts[subset[0]]
            rows = [
                [Fraction(pts[i][c] - base[c]) for c in range(d)]
                for i in subset[1:]
            ]
            for coords in itertools.combinations(range(d), d - s):
                matrix = rows + [
                    [Fraction(1 if c == zc else 0) for c in range(d)]
                    for zc in coords
                ]
                basis = _null_space(matrix, d)
                if len(basis) != 1:
                    continue
                w = basis[0]
                if all(c <= 0 for c in w):
                    w = [-c for c in w]
                if any(c < 0 for c in w):
                    continue
                n_val = _dot(w, base)
                if any(_dot(w, a) < n_val for a in pts):
                    continue
                # Keep genuine facets only: the touching face must have
                # affine dimension d-1.
                touching = [a for a in pts if _dot(w, a) == n_val]
                span_rows = [
                    [Fraction(a[c] - touching[0][c]) for c in range(d)]
                    for a in touching[1:]
                ]
                span_rows += [
                    [Fraction(1 if c == zc else 0) for c in range(d)]
                    for zc in range(d)
                    if w[zc] == 0
                ]
                if _rank(span_rows, d) != d - 1:
                    continue
                key = _primitive(w)
                found.setdefault(key, Fraction(int(_dot([Fraction(k) for k in key], base))))
    return sorted(
        ((w, int(n)) for w, n in found.items()),
        key=lambda item: item[0],
    )


def _t0_primal(pts: list[tuple[int, ...]], d: int) -> Fraction:
    """min t such that (t, ..., t) dominates a convex combination of support
    points, by enumerating basic solutions of the min-max program."""
    best: Fraction | None = None
    indices = range(len(pts))
    for size in range(1, d + 1):
        for subset in itertools.combinations(indices, size):
            for active in itertools.combinations(range(d), size):
                # Unknowns: lambda_1..lambda_size, t.
                matrix: list[list[Fraction]] = []
                rhs: list[Fraction] = []
                for c in active:
                    matrix.append(
                        [Fraction(pts[i][c]) for i in subset] + [Fraction(-1)]
                    )
                    rhs.append(Fraction(0))
                matrix.append([Fraction(1)] * size + [Fraction(0)])
                rhs.append(Fraction(1))
                sol = _solve_square(matrix, rhs)
                if sol is None:
                    continue
                lams, t = sol[:-1], sol[-1]
                if any(l < 0 for l in lams):
                    continue
                feasible = True
                for c in range(d):
                    if c in active:
                        continue
                    coord = sum(
                        l * pts[i][c] for l, i in zip(lams, subset)
                    )
                    if coord > t:
                        feasible = False
                        break
                if feasible and (best is None or t < best):
                    best = t
    if best is None:
        raise InternalInconsistencyError("primal enumeration found no solution")
    return best


def lambda_newton(f: Polynomial) -> NewtonData:
    """Exact 1/t0 for f with f(0) = 0, cross-checked primal against dual."""
    pts = list(support(f))
    d = len(f.variables)
    if (0,) * d in f.terms:
        raise UnitInputError("the polynomial does not vanish at the origin")
    normals = _facet_normals(pts, d)
    dual_candidates = [
        Fraction(n, sum(w)) for w, n in normals if sum(w) > 0 and n > 0
    ]
    if not dual_candidates:
        raise InternalInconsistencyError("no facet normal with positive order")
    t0_dual = max(dual_candidates)
    t0_primal = _t0_primal(pts, d)
    if t0_dual != t0_primal:
        raise InternalInconsistencyError(
            f"facet enumeration gives t0 = {t0_dual}, "
            f"basic-solution enumeration gives {t0_primal}"
        )
    return NewtonData(
        support=tuple(pts),
        facet_normals=tuple(normals),
        t0=t0_dual,
        lambda_np=Fraction(1) / t0_dual,
    )
