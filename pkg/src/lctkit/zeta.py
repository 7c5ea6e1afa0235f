"""Candidate pole collection and the minimal pole index of a resolution tree.

Every exceptional divisor seen in a leaf chart contributes the candidate
(h + 1)/k. Divisors are identified by the blow-up event that created them
(or by the root coordinate hyperplane they came from), so a divisor visible
in several sibling charts is counted once; its k and h are asserted equal
across sightings. Charts under an orbit annotation stand for several points
with identical local analysis, and the divisors born below them are
replicated accordingly under suffixed ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .blowup import BlowupStep, ChartStatus, ResolutionTree, TreeNode
from .errors import ChartError, InternalInconsistencyError, UnitInputError
from .newton import NewtonData


@dataclass(frozen=True)
class PoleIndex:
    divisor: str
    k: int
    h: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.h + 1, self.k)


@dataclass(frozen=True)
class PoleReport:
    lambda_uncapped: Optional[Fraction]
    lambda_capped: Fraction
    multiplicity: int
    candidates: tuple[PoleIndex, ...]
    certified: bool
    newton_value: Optional[Fraction] = None
    newton_agrees: Optional[bool] = None


def _birth_factors(node: TreeNode, inherited: int, out: dict[str, int]) -> None:
    factor = inherited * node.chart.orbit_factor
    for child in node.children:
        last = child.chart.steps[-1] if child.chart.steps else None
        if isinstance(last, BlowupStep):
            out[last.divisor] = factor
        _birth_factors(child, factor, out)


def divisor_candidates(tree: ResolutionTree) -> tuple[PoleIndex, ...]:
    """Candidates (h+1)/k from every exceptional divisor in every leaf,
    deduplicated by the divisor's creating event and replicated by the orbit
    factor in force where it was created."""
    leaves = list(tree.leaves())
    if any(leaf.chart.status is ChartStatus.OPEN for leaf in leaves):
        raise ChartError("tree has unresolved Open leaves")
    seen: dict[str, tuple[int, int]] = {}
    for leaf in leaves:
        chart = leaf.chart
        for var in chart.exceptional:
            divisor = chart.divisor_ids[var]
            pair = (chart.f_exponents[var], chart.jac_exponents[var])
            prior = seen.get(divisor)
            if prior is None:
                seen[divisor] = pair
            elif prior != pair:
                raise InternalInconsistencyError(
                    f"divisor {divisor} has (k, h) = {pair} in one chart and "
                    f"{prior} in another"
                )
    factors: dict[str, int] = {}
    _birth_factors(tree.root, 1, factors)
    out = []
    for divisor, (k, h) in seen.items():
        for copy in range(factors.get(divisor, 1)):
            name = divisor if copy == 0 else f"{divisor}~{copy + 1}"
            out.append(PoleIndex(name, k, h))
    return tuple(sorted(out, key=lambda c: (c.value, c.divisor)))


def multiplicity(tree: ResolutionTree, value: Fraction) -> int:
    """Largest number of divisors meeting in one leaf chart that all attain
    the given candidate value."""
    best = 0
    for leaf in tree.leaves():
        chart = leaf.chart
        count = sum(
            1
            for v in chart.exceptional
            if Fraction(chart.jac_exponents[v] + 1, chart.f_exponents[v]) == value
        )
        best = max(best, count)
    if best == 0:
        raise ChartError(f"value {value} is not attained in any leaf chart")
    return best


def lambda_uncapped(
    tree: ResolutionTree, newton: Optional[NewtonData] = None
) -> PoleReport:
    """Assemble the report: minimum candidate, its multiplicity, and the
    certificate flag (true only when every leaf is UnitStrict, so the tree is
    a complete monomialization and the minimum is exact rather than an upper
    bound). A smooth input with no content yields no candidates; the capped
    value is then 1.
    """
    candidates = divisor_candidates(tree)
    if candidates:
        lam: Optional[Fraction] = min(c.value for c in candidates)
        mult = multiplicity(tree, lam)
        capped = min(Fraction(1), lam)
    else:
        lam = None
        mult = 1
        capped = Fraction(1)
    certified = all(
        leaf.chart.status is ChartStatus.UNIT_STRICT for leaf in tree.leaves()
    )
    newton_value = newton.lambda_np if newton is not None else None
    newton_agrees = None if newton is None else (lam == newton_value)
    return PoleReport(
        lambda_uncapped=lam,
        lambda_capped=capped,
        multiplicity=mult,
        candidates=candidates,
        certified=certified,
        newton_value=newton_value,
        newton_agrees=newton_agrees,
    )


def lambda_capped(report: PoleReport, f_is_unit: bool = False) -> Fraction:
    """The index capped at 1, the threshold above which the origin stops
    mattering. A unit input has no vanishing locus through the origin at
    all, which is a caller error rather than a value."""
    if f_is_unit:
        raise UnitInputError("a unit at the origin has no pole index")
    return report.lambda_capped
