"""Monte Carlo cross-check: recover the pole index from how the volume of
{|f| <= t} scales as t -> 0.

Samples are drawn once per seed (in fixed-size chunks keyed by (seed, chunk
index), so results are identical however the chunks are scheduled) and
shared across every threshold level; hit counts are therefore monotone in t
by construction. The log-log slope of the hit fraction is fitted by weighted
least squares and converted to the index estimate: slope for real samples,
slope/2 for complex ones, matching how the ambient measure scales in each
case. Levels with too few hits carry no usable information and are dropped;
when fewer than two levels remain, or the grid itself is too coarse, the
run raises UnreliableEstimateError carrying the partial data instead of
returning a number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import Polynomial
from .errors import UnreliableEstimateError

_CHUNK = 1 << 17

MODES = ("real", "complex")


@dataclass(frozen=True)
class EstimatorConfig:
    mode: str
    samples_per_level: int = 1_000_000
    t_min: float = 1e-5
    t_max: float = 1e-2
    levels: int = 8
    box_radius: float = 1.0
    seed: int = 0
    min_hits: int = 100

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not (0 < self.t_min < self.t_max <= 1):
            raise ValueError(
                f"need 0 < t_min < t_max <= 1, got [{self.t_min}, {self.t_max}]"
            )
        if self.levels < 2:
            raise ValueError("need at least 2 threshold levels")
        if self.samples_per_level < 1:
            raise ValueError("need at least one sample")
        if self.box_radius <= 0:
            raise ValueError("box radius must be positive")
        if self.min_hits < 1:
            raise ValueError("min_hits must be at least 1")
        if not 0 <= self.seed < 2**63:
            raise ValueError("seed must fit in 63 bits")


@dataclass(frozen=True)
class Estimate:
    lambda_hat: float
    stderr: float
    slope: float
    levels_used: int
    t_grid: tuple[float, ...]
    hit_counts: tuple[int, ...]
    samples: int
    mode: str
    seed: int


def t_grid(config: EstimatorConfig) -> tuple[float, ...]:
    """Geometric threshold grid from t_min to t_max."""
    return tuple(
        float(t) for t in np.geomspace(config.t_min, config.t_max, config.levels)
    )


def _embedding(field) -> complex:
    """Deterministic complex value for the field generator: the root of the
    modulus with the largest imaginary part, ties broken by real part."""
    if field.degree == 1:
        return complex(-field.minpoly_tail[0])
    coeffs = [1.0] + [float(c) for c in reversed(field.minpoly_tail)]
    roots = sorted(np.roots(coeffs), key=lambda r: (r.imag, r.real))
    return complex(roots[-1])


def _compiled_terms(f: Polynomial) -> list[tuple[complex, tuple[int, ...]]]:
    g = _embedding(f.field)
    out = []
    for exps, coeff in f.sorted_terms():
        value = 0j
        for power, c in enumerate(coeff.coeffs):
            value += complex(c) * g**power
        out.append((value, exps))
    return out


def _sample_chunk(config: EstimatorConfig, chunk: int, count: int, dims: int):
    rng = np.random.Generator(np.random.Philox(key=[config.seed, chunk]))
    r = config.box_radius
    if config.mode == "real":
        return rng.uniform(-r, r, size=(count, dims))
    # Uniform on the radius-r disk per coordinate: sqrt-radial times a phase.
    radius = r * np.sqrt(rng.random(size=(count, dims)))
    theta = rng.random(size=(count, dims))
    return radius * np.exp(2j * math.pi * theta)


def _abs_values(f: Polynomial, config: EstimatorConfig) -> np.ndarray:
    terms = _compiled_terms(f)
    dims = len(f.variables)
    n = config.samples_per_level
    out = np.empty(n, dtype=np.float64)
    chunks = (n + _CHUNK - 1) // _CHUNK
    for chunk in range(chunks):
        lo = chunk * _CHUNK
        count = min(_CHUNK, n - lo)
        points = _sample_chunk(config, chunk, count, dims)
        acc = np.zeros(count, dtype=np.complex128)
        for coeff, exps in terms:
            term = np.full(count, coeff, dtype=np.complex128)
            for axis, e in enumerate(exps):
                if e:
                    term = term * points[:, axis] ** e
            acc += term
        out[lo : lo + count] = np.abs(acc)
    return out


def volume_probe(f: Polynomial, config: EstimatorConfig, t: float) -> float:
    """Fraction of the shared sample set with |f| <= t."""
    if not 0 < t <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    values = _abs_values(f, config)
    return float(np.count_nonzero(values <= t)) / config.samples_per_level


def hit_counts(f: Polynomial, config: EstimatorConfig) -> tuple[int, ...]:
    """Hits per threshold level over the shared sample set."""
    values = np.sort(_abs_values(f, config))
    return tuple(
        int(np.searchsorted(values, t, side="right")) for t in t_grid(config)
    )


def estimate(f: Polynomial, config: EstimatorConfig) -> Estimate:
    """Fit the scaling exponent and return the index estimate.

    Raises UnreliableEstimateError (carrying the partial Estimate) when the
    grid has fewer than 4 levels or fewer than 2 levels have at least
    min_hits hits without being saturated.
    """
    grid = t_grid(config)
    counts = hit_counts(f, config)
    n = config.samples_per_level

    def partial(slope: float = float("nan"), stderr: float = float("nan"),
                used: int = 0) -> Estimate:
        lam = slope if config.mode == "real" else slope / 2
        err = stderr if config.mode == "real" else stderr / 2
        return Estimate(
            lambda_hat=lam,
            stderr=err,
            slope=slope,
            levels_used=used,
            t_grid=grid,
            hit_counts=counts,
            samples=n,
            mode=config.mode,
            seed=config.seed,
        )

    if config.levels < 4:
        raise UnreliableEstimateError(
            f"threshold grid with {config.levels} levels is too coarse to "
            "fit a slope",
            partial(),
        )
    usable = [
        i for i, c in enumerate(counts) if config.min_hits <= c < n
    ]
    if len(usable) < 2:
        raise UnreliableEstimateError(
            f"only {len(usable)} of {config.levels} levels have at least "
            f"{config.min_hits} hits; the thresholds probe volumes this "
            "sample budget cannot see",
            partial(used=len(usable)),
        )
    xs = [math.log(grid[i]) for i in usable]
    ys = [math.log(counts[i] / n) for i in usable]
    # Delta method: Var(log p_hat) ~ (1-p)/(n p), so weight by its inverse.
    ws = [counts[i] / (1 - counts[i] / n) for i in usable]
    s_w = sum(ws)
    s_x = sum(w * x for w, x in zip(ws, xs))
    s_y = sum(w * y for w, y in zip(ws, ys))
    s_xx = sum(w * x * x for w, x in zip(ws, xs))
    s_xy = sum(w * x * y for w, x, y in zip(ws, xs, ys))
    denom = s_w * s_xx - s_x * s_x
    if denom <= 0:
        raise UnreliableEstimateError(
            "threshold levels are numerically indistinguishable", partial()
        )
    slope = (s_w * s_xy - s_x * s_y) / denom
    stderr = math.sqrt(s_w / denom)
    return partial(slope, stderr, len(usable))
