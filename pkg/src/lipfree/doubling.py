"""Covering numbers, doubling constants and Assouad-dimension estimates for
finite metric spaces."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .metric import MetricSpace, as_fraction

DEFAULT_EXACT_THRESHOLD = 20


@dataclass(frozen=True)
class CoverResult:
    count: int
    centers: tuple
    exact: bool


@dataclass(frozen=True)
class ScaleEntry:
    """Worst-case doubling data at one scale: the most expensive center, the
    number of r-balls needed to cover its 2r-ball, and the cover itself."""

    r: Fraction
    count: int
    exact: bool
    center: int
    cover: tuple


@dataclass(frozen=True)
class DoublingReport:
    scales: tuple
    doubling_max: int
    all_exact: bool
    assouad_estimate: float
    assouad_scale_range: tuple


@dataclass(frozen=True)
class Discreteness:
    theta: Fraction
    diameter: Fraction
    ratio: Fraction


def ball(space: MetricSpace, center: int, radius) -> tuple:
    """Indices of the closed ball around `center`."""
    radius = as_fraction(radius)
    return tuple(i for i in range(space.n) if space.d(center, i) <= radius)


def _greedy_cover(universe: frozenset, candidates) -> list:
    sets = dict(candidates)
    uncovered = set(universe)
    chosen = []
    while uncovered:
        best_c, best_gain = -1, 0
        for c, members in candidates:
            gain = len(members & uncovered)
            if gain > best_gain:
                best_c, best_gain = c, gain
        if best_c < 0:
            raise RuntimeError("uncoverable element")  # impossible: x covers x
        chosen.append(best_c)
        uncovered -= sets[best_c]
    return chosen


def _exact_cover(universe: frozenset, candidates, warm_start: list) -> list:
    """Branch and bound minimum set cover, seeded with the greedy solution."""
    best = list(warm_start)
    sets = {c: members for c, members in candidates}
    max_size = max((len(m) for m in sets.values()), default=1)

    def search(uncovered, chosen):
        nonlocal best
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + -(-len(uncovered) // max_size) >= len(best):
            return
        # branch on the most constrained uncovered element
        elem, covering = None, None
        for e in sorted(uncovered):
            cov = [c for c, m in candidates if e in m]
            if covering is None or len(cov) < len(covering):
                elem, covering = e, cov
        covering.sort(key=lambda c: (-len(sets[c] & uncovered), c))
        for c in covering:
            chosen.append(c)
            search(uncovered - sets[c], chosen)
            chosen.pop()

    search(set(universe), [])
    return best


def covering_number(space: MetricSpace, x: int, big_r, small_r,
                    exact_threshold: int = DEFAULT_EXACT_THRESHOLD) -> CoverResult:
    """Minimum number of closed small_r-balls (centers anywhere in the space)
    covering the closed big_r-ball around x.

    The count is exact, certified by the returned centers, whenever the ball
    holds at most `exact_threshold` points; beyond that the greedy cover is
    returned and flagged as an upper bound.
    """
    big_r, small_r = as_fraction(big_r), as_fraction(small_r)
    if small_r <= 0:
        raise ValueError("covering radius must be positive")
    if big_r < small_r:
        raise ValueError("covered radius must be at least the covering radius")
    universe = frozenset(ball(space, x, big_r))

    candidates = []
    seen = set()
    for c in range(space.n):
        members = frozenset(ball(space, c, small_r)) & universe
        if members and members not in seen:
            candidates.append((c, members))
            seen.add(members)
    # drop sets strictly contained in another candidate
    candidates = [(c, m) for c, m in candidates
                  if not any(m < m2 for _, m2 in candidates)]

    chosen = _greedy_cover(universe, candidates)
    if len(universe) <= exact_threshold:
        chosen = _exact_cover(universe, candidates, chosen)
        return CoverResult(len(chosen), tuple(sorted(chosen)), True)
    return CoverResult(len(chosen), tuple(sorted(chosen)), False)


def _positive_distances(space: MetricSpace) -> list:
    vals = {space.d(i, j) for i, j in space.pairs() if space.d(i, j) > 0}
    return sorted(vals)


def _thin(values: list, keep: int) -> list:
    if len(values) <= keep:
        return list(values)
    stride = (len(values) - 1) / (keep - 1)
    picked = sorted({round(k * stride) for k in range(keep)})
    return [values[i] for i in picked]


def doubling_constant(space: MetricSpace,
                      exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
                      scales=None) -> DoublingReport:
    """Worst-case covering counts C(r) of 2r-balls by r-balls over the
    canonical scale grid (realized distances and their halves), plus a
    log-ratio Assouad-dimension estimate over a thinned radius grid.

    The estimate is exactly that -- an estimate over the reported scale
    range -- and is never a claim about a true dimension.
    """
    if space.n < 2:
        raise ValueError("doubling data needs at least two points")
    dists = _positive_distances(space)
    if scales is None:
        grid = sorted({d / 2 for d in dists} | set(dists))
    else:
        grid = sorted({as_fraction(s) for s in scales})
        if any(s <= 0 for s in grid):
            raise ValueError("scales must be positive")

    entries = []
    for r in grid:
        worst = None
        for x in range(space.n):
            res = covering_number(space, x, 2 * r, r, exact_threshold)
            if worst is None or res.count > worst[1].count:
                worst = (x, res)
        x, res = worst
        entries.append(ScaleEntry(r, res.count, res.exact, x, res.centers))

    # Assouad estimate: max log N(x, R, r) / log(R / r) over ratio >= 2 pairs
    # drawn from a thinned grid of realized distances.
    radii = _thin(dists, 6)
    estimate = 0.0
    lo, hi = None, None
    for big in radii:
        for small in radii:
            if big / small < 2:
                continue
            lo = small if lo is None or small < lo else lo
            hi = big if hi is None or big > hi else hi
            worst_count = 1
            for x in range(space.n):
                res = covering_number(space, x, big, small, exact_threshold)
                worst_count = max(worst_count, res.count)
            if worst_count > 1:
                est = math.log(worst_count) / math.log(big / small)
                estimate = max(estimate, est)
    scale_range = (lo, hi) if lo is not None else None

    return DoublingReport(
        scales=tuple(entries),
        doubling_max=max(e.count for e in entries),
        all_exact=all(e.exact for e in entries),
        assouad_estimate=estimate,
        assouad_scale_range=scale_range,
    )


def uniform_discreteness(space: MetricSpace) -> Discreteness:
    """Separation (least off-diagonal distance), diameter, and their ratio,
    the quantity that drives witness conditioning."""
    if space.n < 2:
        raise ValueError("discreteness data needs at least two points")
    dists = [space.d(i, j) for i, j in space.pairs()]
    theta = min(dists)
    diameter = max(dists)
    return Discreteness(theta, diameter, diameter / theta)
