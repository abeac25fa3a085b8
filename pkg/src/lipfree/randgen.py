"""Seeded random instances: spaces, vectors, functions, retractions.

Random spaces are shortest-path closures of random positive rational weight
matrices, which guarantees the triangle inequality while exercising plenty of
degenerate geometry (ties, collinear triples).
"""

from __future__ import annotations

from fractions import Fraction

from .free import FreeVector
from .lipschitz import LipFunction
from .metric import MetricSpace, PointMap

_DENOMS = (1, 1, 1, 2, 3, 4)


def random_space(rng, size: int, max_num: int = 9) -> MetricSpace:
    if size < 1:
        raise ValueError("size must be positive")
    w = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            w[i][j] = w[j][i] = Fraction(rng.randint(1, max_num),
                                         rng.choice(_DENOMS))
    # Floyd-Warshall closure turns any positive weights into a metric.
    for k in range(size):
        wk = w[k]
        for i in range(size):
            wik = w[i][k]
            row = w[i]
            for j in range(size):
                through = wik + wk[j]
                if i != j and through < row[j]:
                    row[j] = through
    labels = tuple(f"x{i}" for i in range(size))
    return MetricSpace(labels, rng.randrange(size), tuple(tuple(r) for r in w))


def random_vector(rng, space: MetricSpace, max_coeff: int = 5,
                  density: float = 0.7, integral: bool = True) -> FreeVector:
    coeffs = []
    for x in space.non_base():
        if rng.random() >= density:
            continue
        num = rng.randint(-max_coeff, max_coeff)
        if num == 0:
            continue
        if integral:
            coeffs.append((x, Fraction(num)))
        else:
            coeffs.append((x, Fraction(num, rng.choice(_DENOMS))))
    return FreeVector(space, tuple(coeffs))


def random_direction(rng, space: MetricSpace, max_coeff: int = 9) -> FreeVector:
    """Dense-ish vector used to sample the unit sphere."""
    coeffs = tuple((x, Fraction(rng.randint(-max_coeff, max_coeff),
                                rng.choice(_DENOMS)))
                   for x in space.non_base())
    return FreeVector(space, coeffs)


def random_lip_function(rng, space: MetricSpace, max_num: int = 6) -> LipFunction:
    vals = [Fraction(rng.randint(-max_num, max_num), rng.choice(_DENOMS))
            for _ in range(space.n)]
    vals[space.base] = Fraction(0)
    return LipFunction(space, tuple(vals))


def random_retraction(rng, space: MetricSpace) -> PointMap:
    kept = sorted({space.base} | {i for i in range(space.n)
                                  if rng.random() < 0.5})
    image = [i if i in kept else rng.choice(kept) for i in range(space.n)]
    return PointMap.create(space, space, tuple(image))


def random_subset(rng, space: MetricSpace, prob: float = 0.4) -> list:
    """Nonempty random set of point indices."""
    chosen = [i for i in range(space.n) if rng.random() < prob]
    if not chosen:
        chosen = [rng.randrange(space.n)]
    return chosen


def random_projection_map(rng, size: int) -> list:
    """Idempotent index map for a basis of the given size: each slot is
    fixed, sent to zero (None), or sent to some fixed slot."""
    fixed = [k for k in range(size) if rng.random() < 0.45]
    out = []
    for k in range(size):
        if k in fixed:
            out.append(k)
        elif fixed and rng.random() < 0.5:
            out.append(rng.choice(fixed))
        else:
            out.append(None)
    return out
