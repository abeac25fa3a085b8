"""Base-point-vanishing Lipschitz functions on finite spaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .metric import MetricSpace, as_fraction, distance_to_set


@dataclass(frozen=True)
class LipFunction:
    """Real values on a space, vanishing at the base point."""

    space: MetricSpace
    values: tuple

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != self.space.n:
            raise ValueError("one value per point required")
        if vals[self.space.base] != 0:
            raise ValueError("function must vanish at the base point")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, space: MetricSpace) -> "LipFunction":
        return cls(space, (0,) * space.n)

    def __call__(self, i: int) -> Fraction:
        return self.values[i]


def lipschitz_number(f: LipFunction) -> Fraction:
    """Exact max of |f(x) - f(y)| / d(x, y) over all pairs (0 if none)."""
    best = Fraction(0)
    space, vals = f.space, f.values
    for i, j in space.pairs():
        d = space.d(i, j)
        if d > 0:
            ratio = abs(vals[i] - vals[j]) / d
            if ratio > best:
                best = ratio
    return best


def pairing(vec, f: LipFunction) -> Fraction:
    """Apply f, as a linear functional, to a finitely supported vector."""
    if vec.space != f.space:
        raise ValueError("vector and function live on different spaces")
    return sum((coef * f.values[i] for i, coef in vec.coeffs), Fraction(0))


def mcshane_extend(f: LipFunction, space: MetricSpace) -> LipFunction:
    """Extend f from a metric subspace to the whole space without increasing
    its Lipschitz number, via the inf-convolution

        g(x) = min over s of f(s) + L(f) * d(x, s).

    The subspace is matched by labels; the base points must coincide and the
    restricted metric must agree exactly.
    """
    sub = f.space
    locate = [space.index(lbl) for lbl in sub.points]
    if sub.points[sub.base] != space.points[space.base]:
        raise ValueError("base points do not match")
    for a, b in sub.pairs():
        if sub.d(a, b) != space.d(locate[a], locate[b]):
            raise ValueError("function domain is not a metric subspace")
    lip = lipschitz_number(f)
    vals = []
    for x in range(space.n):
        vals.append(min(f.values[s] + lip * space.d(x, locate[s])
                        for s in range(sub.n)))
    return LipFunction(space, tuple(vals))


def separating_function(space: MetricSpace, blocked, x: int) -> LipFunction:
    """The capped cone that is 0 on `blocked` and at the base, and 1 at x:

        f(y) = min(1, d(y, A u {e}) / d(x, A u {e})).

    Its Lipschitz number is exactly 1 / d(x, A u {e}), the least possible for
    a function meeting those point conditions.
    """
    blocked = set(blocked)
    if x == space.base or x in blocked:
        raise ValueError("no separating function: the point lies in the "
                         "blocked set")
    anchors = blocked | {space.base}
    scale = distance_to_set(space, x, anchors)
    vals = tuple(min(Fraction(1), distance_to_set(space, y, anchors) / scale)
                 for y in range(space.n))
    return LipFunction(space, vals)
