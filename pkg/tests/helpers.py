"""Shared test helpers, including an independent brute-force norm oracle.

The oracle enumerates basic feasible points of the Lipschitz unit ball (every
choice of tight constraints) and keeps the best pairing value.  It shares no
code with the production solvers on purpose; only this file may be this slow.
"""

import itertools
from fractions import Fraction

from lipfree import MetricSpace


def brute_force_free_norm(space, vec) -> Fraction:
    base = space.base
    varpts = [i for i in range(space.n) if i != base]
    p = len(varpts)
    if p == 0 or vec.is_zero():
        return Fraction(0)
    var_of = {pt: v for v, pt in enumerate(varpts)}
    cons = []
    for s in range(space.n):
        for t in range(space.n):
            if s == t:
                continue
            normal = [Fraction(0)] * p
            if s != base:
                normal[var_of[s]] += 1
            if t != base:
                normal[var_of[t]] -= 1
            cons.append((normal, space.d(s, t)))
    objective = [vec.coeff(pt) for pt in varpts]

    best = Fraction(0)
    for subset in itertools.combinations(range(len(cons)), p):
        rows = [cons[k][0][:] + [cons[k][1]] for k in subset]
        singular = False
        for col in range(p):
            piv = next((r for r in range(col, p) if rows[r][col] != 0), None)
            if piv is None:
                singular = True
                break
            rows[col], rows[piv] = rows[piv], rows[col]
            pv = rows[col][col]
            rows[col] = [x / pv for x in rows[col]]
            for r in range(p):
                if r != col and rows[r][col]:
                    f = rows[r][col]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
        if singular:
            continue
        point = [rows[r][p] for r in range(p)]
        if all(sum(a[v] * point[v] for v in range(p)) <= b for a, b in cons):
            value = sum(objective[v] * point[v] for v in range(p))
            if value > best:
                best = value
    return best


def tiny_space(rows, base=0, labels=None) -> MetricSpace:
    if labels is None:
        labels = tuple(str(i) for i in range(len(rows)))
    return MetricSpace(tuple(labels), base, tuple(tuple(r) for r in rows))
