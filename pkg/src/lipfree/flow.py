"""Exact minimum-cost transport realizing a signed mass distribution.

Nodes with positive divergence ship mass, nodes with negative divergence
receive it.  Because the cost matrix satisfies the triangle inequality, some
optimal plan moves mass only along direct shipper-to-receiver edges (a relay
through a third point never beats the direct edge), so the search runs on
that bipartite network.  Mass is routed by successive shortest augmenting
paths in the residual graph, found with Bellman-Ford over exact rationals;
tie-breaking is by node index, so the optimal plan returned is deterministic.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_MAX_AUGMENTATIONS = 200_000


def min_cost_transport(space, divergence: dict) -> tuple:
    """Cheapest nonnegative flow whose net outflow matches `divergence`.

    `divergence` maps node index -> Fraction and must sum to zero.  Returns
    (cost, edges) with edges a tuple of (src, dst, amount), amount > 0,
    sorted by endpoint indices.
    """
    total = sum(divergence.values(), _ZERO)
    if total != 0:
        raise ValueError("divergence must sum to zero")
    supply = {i: b for i, b in divergence.items() if b > 0}
    demand = {i: -b for i, b in divergence.items() if b < 0}
    if not supply:
        return _ZERO, ()

    sources = sorted(supply)
    sinks = sorted(demand)
    rem_s = dict(supply)
    rem_t = dict(demand)
    flow = {}

    for _ in range(_MAX_AUGMENTATIONS):
        live = [s for s in sources if rem_s[s] > 0]
        if not live:
            break

        # Bellman-Ford from every source with remaining supply.  Forward
        # arcs s->t cost d(s, t); each positive flow contributes a backward
        # arc t->s at cost -d(s, t).
        dist = {v: None for v in sources}
        dist.update({v: None for v in sinks})
        pred = {}
        for s in live:
            dist[s] = _ZERO
        for _round in range(len(dist)):
            changed = False
            for s in sources:
                ds = dist[s]
                if ds is None:
                    continue
                for t in sinks:
                    nd = ds + space.d(s, t)
                    if dist[t] is None or nd < dist[t]:
                        dist[t] = nd
                        pred[t] = s
                        changed = True
            for (s, t), amount in flow.items():
                if amount <= 0:
                    continue
                dt = dist[t]
                if dt is None:
                    continue
                nd = dt - space.d(s, t)
                if dist[s] is None or nd < dist[s]:
                    dist[s] = nd
                    pred[s] = t
                    changed = True
            if not changed:
                break
        else:
            raise RuntimeError("negative residual cycle: invalid cost data")

        target = None
        for t in sinks:
            if rem_t[t] > 0 and dist[t] is not None:
                if target is None or dist[t] < dist[target]:
                    target = t
        if target is None:
            raise RuntimeError("transport infeasible")

        # Recover the path backwards; it ends at a source with no predecessor.
        path = [target]
        seen = {target}
        while path[-1] in pred:
            nxt = pred[path[-1]]
            if nxt in seen:
                raise RuntimeError("predecessor cycle: invalid cost data")
            seen.add(nxt)
            path.append(nxt)
        start = path[-1]

        bottleneck = min(rem_s[start], rem_t[target])
        for k in range(len(path) - 1):
            ahead, node = path[k + 1], path[k]
            if node in demand:  # forward arc ahead -> node
                continue
            bottleneck = min(bottleneck, flow[(node, ahead)])

        for k in range(len(path) - 1):
            ahead, node = path[k + 1], path[k]
            if node in demand:
                key = (ahead, node)
                flow[key] = flow.get(key, _ZERO) + bottleneck
            else:
                flow[(node, ahead)] -= bottleneck
        rem_s[start] -= bottleneck
        rem_t[target] -= bottleneck
    else:
        raise RuntimeError("augmentation limit exceeded")

    edges = tuple(sorted((s, t, amount) for (s, t), amount in flow.items()
                         if amount > 0))
    cost = sum((amount * space.d(s, t) for s, t, amount in edges), _ZERO)
    return cost, edges
