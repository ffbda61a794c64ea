"""Pure-Python induced-copy search kernel.

Semantics are shared with the compiled ``_csearch`` module; both must return
the same assignment for the same input.

``members`` is a list of distinct integer masks in the candidate order.
``rel`` is the flattened p*p relation code table (1: i<j, 2: i>j, 0: neither).
``order`` is the element visiting order. ``forced`` is a member index that
must appear in the copy, or -1.

Backtracking with forward checking: every unassigned element keeps the list
of members still compatible with the partial copy, and a branch is dropped
as soon as one of those lists runs empty. Candidates are always tried in
member order, so the first copy found is the same as plain backtracking.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

# automorphism orbits are only computed for posets this small
ORBIT_MAX_P = 7


def _filter(dom: list[int], b: int, code: int) -> list[int]:
    # members x of dom whose relation to b matches code (1: x < b, 2: x > b)
    if code == 1:
        return [x for x in dom if x != b and x & b == x]
    if code == 2:
        return [x for x in dom if x != b and x & b == b]
    return [x for x in dom if x & ~b and b & ~x]


def _dfs(p, rel, order, picked, t, doms) -> bool:
    """doms[i] holds the candidate masks for depth t + i."""
    if t == p:
        return True
    v = order[t]
    # filter the tightest domains first so dead ends show up early
    rest = sorted(range(1, len(doms)), key=lambda i: (len(doms[i]), i))
    for b in doms[0]:
        new = [None] * (len(doms) - 1)
        ok = True
        for i in rest:
            d = _filter(doms[i], b, rel[order[t + i] * p + v])
            if not d:
                ok = False
                break
            new[i - 1] = d
        if not ok:
            continue
        picked[v] = b
        if _dfs(p, rel, order, picked, t + 1, new):
            return True
    return False


def _run(members, p, rel, order, picked, start) -> Optional[list[int]]:
    doms = []
    for t in range(start, p):
        d = list(members)
        w = order[t]
        for s in range(start):
            u = order[s]
            d = _filter(d, picked[u], rel[w * p + u])
        if not d:
            return None
        doms.append(d)
    if not _dfs(p, rel, order, picked, start, doms):
        return None
    index = {x: i for i, x in enumerate(members)}
    return [index[picked[v]] for v in range(p)]


def _orbit_reps(p, rel):
    if p > ORBIT_MAX_P:
        return list(range(p))
    seen = set()
    reps = []
    autos = [
        g
        for g in permutations(range(p))
        if all(rel[g[i] * p + g[j]] == rel[i * p + j] for i in range(p) for j in range(p))
    ]
    for v in range(p):
        if v in seen:
            continue
        reps.append(v)
        seen.update(g[v] for g in autos)
    return reps


@lru_cache(maxsize=256)
def forced_plan(p: int, rel: tuple, order: tuple) -> tuple:
    """(position, visiting order) pairs to try when one member is forced.

    Positions in the same automorphism orbit succeed or fail together, so
    only the first of each orbit is kept. After the forced position, the
    visiting order greedily takes the element comparable to most of the
    elements already placed (ties by ``order``), so a failing branch runs
    into a tight constraint early.
    """
    plan = []
    for v in _orbit_reps(p, rel):
        vis = [v]
        rest = [u for u in order if u != v]
        while rest:
            best = max(rest, key=lambda u: sum(1 for w in vis if rel[u * p + w]))
            vis.append(best)
            rest.remove(best)
        plan.append((v, tuple(vis)))
    return tuple(plan)


def find_copy(
    members: Sequence[int],
    p: int,
    rel: Sequence[int],
    order: Sequence[int],
    forced: int = -1,
) -> Optional[list[int]]:
    """Member indices per poset element for the first induced copy, or None."""
    m = len(members)
    if p == 0:
        return []
    if p > m:
        return None
    members = list(members)
    if forced < 0:
        return _run(members, p, rel, list(order), [0] * p, 0)

    f = members[forced]
    above = sum(1 for x in members if x != f and x & f == f)
    below = sum(1 for x in members if x != f and x & f == x)
    for v, vis in forced_plan(p, tuple(rel), tuple(order)):
        row = v * p
        n_up = sum(1 for u in range(p) if rel[row + u] == 1)
        n_down = sum(1 for u in range(p) if rel[row + u] == 2)
        if n_up > above or n_down > below:
            continue
        picked = [0] * p
        picked[v] = f
        res = _run(members, p, rel, vis, picked, 1)
        if res is not None:
            return res
    return None
