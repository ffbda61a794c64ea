"""Finite posets as immutable values.

A :class:`Poset` on ``p`` elements is stored as its full strict relation
matrix ``lt`` (already transitively closed), so comparability tests are O(1).
Elements are labelled ``0 .. p-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class CycleError(ValueError):
    """Raised when a list of strict relations is not acyclic."""

    def __init__(self, cycle: list[int]):
        self.cycle = cycle
        super().__init__(f"relations contain a cycle: {' < '.join(map(str, cycle))}")


@dataclass(frozen=True)
class Poset:
    size: int
    lt: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        p = self.size
        if len(self.lt) != p or any(len(row) != p for row in self.lt):
            raise ValueError("relation matrix must be p x p")
        for i in range(p):
            if self.lt[i][i]:
                raise ValueError(f"element {i} is below itself")
            for j in range(p):
                if self.lt[i][j] and self.lt[j][i]:
                    raise ValueError(f"elements {i} and {j} are mutually below")
                if self.lt[i][j]:
                    for k in range(p):
                        if self.lt[j][k] and not self.lt[i][k]:
                            raise ValueError("relation is not transitive")

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"Poset({self.size}, {self.pairs()})"

    def pairs(self) -> list[tuple[int, int]]:
        """All strict pairs ``(i, j)`` with ``i < j`` in the order."""
        p = self.size
        return [(i, j) for i in range(p) for j in range(p) if self.lt[i][j]]

    def less(self, i: int, j: int) -> bool:
        return self.lt[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.lt[i][j] or self.lt[j][i]

    @cached_property
    def up(self) -> tuple[int, ...]:
        """Bitmask of elements strictly above each element."""
        return tuple(sum(1 << j for j in range(self.size) if self.lt[i][j]) for i in range(self.size))

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Bitmask of elements strictly below each element."""
        return tuple(sum(1 << j for j in range(self.size) if self.lt[j][i]) for i in range(self.size))

    @cached_property
    def levels(self) -> tuple[int, ...]:
        """Length of the longest chain strictly below each element."""
        lev = [0] * self.size
        for i in sorted(range(self.size), key=lambda e: self.down[e].bit_count()):
            below = [lev[j] + 1 for j in range(self.size) if self.lt[j][i]]
            lev[i] = max(below, default=0)
        return tuple(lev)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        """Elements sorted by (level, index); every prefix is a down-set."""
        return tuple(sorted(range(self.size), key=lambda e: (self.levels[e], e)))

    @cached_property
    def minimal(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if not self.down[i])

    @cached_property
    def maximal(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if not self.up[i])

    @cached_property
    def relation_codes(self) -> tuple[int, ...]:
        """Flattened p*p codes: 1 if i < j, 2 if i > j, 0 if incomparable (or i == j)."""
        p = self.size
        out = []
        for i in range(p):
            for j in range(p):
                out.append(1 if self.lt[i][j] else 2 if self.lt[j][i] else 0)
        return tuple(out)

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(x, y)`` where ``y`` covers ``x``."""
        p = self.size
        return [
            (x, y)
            for x in range(p)
            for y in range(p)
            if self.lt[x][y] and not (self.up[x] & self.down[y])
        ]

    def restrict(self, elements: Sequence[int]) -> Poset:
        """Induced subposet on ``elements``, relabelled in the given order."""
        idx = list(elements)
        return Poset(len(idx), tuple(tuple(self.lt[a][b] for b in idx) for a in idx))

    def relabel(self, perm: Sequence[int]) -> Poset:
        """Poset where old element ``i`` becomes ``perm[i]``."""
        return make_poset(self.size, [(perm[i], perm[j]) for i, j in self.pairs()])


def make_poset(p: int, strict_pairs: Iterable[tuple[int, int]]) -> Poset:
    """Transitive closure of ``strict_pairs`` on elements ``0 .. p-1``."""
    if p < 0:
        raise ValueError("element count must be non-negative")
    succ: list[set[int]] = [set() for _ in range(p)]
    for i, j in strict_pairs:
        if not (0 <= i < p and 0 <= j < p):
            raise ValueError(f"pair {(i, j)} out of range for {p} elements")
        if i == j:
            raise CycleError([i, i])
        succ[i].add(j)

    # iterative DFS with colours; reports the first cycle met
    colour = [0] * p
    parent = [-1] * p
    for root in range(p):
        if colour[root]:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        colour[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[node] = 2
                stack.pop()
                continue
            if colour[nxt] == 1:
                cycle = [nxt]
                cur = node
                while cur != nxt:
                    cycle.append(cur)
                    cur = parent[cur]
                cycle.append(nxt)
                cycle.reverse()
                raise CycleError(cycle)
            if colour[nxt] == 0:
                colour[nxt] = 1
                parent[nxt] = node
                stack.append((nxt, iter(sorted(succ[nxt]))))

    reach = [[False] * p for _ in range(p)]
    for i in range(p):
        for j in succ[i]:
            reach[i][j] = True
    for k in range(p):
        for i in range(p):
            if reach[i][k]:
                rk = reach[k]
                ri = reach[i]
                for j in range(p):
                    if rk[j]:
                        ri[j] = True
    return Poset(p, tuple(tuple(row) for row in reach))


EMPTY = Poset(0, ())


def complete_multilayer(sizes: Sequence[int]) -> Poset:
    """Complete layered poset K_{n1,...,nk}; ``sizes[0]`` is the bottom layer."""
    if not sizes:
        raise ValueError("need at least one layer")
    if any(s < 1 for s in sizes):
        raise ValueError("layer sizes must be positive")
    layers = []
    start = 0
    for s in sizes:
        layers.append(range(start, start + s))
        start += s
    pairs = [(a, b) for lo, hi in zip(layers, layers[1:]) for a in lo for b in hi]
    return make_poset(start, pairs)


def chain(k: int) -> Poset:
    return complete_multilayer([1] * k) if k else EMPTY


def antichain(k: int) -> Poset:
    return complete_multilayer([k]) if k else EMPTY


def point() -> Poset:
    return chain(1)


def linear_sum(top: Poset, bottom: Poset) -> Poset:
    """Every element of ``bottom`` strictly below every element of ``top``.

    Bottom elements keep labels ``0 .. len(bottom)-1``; top elements follow.
    """
    if top.size == 0:
        return bottom
    if bottom.size == 0:
        return top
    b = bottom.size
    pairs = list(bottom.pairs())
    pairs += [(i + b, j + b) for i, j in top.pairs()]
    pairs += [(i, j + b) for i in range(b) for j in range(top.size)]
    return make_poset(b + top.size, pairs)


def disjoint_union(*posets: Poset) -> Poset:
    pairs = []
    offset = 0
    for q in posets:
        pairs += [(i + offset, j + offset) for i, j in q.pairs()]
        offset += q.size
    return make_poset(offset, pairs)


def dual(P: Poset) -> Poset:
    return Poset(P.size, tuple(tuple(P.lt[j][i] for j in range(P.size)) for i in range(P.size)))


def dot(P: Poset) -> Poset:
    """P with a new element above everything."""
    return linear_sum(point(), P)


def _signature(P: Poset, i: int) -> tuple[int, int, int]:
    return (P.down[i].bit_count(), P.up[i].bit_count(), P.levels[i])


def find_isomorphism(P: Poset, Q: Poset) -> Optional[list[int]]:
    """An order isomorphism ``P -> Q`` as a list, or None."""
    if P.size != Q.size or len(P.pairs()) != len(Q.pairs()):
        return None
    sp = [_signature(P, i) for i in range(P.size)]
    sq = [_signature(Q, i) for i in range(Q.size)]
    if sorted(sp) != sorted(sq):
        return None
    order = sorted(range(P.size), key=lambda e: (P.levels[e], e))
    image = [-1] * P.size
    used = [False] * Q.size

    def extend(t: int) -> bool:
        if t == len(order):
            return True
        a = order[t]
        for b in range(Q.size):
            if used[b] or sq[b] != sp[a]:
                continue
            ok = True
            for s in range(t):
                u = order[s]
                w = image[u]
                if P.lt[a][u] != Q.lt[b][w] or P.lt[u][a] != Q.lt[w][b]:
                    ok = False
                    break
            if ok:
                image[a] = b
                used[b] = True
                if extend(t + 1):
                    return True
                used[b] = False
        image[a] = -1
        return False

    return image if extend(0) else None


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return find_isomorphism(P, Q) is not None


class Extremes(NamedTuple):
    has_unique_minimal: bool
    has_unique_maximal: bool


def unique_extremes(P: Poset) -> Extremes:
    if P.size == 0:
        raise ValueError("the empty poset has no extremes")
    return Extremes(len(P.minimal) == 1, len(P.maximal) == 1)


def has_uctp(P: Poset) -> bool:
    """Every cover pair has a twin: a third element comparable with exactly one of them."""
    for x, y in P.covers():
        if not any(
            z not in (x, y) and P.comparable(z, x) != P.comparable(z, y) for z in range(P.size)
        ):
            return False
    return True


def has_legs(P: Poset) -> bool:
    p = P.size
    everything = (1 << p) - 1
    for h in range(p):
        below = P.down[h]
        for l1, l2 in itertools.combinations(range(p), 2):
            if h in (l1, l2) or not (below >> l1 & 1 and below >> l2 & 1):
                continue
            if P.comparable(l1, l2):
                continue
            rest = everything & ~((1 << l1) | (1 << l2) | (1 << h))
            if rest & ~P.up[h] == 0:
                return True
    return False


@dataclass(frozen=True)
class SpecialDecomposition:
    isolated: int
    core: Poset
    core_elements: tuple[int, ...]
    core_min: int
    core_max: int


def decompose_special(P: Poset) -> Optional[SpecialDecomposition]:
    """Split off an isolated element leaving a core with unique bottom and top."""
    if P.size < 2:
        return None
    for iso in range(P.size):
        if P.up[iso] or P.down[iso]:
            continue
        rest = tuple(e for e in range(P.size) if e != iso)
        core = P.restrict(rest)
        if len(core.minimal) == 1 and len(core.maximal) == 1:
            return SpecialDecomposition(
                iso, core, rest, rest[core.minimal[0]], rest[core.maximal[0]]
            )
    return None


def is_special(P: Poset) -> bool:
    return decompose_special(P) is not None


def specialize(P: Poset) -> Poset:
    """Embed P in a special poset by adding a bottom, a top and an isolated element as needed."""
    ext = unique_extremes(P)
    pairs = list(P.pairs())
    p = P.size
    original = range(P.size)
    if not ext.has_unique_minimal:
        pairs += [(p, i) for i in original]
        bottom = p
        p += 1
    else:
        bottom = None
    if not ext.has_unique_maximal:
        pairs += [(i, p) for i in original]
        if bottom is not None:
            pairs.append((bottom, p))
        p += 1
    return make_poset(p + 1, pairs)


def naturally_labelled_posets(p: int) -> Iterator[Poset]:
    """Every poset on p elements whose natural order 0 < 1 < ... is a linear extension.

    Each isomorphism class appears at least once.
    """
    slots = list(itertools.combinations(range(p), 2))
    for bits in range(1 << len(slots)):
        rel = {slots[t] for t in range(len(slots)) if bits >> t & 1}
        if all((i, k) in rel for (i, j) in rel for (j2, k) in rel if j == j2):
            yield make_poset(p, sorted(rel))


def poset_classes(p: int) -> list[Poset]:
    """One representative per isomorphism class on p elements."""
    reps: list[Poset] = []
    for q in naturally_labelled_posets(p):
        if not any(is_isomorphic(q, r) for r in reps):
            reps.append(q)
    return reps
