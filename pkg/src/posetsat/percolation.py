"""Percolating families: canonical copies, explicit schedules and closures.

A family F percolates for P when the sets outside F can be added one at a
time, each new set completing an induced copy of P that contains it. The
explicit construction works for ``n >= 3p - 1``; every step of the
schedule it produces carries the embedding that justifies it.
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .family import (
    Embedding,
    SetFamily,
    copy_with_extra,
    full_mask,
    is_induced_copy,
    mask_of,
)
from .poset import Poset, dual, unique_extremes
from .saturation import check_cap


@dataclass(frozen=True)
class PercolationSchedule:
    poset: Poset
    n: int
    initial: SetFamily
    steps: tuple[tuple[int, Embedding], ...]

    def added(self) -> list[int]:
        return [s for s, _ in self.steps]


@dataclass(frozen=True)
class ScheduleCheck:
    ok: bool
    index: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def canonical_copy(P: Poset, points: Sequence[int]) -> list[int]:
    """Set for element j: the points of every element at or below j.

    ``points`` are distinct 1-based ground elements; element i is tied to the
    i-th smallest point.
    """
    if len(points) != P.size:
        raise ValueError(f"need {P.size} points, got {len(points)}")
    pts = sorted(points)
    if len(set(pts)) != len(pts) or (pts and pts[0] < 1):
        raise ValueError("points must be distinct positive integers")
    sets = []
    for j in range(P.size):
        sets.append(mask_of(pts[i] for i in range(P.size) if i == j or P.lt[i][j]))
    assert is_induced_copy(P, sets)
    return sets


def _assigned_copy(P: Poset, where: Sequence[int]) -> list[int]:
    """Canonical copy with element i placed on point ``where[i]`` (any bijection)."""
    return [
        mask_of(where[i] for i in range(P.size) if i == j or P.lt[i][j]) for j in range(P.size)
    ]


def formula(P: Poset) -> int:
    """Minimum size of a percolating family for n >= 3p - 1."""
    ext = unique_extremes(P)
    p = P.size
    if ext.has_unique_minimal and ext.has_unique_maximal:
        return p - 1
    if not ext.has_unique_minimal and not ext.has_unique_maximal:
        return p + 1
    return p


class _Builder:
    def __init__(self, P: Poset, n: int, initial: Iterable[int]):
        self.P = P
        self.n = n
        self.present = set(initial)
        self.steps: list[tuple[int, Embedding]] = []
        # top-down: every prefix is an up-set
        self.top_down = sorted(range(P.size), key=lambda e: (-P.levels[e], e))

    def add(self, target: int, witness: Sequence[int]) -> None:
        if target in self.present:
            return
        assert target in witness
        self.steps.append((target, Embedding(tuple(witness))))
        self.present.add(target)

    def sweep(self, base: Sequence[int], extra: int, upto: Optional[int] = None) -> None:
        """Join ``extra`` onto the copy ``base`` level by level from the top.

        Stops after element ``upto`` when given; only its up-set is visited then.
        """
        P = self.P
        current = list(base)
        order = self.top_down
        if upto is not None:
            order = [e for e in order if e == upto or P.lt[upto][e]]
        for j in order:
            current[j] = base[j] | extra
            self.add(current[j], current)


def percolating_family(P: Poset, n: int) -> PercolationSchedule:
    """Minimum percolating family for P on [n] with a full witnessed schedule."""
    p = P.size
    if p < 1:
        raise ValueError("poset must be non-empty")
    if n < 3 * p - 1:
        raise ValueError(f"need n >= 3p - 1 = {3 * p - 1}, got n = {n}")
    full = full_mask(n)
    ext = unique_extremes(P)

    if p == 1:
        steps = tuple((s, Embedding((s,))) for s in range(1 << n))
        return PercolationSchedule(P, n, SetFamily.empty(n), steps)

    A = canonical_copy(P, range(1, p + 1))
    initial = set(A[1:])
    if not ext.has_unique_minimal:
        initial.add(0)
    if not ext.has_unique_maximal:
        initial.add(full)
    b = _Builder(P, n, initial)

    low = full_mask(p)
    high = full ^ low
    k = min(P.minimal)

    # phase 0: the missing member of the canonical copy
    b.add(A[0], A)

    # phase 1: A | A_j for every non-empty A outside [p]
    outside = [s for s in range(1 << n) if s and s & low == 0]
    for a in outside:
        b.sweep(A, a)

    # phase 2: A itself, standing in for the minimal singleton A_k
    for a in outside:
        w = [A[i] | a if P.lt[k][i] else A[i] for i in range(p)]
        w[k] = a
        b.add(a, w)

    # phase 3: the same on the copy over {p+1..2p}, bringing in P([p])
    B = canonical_copy(P, range(p + 1, 2 * p + 1))
    for x in range(1, 1 << p):
        if x in b.present:
            continue
        b.sweep(B, x, upto=k)
        w = [B[i] | x if P.lt[k][i] else B[i] for i in range(p)]
        w[k] = x
        b.add(x, w)

    outside_points = list(range(p + 1, n + 1))
    rest = [s for s in range(1 << n) if s & low and s & high and s != full]

    # phase 4: sets mixing both halves
    for target in rest:
        if target in b.present:
            continue
        a = target & high
        x = target & low
        if a == high:
            continue
        if a.bit_count() <= p - 1:
            _phase_small(b, a, x, outside_points)
        else:
            _phase_large(b, target, a, outside_points)
    for target in rest:
        if target in b.present:
            continue
        _phase_full_outside(b, target, target & low)

    # phase 5: the empty and full sets when they can close a copy
    if 0 not in b.present:
        (m,) = P.minimal
        w = list(A)
        w[m] = 0
        b.add(0, w)
    if full not in b.present:
        (m,) = P.maximal
        w = list(A)
        w[m] = full
        b.add(full, w)

    return PercolationSchedule(P, n, SetFamily.of(n, initial), tuple(b.steps))


def _phase_small(b: _Builder, a: int, x: int, outside_points: list[int]) -> None:
    """|A| <= p-1: fresh-point canonical copy with A standing in for a minimal singleton."""
    P = b.P
    free_pts = [q for q in outside_points if not a >> (q - 1) & 1][: P.size]
    C = canonical_copy(P, free_pts)
    k = min(P.minimal)
    pt = 1 << (free_pts[k] - 1)
    D = [(c & ~pt) | a if c & pt else c for c in C]
    b.sweep(D, x, upto=k)


def _complement_copy(P: Poset, points: list[int], pin: int, pinned_element: int) -> list[int]:
    """Copy of P on ``points`` whose maximal element ``pinned_element`` misses only ``pin``.

    Built as complements (inside the point set) of a canonical copy of the
    dual, with the bijection chosen lexicographically subject to the pin.
    """
    others = [q for q in sorted(points) if q != pin]
    where = []
    it = iter(others)
    for i in range(P.size):
        where.append(pin if i == pinned_element else next(it))
    ground = mask_of(points)
    E = _assigned_copy(dual(P), where)
    return [ground ^ e for e in E]


def _phase_large(b: _Builder, target: int, a: int, outside_points: list[int]) -> None:
    """|A| >= p, A short of {p+1..n}: replace a co-singleton maximal set by the target."""
    P = b.P
    p = P.size
    l = next(q for q in outside_points if not a >> (q - 1) & 1)
    a_pts = [q for q in outside_points if a >> (q - 1) & 1]
    m = min(P.maximal)
    G = _complement_copy(P, [l] + a_pts[: p - 1], l, m)
    if len(P.minimal) == 1:
        # the unique minimum maps to the empty set; lift the copy by a point of A
        z = 1 << (a_pts[p - 1] - 1)
        G = [g | z for g in G]
    w = list(G)
    w[m] = target
    b.add(target, w)


def _phase_full_outside(b: _Builder, target: int, x: int) -> None:
    """A = {p+1..n}: same trick on {k, p+1..2p-1} with k a point of [p] outside X."""
    P = b.P
    p = P.size
    kpt = next(q for q in range(1, p + 1) if not x >> (q - 1) & 1)
    pts = [kpt] + list(range(p + 1, 2 * p))
    m = min(P.maximal)
    G = _complement_copy(P, pts, kpt, m)
    if len(P.minimal) == 1:
        z = 1 << (2 * p - 1)
        G = [g | z for g in G]
    w = list(G)
    w[m] = target
    b.add(target, w)


def verify_schedule(s: PercolationSchedule) -> ScheduleCheck:
    """Replay a schedule, re-validating each witness against the family built so far."""
    current = set(s.initial.members)
    full = 1 << s.n
    for idx, (S, emb) in enumerate(s.steps):
        if S in current:
            return ScheduleCheck(False, idx, "set already present")
        if not 0 <= S < full:
            return ScheduleCheck(False, idx, "set outside the ground set")
        if S not in emb.sets:
            return ScheduleCheck(False, idx, "witness does not use the added set")
        if any(t != S and t not in current for t in emb.sets):
            return ScheduleCheck(False, idx, "witness uses a set not yet present")
        if not is_induced_copy(s.poset, emb.sets):
            return ScheduleCheck(False, idx, "witness is not an induced copy")
        current.add(S)
    if len(current) != full:
        return ScheduleCheck(False, len(s.steps), "schedule does not cover every set")
    return ScheduleCheck(True)


def percolation_closure(
    F: SetFamily,
    P: Poset,
    *,
    order: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
    max_n: Optional[int] = None,
    backend: Optional[str] = None,
) -> SetFamily:
    """Least family containing F closed under adding sets that complete a copy of P.

    The fixpoint does not depend on the scan order; ``order`` or ``seed``
    only changes how it is reached.
    """
    check_cap(F.n, max_n)
    if order is None:
        order = list(range(1 << F.n))
        if seed is not None:
            random.Random(seed).shuffle(order)
    members = sorted(F.members)
    present = set(members)
    pending = [s for s in order if s not in present]

    changed = True
    while changed and pending:
        changed = False
        left = []
        for S in pending:
            if copy_with_extra(members, S, P, backend) is not None:
                bisect.insort(members, S)
                present.add(S)
                changed = True
            else:
                left.append(S)
        pending = left
    return SetFamily(F.n, tuple(members))


def percolates(F: SetFamily, P: Poset, **kwargs) -> bool:
    return len(percolation_closure(F, P, **kwargs)) == 1 << F.n
