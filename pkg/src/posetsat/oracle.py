"""Exhaustive saturation and percolation numbers at tiny ground sizes.

Both searches deepen over the family size k. Sets that can never be part of
a copy (the empty set without a unique minimum, the full set without a unique
maximum) are forced into every candidate family.

Symmetry reduction: every family is equivalent under a permutation of the
ground set to one containing an initial segment ``[t]`` where ``t`` is the
smallest size among its optional members. Only such families are searched.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .family import SetFamily, copy_with_extra, full_mask
from .percolation import percolates
from .poset import Poset, unique_extremes
from .saturation import InfeasibleError

DEFAULT_SAT_MAX_N = 5
DEFAULT_PERC_MAX_N = 8
DEFAULT_PERC_MAX_P = 3
DEFAULT_ENUM_MAX_N = 4


@dataclass(frozen=True)
class SearchLimits:
    max_candidate_size: Optional[int] = None
    time_budget: Optional[float] = None
    symmetry_reduction: bool = True


@dataclass
class OracleResult:
    size: int
    witness: Optional[SetFamily]
    exact: bool = True
    # (k, families examined) per searched size
    transcript: list[tuple[int, int]] = field(default_factory=list)

    @property
    def label(self) -> str:
        return "exact" if self.exact else "lower bound only"


class _OutOfBudget(Exception):
    pass


def mandatory_sets(P: Poset, n: int) -> list[int]:
    """Sets no induced copy of P can use, hence members of every saturated or percolating family."""
    ext = unique_extremes(P)
    out = []
    if not ext.has_unique_minimal:
        out.append(0)
    if not ext.has_unique_maximal:
        out.append(full_mask(n))
    return sorted(set(out))


def _family_groups(n: int, forced: list[int], r: int, symmetry: bool) -> list[Iterator[list[int]]]:
    """Candidate member lists with r optional members, grouped by the first chosen member."""
    pool = [s for s in range(1 << n) if s not in forced]
    if r == 0:
        return [iter([sorted(forced)])]

    def group(first: int, rest: list[int]) -> Iterator[list[int]]:
        for combo in itertools.combinations(rest, r - 1):
            yield sorted(forced + [first] + list(combo))

    if not symmetry:
        return [group(c, pool[i + 1 :]) for i, c in enumerate(pool)]
    out = []
    for t in range(n + 1):
        pivot = (1 << t) - 1
        if pivot in forced:
            continue
        out.append(group(pivot, [s for s in pool if s != pivot and s.bit_count() >= t]))
    return out


class _Clock:
    def __init__(self, budget: Optional[float]):
        self.deadline = None if budget is None else time.monotonic() + budget

    def tick(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _OutOfBudget


def _first_hit(fn, items, workers: int):
    """fn over items, first non-None result in item order; threads never change the answer."""
    items = list(items)
    if workers <= 1:
        for it in items:
            got = fn(it)
            if got is not None:
                return got
        return None
    with ThreadPoolExecutor(workers) as pool:
        for got in pool.map(fn, items):
            if got is not None:
                return got
    return None


def _saturated_search(
    P: Poset,
    n: int,
    k: int,
    forced: list[int],
    symmetry: bool,
    clock: _Clock,
    counter: list[int],
    workers: int = 1,
) -> Optional[list[int]]:
    """First saturated family of size k, by DFS with freeness and coverability pruning."""
    r = k - len(forced)
    if r < 0:
        return None
    all_sets = [s for s in range(1 << n) if s not in forced]

    def coverable(S: int, fam: list[int]) -> bool:
        return copy_with_extra(fam, S, P) is not None

    def dfs(prefix: list[int], pool: list[int], slots: int) -> Optional[list[int]]:
        clock.tick()
        if slots == 0:
            counter[0] += 1
            inside = set(prefix)
            if all(coverable(S, prefix) for S in range(1 << n) if S not in inside):
                return prefix
            return None
        for i, c in enumerate(pool):
            if len(pool) - i < slots:
                break
            if copy_with_extra(prefix, c, P) is None:
                got = dfs(sorted(prefix + [c]), pool[i + 1 :], slots - 1)
                if got is not None:
                    return got
            # c is excluded from here on; it must stay coverable by what is left
            if not coverable(c, sorted(prefix + pool[i + 1 :])):
                break
        return None

    # the forced sets never hold a copy on their own: two sets form a chain,
    # and a forced set means P has two minimal or two maximal elements
    base = sorted(forced)
    if not symmetry or r == 0:
        return dfs(base, all_sets, r)

    def branch(t: int) -> Optional[list[int]]:
        pivot = (1 << t) - 1
        if pivot in forced or copy_with_extra(base, pivot, P) is not None:
            return None
        prefix = sorted(base + [pivot])
        pool = [s for s in all_sets if s != pivot and s.bit_count() >= t]
        dropped = [s for s in all_sets if s.bit_count() < t]
        best = sorted(prefix + pool)
        if not all(coverable(S, best) for S in dropped):
            return None
        return dfs(prefix, pool, r - 1)

    return _first_hit(branch, range(n + 1), workers)


def min_saturated(
    P: Poset,
    n: int,
    limits: SearchLimits = SearchLimits(),
    *,
    max_n: int = DEFAULT_SAT_MAX_N,
    workers: int = 1,
) -> OracleResult:
    """Smallest P-saturated family on [n] by iterative deepening over its size."""
    if P.size < 1:
        raise ValueError("poset must be non-empty")
    if n > max_n:
        raise InfeasibleError(f"saturation oracle capped at n <= {max_n}, got n = {n}")
    forced = mandatory_sets(P, n)
    clock = _Clock(limits.time_budget)
    transcript = []
    for k in range(len(forced), (1 << n) + 1):
        if limits.max_candidate_size is not None and k > limits.max_candidate_size:
            return OracleResult(k, None, False, transcript)
        counter = [0]
        try:
            fam = _saturated_search(
                P, n, k, forced, limits.symmetry_reduction, clock, counter, workers
            )
        except _OutOfBudget:
            transcript.append((k, counter[0]))
            return OracleResult(k, None, False, transcript)
        transcript.append((k, counter[0]))
        if fam is not None:
            return OracleResult(k, SetFamily.of(n, fam), True, transcript)
    raise AssertionError("the whole cube minus nothing is always saturated")


def min_percolating(
    P: Poset,
    n: int,
    limits: SearchLimits = SearchLimits(),
    *,
    max_n: int = DEFAULT_PERC_MAX_N,
    max_p: int = DEFAULT_PERC_MAX_P,
    workers: int = 1,
) -> OracleResult:
    """Smallest P-percolating family on [n] by iterative deepening over its size."""
    if P.size < 1:
        raise ValueError("poset must be non-empty")
    if n > max_n or P.size > max_p:
        raise InfeasibleError(
            f"percolation oracle capped at n <= {max_n}, |P| <= {max_p}; got n = {n}, |P| = {P.size}"
        )
    forced = mandatory_sets(P, n)
    clock = _Clock(limits.time_budget)
    transcript = []
    # below p-1 sets no first copy can form, unless nothing is missing
    start = max(len(forced), min(P.size - 1, 1 << n))
    for k in range(start, (1 << n) + 1):
        if limits.max_candidate_size is not None and k > limits.max_candidate_size:
            return OracleResult(k, None, False, transcript)
        seen = [0]

        def branch(group):
            for fam in group:
                clock.tick()
                seen[0] += 1
                F = SetFamily(n, tuple(fam))
                if percolates(F, P):
                    return F
            return None

        groups = _family_groups(n, forced, k - len(forced), limits.symmetry_reduction)
        try:
            F = _first_hit(branch, groups, workers)
        except _OutOfBudget:
            transcript.append((k, seen[0]))
            return OracleResult(k, None, False, transcript)
        transcript.append((k, seen[0]))
        if F is not None:
            return OracleResult(k, F, True, transcript)
    raise AssertionError("the whole cube always percolates")


def all_saturated_of_size(
    P: Poset, n: int, k: int, *, max_n: int = DEFAULT_ENUM_MAX_N
) -> list[SetFamily]:
    """Every P-saturated family on [n] with exactly k members, in canonical order."""
    if n > max_n:
        raise InfeasibleError(f"enumeration capped at n <= {max_n}, got n = {n}")
    forced = mandatory_sets(P, n)
    r = k - len(forced)
    if r < 0:
        return []
    pool = [s for s in range(1 << n) if s not in forced]
    out = []

    def rec(prefix: list[int], start: int, slots: int) -> None:
        if slots == 0:
            members = set(prefix)
            if all(
                copy_with_extra(prefix, S, P) is not None
                for S in range(1 << n)
                if S not in members
            ):
                out.append(SetFamily(n, tuple(prefix)))
            return
        for i in range(start, len(pool) - slots + 1):
            c = pool[i]
            if copy_with_extra(prefix, c, P) is None:
                rec(sorted(prefix + [c]), i + 1, slots - 1)

    base = sorted(forced)
    if base and copy_with_extra(base[:-1], base[-1], P) is not None:
        return []
    rec(base, 0, r)
    return sorted(out, key=lambda F: F.members)
