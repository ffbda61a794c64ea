"""Freeness and saturation verdicts with certificates."""

from __future__ import annotations

import bisect
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .family import (
    Embedding,
    SetFamily,
    copy_in,
    copy_with_extra,
    is_proper_subset,
)
from .poset import Poset

#: largest ground size for exhaustive checks unless overridden
DEFAULT_MAX_N = 16

ORDERS = ("asc", "desc", "size", "random")


class InfeasibleError(RuntimeError):
    """The requested exhaustive computation exceeds the configured cap."""


class NotFreeError(ValueError):
    def __init__(self, embedding: Embedding):
        self.embedding = embedding
        super().__init__(f"family already contains a copy: {embedding.to_lists()}")


def check_cap(n: int, max_n: Optional[int]) -> None:
    limit = DEFAULT_MAX_N if max_n is None else max_n
    if n > limit:
        raise InfeasibleError(
            f"exhaustive saturation check infeasible: n={n} exceeds cap {limit}"
        )


class Freeness(NamedTuple):
    free: bool
    witness: Optional[Embedding]


@dataclass(frozen=True)
class SaturationVerdict:
    """``is_saturated`` is None when only a random sample was checked and nothing was refuted."""

    is_free: bool
    violation: Optional[Embedding]
    is_saturated: Optional[bool]
    missing: Optional[int]
    checked: int
    sampled: bool = False

    @property
    def status(self) -> str:
        if not self.is_free:
            return "not free"
        if self.missing is not None:
            return "not saturated"
        return "not refuted" if self.sampled else "saturated"


def is_free(F: SetFamily, P: Poset, backend: Optional[str] = None) -> Freeness:
    res = copy_in(F.members, P, backend=backend)
    if res is None:
        return Freeness(True, None)
    return Freeness(False, Embedding(res))


def creates_copy(F: SetFamily, S: int, P: Poset, backend: Optional[str] = None) -> Optional[Embedding]:
    """Copy of P in F + {S} that contains S (S may or may not be in F)."""
    res = copy_with_extra(F.members, S, P, backend)
    return None if res is None else Embedding(res)


def _first_uncovered(members, candidates, P, backend) -> Optional[int]:
    for S in candidates:
        if copy_with_extra(members, S, P, backend) is None:
            return S
    return None


def is_saturated(
    F: SetFamily,
    P: Poset,
    *,
    max_n: Optional[int] = None,
    sample: Optional[int] = None,
    seed: int = 0,
    workers: int = 1,
    backend: Optional[str] = None,
) -> SaturationVerdict:
    """Freeness, then a copy containing S in F + {S} for every S outside F.

    ``sample`` checks that many random missing sets instead of all of them;
    the verdict is then "not refuted" at best. ``workers`` splits the scan
    over threads (the compiled kernel releases the GIL); the reported missing
    set is always the smallest one.
    """
    free, witness = is_free(F, P, backend)
    if not free:
        return SaturationVerdict(False, witness, False, None, 0, sample is not None)
    if sample is None:
        check_cap(F.n, max_n)
        candidates = list(F.missing())
    else:
        rng = random.Random(seed)
        full = 1 << F.n
        candidates = set()
        budget = min(sample, full - len(F))
        while len(candidates) < budget:
            s = rng.randrange(full)
            if s not in F:
                candidates.add(s)
        candidates = sorted(candidates)

    members = list(F.members)
    if workers <= 1 or len(candidates) < 2 * workers:
        missing = _first_uncovered(members, candidates, P, backend)
    else:
        chunks = [candidates[i::workers] for i in range(workers)]
        with ThreadPoolExecutor(workers) as pool:
            found = list(pool.map(lambda c: _first_uncovered(members, c, P, backend), chunks))
        hits = [s for s in found if s is not None]
        missing = min(hits) if hits else None
    if missing is not None:
        return SaturationVerdict(True, None, False, missing, len(candidates), sample is not None)
    return SaturationVerdict(
        True, None, None if sample is not None else True, None, len(candidates), sample is not None
    )


def enumeration_order(n: int, order: str = "asc", seed: int = 0) -> list[int]:
    """All subsets of [n] in one of the supported scan orders."""
    sets = list(range(1 << n))
    if order == "asc":
        return sets
    if order == "desc":
        return sets[::-1]
    if order == "size":
        return sorted(sets, key=lambda s: (s.bit_count(), s))
    if order == "random":
        random.Random(seed).shuffle(sets)
        return sets
    raise ValueError(f"unknown order {order!r}; expected one of {ORDERS}")


def greedy_complete(
    seed: SetFamily,
    P: Poset,
    order: str | Iterable[int] = "asc",
    *,
    rng_seed: int = 0,
    max_n: Optional[int] = None,
    backend: Optional[str] = None,
) -> SetFamily:
    """Add every set, in scan order, that keeps the family P-free.

    The result is P-saturated: a skipped set already closed a copy, and the
    family only grows afterwards.
    """
    check_cap(seed.n, max_n)
    free, witness = is_free(seed, P, backend)
    if not free:
        raise NotFreeError(witness)
    scan = enumeration_order(seed.n, order, rng_seed) if isinstance(order, str) else list(order)
    members = list(seed.members)
    present = set(members)
    for S in scan:
        if S in present:
            continue
        if copy_with_extra(members, S, P, backend) is None:
            bisect.insort(members, S)
            present.add(S)
    return SetFamily(seed.n, tuple(members))


def sets_above_copy(
    F: SetFamily, P: Poset, *, max_n: Optional[int] = None, backend: Optional[str] = None
) -> SetFamily:
    """All S in P([n]) lying strictly above every set of some induced copy of P in F."""
    check_cap(F.n, max_n)
    out = []
    for S in range(1 << F.n):
        below = [m for m in F.members if is_proper_subset(m, S)]
        if len(below) >= P.size and copy_in(below, P, backend=backend) is not None:
            out.append(S)
    return SetFamily(F.n, tuple(out))


def sets_below_copy(
    F: SetFamily, P: Poset, *, max_n: Optional[int] = None, backend: Optional[str] = None
) -> SetFamily:
    """All S in P([n]) lying strictly below every set of some induced copy of P in F."""
    check_cap(F.n, max_n)
    out = []
    for S in range(1 << F.n):
        above = [m for m in F.members if is_proper_subset(S, m)]
        if len(above) >= P.size and copy_in(above, P, backend=backend) is not None:
            out.append(S)
    return SetFamily(F.n, tuple(out))

