"""Set families over ``[n]`` and the induced-copy engine.

Subsets of ``[n]`` are plain ``int`` bitmasks: ground element ``i`` (1-based,
as in all I/O) lives at bit ``i - 1``. Python ints are unbounded, so there is
no hard cap on ``n``; the compiled kernel handles masks up to 64 bits and
anything wider runs on the pure-Python kernel.
"""

from __future__ import annotations

import bisect
import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from . import _search
from .poset import Poset

try:
    if os.environ.get("POSETSAT_PURE"):
        raise ImportError("pure-Python kernel forced")
    from . import _csearch
except ImportError:
    _csearch = None

#: name of the kernel used by default ("compiled" or "python")
BACKEND = "compiled" if _csearch is not None else "python"


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based ground elements."""
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"ground elements are 1-based, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> list[int]:
    """Sorted 1-based elements of a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_proper_subset(a: int, b: int) -> bool:
    return a != b and a & b == a


def compress(mask: int, points: Sequence[int]) -> int:
    """Re-index ``mask`` onto ``points``: the t-th point (1-based) becomes element t+1."""
    out = 0
    for t, x in enumerate(points):
        if mask >> (x - 1) & 1:
            out |= 1 << t
    return out


def expand(mask: int, points: Sequence[int]) -> int:
    """Inverse of :func:`compress`."""
    out = 0
    for t, x in enumerate(points):
        if mask >> t & 1:
            out |= 1 << (x - 1)
    return out


@dataclass(frozen=True)
class SetFamily:
    """Duplicate-free family of subsets of ``[n]``, stored in ascending mask order."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ground size must be non-negative")
        full = full_mask(self.n)
        prev = -1
        for m in self.members:
            if m <= prev:
                raise ValueError("members must be strictly ascending (use SetFamily.of)")
            if m & ~full:
                raise ValueError(f"member {elements_of(m)} is not a subset of [{self.n}]")
            prev = m

    @classmethod
    def of(cls, n: int, masks: Iterable[int]) -> SetFamily:
        return cls(n, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls.of(n, (mask_of(s) for s in sets))

    @classmethod
    def empty(cls, n: int) -> SetFamily:
        return cls(n, ())

    @classmethod
    def power_set(cls, n: int) -> SetFamily:
        return cls(n, tuple(range(1 << n)))

    @cached_property
    def _index(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self._index

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, {[elements_of(m) for m in self.members]})"

    def add(self, *masks: int) -> SetFamily:
        return SetFamily.of(self.n, self.members + masks)

    def remove(self, *masks: int) -> SetFamily:
        drop = set(masks)
        return SetFamily(self.n, tuple(m for m in self.members if m not in drop))

    def union(self, other: SetFamily) -> SetFamily:
        if other.n != self.n:
            raise ValueError("ground sizes differ")
        return SetFamily.of(self.n, self.members + other.members)

    def difference(self, other: SetFamily) -> SetFamily:
        return self.remove(*other.members)

    def complements(self) -> SetFamily:
        full = full_mask(self.n)
        return SetFamily.of(self.n, (full ^ m for m in self.members))

    def missing(self) -> Iterator[int]:
        """Subsets of ``[n]`` not in the family, ascending."""
        idx = self._index
        return (s for s in range(1 << self.n) if s not in idx)

    def restrict(self, points: Sequence[int]) -> SetFamily:
        """Members inside ``points``, relabelled onto ``[len(points)]``."""
        ground = mask_of(points)
        return SetFamily.of(
            len(points), (compress(m, points) for m in self.members if m & ~ground == 0)
        )

    def to_lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]


@dataclass(frozen=True)
class Embedding:
    """``sets[i]`` is the member assigned to poset element ``i``."""

    sets: tuple[int, ...]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.sets)

    def to_lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.sets]


def is_induced_copy(P: Poset, sets: Sequence[int]) -> bool:
    """Whether ``sets`` (indexed by element) is an injective induced copy of P."""
    if len(sets) != P.size or len(set(sets)) != P.size:
        return False
    for i in range(P.size):
        for j in range(P.size):
            if i != j and P.lt[i][j] != is_proper_subset(sets[i], sets[j]):
                return False
    return True


def validate_embedding(P: Poset, emb: Embedding, family: Optional[SetFamily] = None) -> bool:
    """Re-check an embedding from scratch, optionally also requiring its image in ``family``."""
    if not is_induced_copy(P, emb.sets):
        return False
    return family is None or all(s in family for s in emb.sets)


def _kernel(backend: Optional[str], members: Sequence[int]):
    if backend is None:
        backend = BACKEND
    if backend == "compiled":
        if _csearch is None:
            raise RuntimeError("compiled kernel is not available")
        if members and members[-1] >> 64:
            return _search.find_copy
        return _csearch.find_copy
    if backend == "python":
        return _search.find_copy
    raise ValueError(f"unknown backend {backend!r}")


def copy_in(
    members: Sequence[int],
    P: Poset,
    forced: Optional[int] = None,
    backend: Optional[str] = None,
) -> Optional[tuple[int, ...]]:
    """Low-level search over an ascending member list; returns the sets of the copy.

    ``forced`` is a mask that must be among ``members`` and in the copy.
    """
    fi = -1
    if forced is not None:
        fi = bisect.bisect_left(members, forced)
        if fi == len(members) or members[fi] != forced:
            raise ValueError("forced set is not a member")
    if members and not isinstance(members, list):
        members = list(members)
    res = _kernel(backend, members)(members, P.size, P.relation_codes, P.linear_extension, fi)
    if res is None:
        return None
    return tuple(members[i] for i in res)


def copy_with_extra(
    members: Sequence[int], extra: int, P: Poset, backend: Optional[str] = None
) -> Optional[tuple[int, ...]]:
    """Induced copy of P inside ``members + {extra}`` that uses ``extra``."""
    lst = list(members)
    pos = bisect.bisect_left(lst, extra)
    if pos == len(lst) or lst[pos] != extra:
        lst.insert(pos, extra)
    return copy_in(lst, P, extra, backend)


def find_induced_copy(
    F: SetFamily,
    P: Poset,
    must_include: Optional[int] = None,
    backend: Optional[str] = None,
) -> Optional[Embedding]:
    """First induced copy of P in F (canonical candidate order), or None.

    With ``must_include`` the copy must contain that member.
    """
    if must_include is not None and must_include not in F:
        raise ValueError("must_include must be a member of the family")
    res = copy_in(F.members, P, must_include, backend)
    return None if res is None else Embedding(res)


def iter_induced_copies(F: SetFamily, P: Poset) -> Iterator[Embedding]:
    """Every induced copy of P in F (as element-indexed tuples); desk scale only."""
    order = P.linear_extension
    members = F.members
    assigned: dict[int, int] = {}

    def rec(t: int) -> Iterator[Embedding]:
        if t == P.size:
            yield Embedding(tuple(assigned[i] for i in range(P.size)))
            return
        v = order[t]
        used = set(assigned.values())
        for b in members:
            if b in used:
                continue
            if all(
                P.lt[v][u] == is_proper_subset(b, a) and P.lt[u][v] == is_proper_subset(a, b)
                for u, a in assigned.items()
            ):
                assigned[v] = b
                yield from rec(t + 1)
                del assigned[v]

    return rec(0)


def separates(F: SetFamily) -> Optional[tuple[int, int]]:
    """Smallest pair ``(i, j)`` of ground elements no member separates, or None."""
    if F.n < 1:
        raise ValueError("ground set must be non-empty")
    # elements with the same membership pattern are unseparated
    pattern: dict[tuple[bool, ...], int] = {}
    best = None
    for i in range(1, F.n + 1):
        key = tuple(bool(m >> (i - 1) & 1) for m in F.members)
        if key in pattern:
            cand = (pattern[key], i)
            if best is None or cand < best:
                best = cand
        else:
            pattern[key] = i
    return best


def layer(n: int, k: int) -> SetFamily:
    """All k-subsets of ``[n]``."""
    if not 0 <= k <= n:
        raise ValueError(f"layer size {k} out of range for n={n}")
    return SetFamily.of(n, (mask_of(c) for c in itertools.combinations(range(1, n + 1), k)))


def layer_upto(n: int, k: int) -> SetFamily:
    """All subsets of ``[n]`` with at most k elements."""
    if not 0 <= k <= n:
        raise ValueError(f"layer size {k} out of range for n={n}")
    return SetFamily.of(n, (s for s in range(1 << n) if s.bit_count() <= k))


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending order."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for r in range(1 << len(bits)):
        yield sum(b for t, b in enumerate(bits) if r >> t & 1)
