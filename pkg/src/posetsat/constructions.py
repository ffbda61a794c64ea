"""Explicit saturated families.

* :func:`special_family` -- recursive family for a special poset (an isolated
  element next to a core with a unique bottom and top).
* :func:`glued_special_family` -- family for the linear sum of two special posets.
* :func:`klayer_seed` -- free seed for complete layered posets whose every
  saturated completion stays small, plus :func:`reduce_unit_layers` for
  interior layers of size one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, NamedTuple, Optional, Sequence

from .family import SetFamily, compress, copy_in, elements_of, full_mask, layer, mask_of, subsets_of
from .poset import (
    Poset,
    complete_multilayer,
    decompose_special,
    dot,
    dual,
    linear_sum,
)
from .saturation import DEFAULT_MAX_N, greedy_complete, is_free, is_saturated

#: default cap on the cube dimension scanned when looking for a poset inside P([m])
DEFAULT_DIM_CAP = 12


class ConstructionError(ValueError):
    pass


@dataclass
class ConstructionReport:
    kind: str
    n: int
    size: int
    params: dict[str, Any] = field(default_factory=dict)
    bound: Optional[int] = None
    status: str = "unverified"
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "n": self.n,
            "size": self.size,
            "params": self.params,
            "bound": self.bound,
            "status": self.status,
            "notes": list(self.notes),
        }


def min_cube_dim(Q: Poset, cap: int = DEFAULT_DIM_CAP) -> int:
    """Smallest m such that P([m]) holds an induced copy of Q."""
    for m in range(cap + 1):
        if (1 << m) >= Q.size and copy_in(range(1 << m), Q) is not None:
            return m
    raise ConstructionError(f"no copy found in P([m]) for m <= {cap}")


def _certify(F: SetFamily, P: Poset, max_n: Optional[int]) -> str:
    limit = DEFAULT_MAX_N if max_n is None else max_n
    if F.n > limit:
        return "unverified"
    return is_saturated(F, P, max_n=limit).status


# -- antichain layers -------------------------------------------------------


class AntichainParams(NamedTuple):
    w: int
    h: int
    x: int
    patched: bool = False


def antichain_params(m: int) -> AntichainParams:
    """Width ``w``, layer offset ``h`` and spacing ``x`` for an antichain of size m.

    ``w`` is the least dimension holding an m-antichain, ``h = (w-1)//2`` and
    ``x`` is the least value with ``C(x+h, h) >= m``. For m = 2 that gives
    h = 0 and no valid x, so (2, 1, 1) is used instead and flagged.
    """
    if m < 2:
        raise ValueError("antichain size must be at least 2")
    w = 1
    while comb(w, w // 2) < m:
        w += 1
    h = (w - 1) // 2
    if h == 0:
        return AntichainParams(2, 1, 1, patched=True)
    x = 0
    while comb(x + h, h) < m:
        x += 1
    return AntichainParams(w, h, x)


def reduce_unit_layers(sizes: Sequence[int]) -> tuple[list[int], list[int]]:
    """Drop interior layers of size 1; returns (reduced sizes, dropped positions)."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("need at least one layer")
    for a, b in zip(sizes, sizes[1:]):
        if a == 1 and b == 1:
            raise ValueError("adjacent unit layers are not supported")
    if sizes[0] == 1 or sizes[-1] == 1:
        raise ValueError("end unit layer: bottom and top layers must have size at least 2")
    if any(s < 1 for s in sizes):
        raise ValueError("layer sizes must be positive")
    positions = [i for i, s in enumerate(sizes) if s == 1]
    return [s for s in sizes if s != 1], positions


def klayer_seed(
    sizes: Sequence[int], n: int, *, max_n: Optional[int] = None
) -> tuple[SetFamily, ConstructionReport]:
    """Free seed F1 + F2 for K_{sizes}: full layers of a low copy of Q_d and complements of a high one."""
    sizes = list(sizes)
    if not sizes or any(s < 2 for s in sizes):
        raise ValueError("every layer must have size at least 2 (see reduce_unit_layers)")
    params = [antichain_params(s) for s in sizes]
    k = len(sizes)
    span = [p.h + p.x for p in params]
    before = [sum(span[:i]) for i in range(k)]
    d = sum(span) - 1
    if n < 2 * d + 1:
        raise ValueError(f"need n >= 2d+1 = {2 * d + 1} for d = {d}, got n = {n}")

    low_sizes = [before[i] + params[i].h for i in range(k - 1)]
    rev = params[::-1]
    rev_before = [sum(p.h + p.x for p in rev[:i]) for i in range(k)]
    high_sizes = [rev_before[i] + rev[i].h for i in range(k - 1)]

    full = full_mask(n)
    masks = []
    for s in low_sizes:
        masks += layer(d, s).members
    for s in high_sizes:
        masks += [full ^ a for a in layer(d, s).members]
    F = SetFamily.of(n, masks)

    lam = sum(
        (sizes[i] - 1) * comb(d, before[i]) * comb(d - before[i], span[i] - 1) for i in range(k)
    )
    report = ConstructionReport(
        kind="klayer",
        n=n,
        size=len(F),
        params={
            "sizes": sizes,
            "w": [p.w for p in params],
            "h": [p.h for p in params],
            "x": [p.x for p in params],
            "d": d,
            "lambda": lam,
            "low_layers": low_sizes,
            "high_layers": high_sizes,
        },
        bound=lam * (n - 1) + 2,
    )
    if any(p.patched for p in params):
        report.notes.append("antichain size 2 uses patched parameters (w, h, x) = (2, 1, 1)")

    K = complete_multilayer(sizes)
    free, witness = is_free(F, K)
    if not free:
        raise ConstructionError(f"seed is not free: {witness.to_lists()}")
    report.status = "free"
    return F, report


def klayer_family(
    sizes: Sequence[int],
    n: int,
    *,
    order: str = "asc",
    rng_seed: int = 0,
    max_n: Optional[int] = None,
) -> tuple[SetFamily, ConstructionReport]:
    """Saturated family for K_{sizes}, interior unit layers allowed.

    Greedily completes the seed of the reduced poset; a family saturated for
    the reduced poset is then checked against the full one.
    """
    reduced, positions = reduce_unit_layers(sizes)
    seed, report = klayer_seed(reduced, n, max_n=max_n)
    F = greedy_complete(seed, complete_multilayer(reduced), order, rng_seed=rng_seed, max_n=max_n)
    report.size = len(F)
    report.params["sizes"] = list(sizes)
    report.params["reduced_sizes"] = reduced
    report.params["unit_positions"] = positions
    report.params["seed_size"] = len(seed)
    report.params["order"] = order
    report.status = _certify(F, complete_multilayer(sizes), max_n)
    if report.status == "not saturated" or report.status == "not free":
        raise ConstructionError(f"completion failed certification: {report.status}")
    return F, report


# -- special posets ---------------------------------------------------------


def _special_masks(points: Sequence[int], k: int, h: int, trace: list) -> set[int]:
    """Power set of the first k+1 points, plus the recursive family lifted over them."""
    points = list(points)
    if len(points) < h:
        fam = set(subsets_of(mask_of(points)))
        trace.append((len(points), len(fam)))
        return fam
    base = mask_of(points[: k + 1])
    rest = _special_masks(points[k + 1 :], k, h, trace)
    fam = set(subsets_of(base))
    fam.update(a | base for a in rest)
    trace.append((len(points), len(fam)))
    return fam


def _top_variant(inner: set[int], block: int, tail: int) -> set[int]:
    """``inner`` (on the tail) plus every subset of ``block`` joined with the whole tail."""
    return set(inner) | {x | tail for x in subsets_of(block)}


def special_params(P: Poset, cap: int = DEFAULT_DIM_CAP) -> tuple[int, int]:
    """(k, h): least cube dimension holding the core, and h = k + 2."""
    dec = decompose_special(P)
    if dec is None:
        raise ConstructionError("poset is not special")
    k = min_cube_dim(dec.core, cap)
    return k, k + 2


def special_family(
    P: Poset,
    n: int,
    *,
    certify: bool = True,
    max_n: Optional[int] = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> tuple[SetFamily, ConstructionReport]:
    k, h = special_params(P, dim_cap)
    trace: list[tuple[int, int]] = []
    masks = _special_masks(range(1, n + 1), k, h, trace)
    F = SetFamily.of(n, masks)
    levels = [{"ground": g, "size": s} for g, s in reversed(trace)]
    report = ConstructionReport(
        kind="special",
        n=n,
        size=len(F),
        params={"k": k, "h": h, "levels": levels},
        # each lift adds 2^(k+1) sets and shares one with the lifted family
        bound=(len(trace) - 1) * ((1 << (k + 1)) - 1) + trace[0][1],
    )
    if certify:
        report.status = _certify(F, P, max_n)
        if report.status in ("not free", "not saturated"):
            raise ConstructionError(f"special family failed certification: {report.status}")
    return F, report


@dataclass(frozen=True)
class ExtensionBlock:
    """One extension family ``F_A`` together with the ground set it saturates on."""

    anchor: int
    ground: tuple[int, ...]
    masks: frozenset[int]
    poset: Poset
    side: str

    def family(self) -> SetFamily:
        """The block relabelled onto ``[len(ground)]``."""
        return SetFamily.of(len(self.ground), (compress(m, self.ground) for m in self.masks))


def _glue_parts(P1: Poset, P2: Poset, n: int, dim_cap: int):
    if decompose_special(P1) is None:
        raise ConstructionError("lower poset is not special")
    if decompose_special(P2) is None:
        raise ConstructionError("upper poset is not special")
    h1 = min_cube_dim(dot(P1), dim_cap)
    h2 = min_cube_dim(dot(dual(P2)), dim_cap)
    if n < 2 * (h1 + h2):
        raise ValueError(f"need n >= 2(h1+h2) = {2 * (h1 + h2)}, got n = {n}")
    N0 = h1 + h2 - 1
    core = full_mask(N0)
    tail_points = list(range(N0 + 1, n + 1))
    tail = mask_of(tail_points)
    full = full_mask(n)

    seed = set(m for m in range(1 << N0) if m.bit_count() <= h1)
    seed |= {full ^ a for a in range(1 << N0) if a.bit_count() <= h2}

    k2, hh2 = special_params(P2, dim_cap)
    F0 = _special_masks(tail_points, k2, hh2, [])
    P1d = dual(P1)
    k1, hh1 = special_params(P1d, dim_cap)
    G0 = _special_masks(tail_points, k1, hh1, [])

    blocks = []
    for A in layer(N0, h1).members:
        FA = _top_variant(F0, core & ~A, tail)
        ground = tuple(sorted(set(elements_of(core & ~A)) | set(tail_points)))
        blocks.append(ExtensionBlock(A, ground, frozenset(FA), P2, "upper"))
    for A in layer(N0, h2).members:
        GA = _top_variant(G0, core & ~A, tail)
        ground = tuple(sorted(set(elements_of(core & ~A)) | set(tail_points)))
        blocks.append(ExtensionBlock(A, ground, frozenset(GA), P1d, "lower"))

    fam = set(seed)
    for b in blocks:
        if b.side == "upper":
            fam.update(b.anchor | f for f in b.masks)
        else:
            fam.update(full ^ (b.anchor | g) for g in b.masks)
    return h1, h2, seed, F0, G0, blocks, fam


def glued_blocks(P1: Poset, P2: Poset, n: int, dim_cap: int = DEFAULT_DIM_CAP) -> list[ExtensionBlock]:
    """The extension families used by :func:`glued_special_family`.

    Upper blocks are ``P2``-saturated on their ground; lower blocks live in
    the complemented picture and are ``dual(P1)``-saturated on theirs.
    """
    return _glue_parts(P1, P2, n, dim_cap)[5]


def glued_special_family(
    P1: Poset,
    P2: Poset,
    n: int,
    *,
    certify: bool = True,
    max_n: Optional[int] = None,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> tuple[SetFamily, ConstructionReport]:
    """Saturated family for ``linear_sum(P2, P1)`` with P1, P2 special."""
    h1, h2, seed, F0, G0, blocks, fam = _glue_parts(P1, P2, n, dim_cap)
    F = SetFamily.of(n, fam)
    N0 = h1 + h2 - 1
    c1 = comb(N0, h2)
    c2 = comb(N0, h1)
    c3 = len(seed) + c2 * (1 << (h2 - 1)) + c1 * (1 << (h1 - 1))
    report = ConstructionReport(
        kind="glued",
        n=n,
        size=len(F),
        params={
            "h1": h1,
            "h2": h2,
            "seed_size": len(seed),
            "upper_inner_size": len(F0),
            "lower_inner_size": len(G0),
            "c1": c1,
            "c2": c2,
            "c3": c3,
        },
        bound=c1 * len(G0) + c2 * len(F0) + c3,
    )
    report.notes.append("inner families come from special_family, not minimum-size families")
    if certify:
        report.status = _certify(F, linear_sum(P2, P1), max_n)
        if report.status in ("not free", "not saturated"):
            raise ConstructionError(f"glued family failed certification: {report.status}")
    return F, report
