"""JSON documents for posets, families and percolation schedules.

Sets are written as sorted 1-based element lists, never as bitmasks, and
every document is dumped with sorted keys so equal inputs give equal bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .family import Embedding, SetFamily, elements_of, mask_of
from .percolation import PercolationSchedule
from .poset import Poset, make_poset


class DocumentError(ValueError):
    """A document is malformed or violates its invariants."""


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from exc


# -- posets -----------------------------------------------------------------


def poset_to_doc(P: Poset, name: Optional[str] = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"elements": P.size, "lt": [list(p) for p in P.pairs()]}
    if name is not None:
        doc["name"] = name
    return doc


def poset_from_doc(doc: Any) -> Poset:
    if not isinstance(doc, dict) or "elements" not in doc:
        raise DocumentError("poset document needs an 'elements' field")
    p = doc["elements"]
    if not isinstance(p, int) or isinstance(p, bool) or p < 0:
        raise DocumentError(f"'elements' must be a non-negative integer, got {p!r}")
    pairs = []
    for pair in doc.get("lt", []):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, int) and 0 <= v < p for v in pair)
        ):
            raise DocumentError(f"bad relation {pair!r}: expected [i, j] with 0 <= i, j < {p}")
        pairs.append((pair[0], pair[1]))
    try:
        return make_poset(p, pairs)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


# -- families ---------------------------------------------------------------


def _set_from_list(raw: Any, n: int) -> int:
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise DocumentError(f"a set must be a list of integers, got {raw!r}")
    if any(v < 1 or v > n for v in raw):
        raise DocumentError(f"set {raw} has elements outside 1..{n}")
    if len(set(raw)) != len(raw):
        raise DocumentError(f"set {raw} repeats an element")
    return mask_of(raw)


def family_to_doc(F: SetFamily, metadata: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"n": F.n, "sets": F.to_lists()}
    if metadata is not None:
        doc["metadata"] = metadata
    return doc


def family_from_doc(doc: Any) -> SetFamily:
    if not isinstance(doc, dict) or "n" not in doc or "sets" not in doc:
        raise DocumentError("family document needs 'n' and 'sets' fields")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DocumentError(f"'n' must be a non-negative integer, got {n!r}")
    if not isinstance(doc["sets"], list):
        raise DocumentError("'sets' must be a list")
    masks = [_set_from_list(s, n) for s in doc["sets"]]
    if len(set(masks)) != len(masks):
        raise DocumentError("family lists the same set twice")
    return SetFamily.of(n, masks)


# -- schedules --------------------------------------------------------------


def schedule_to_doc(s: PercolationSchedule) -> dict[str, Any]:
    return {
        "poset": poset_to_doc(s.poset),
        "n": s.n,
        "initial": s.initial.to_lists(),
        "steps": [{"set": elements_of(S), "witness": emb.to_lists()} for S, emb in s.steps],
    }


def schedule_from_doc(doc: Any) -> PercolationSchedule:
    if not isinstance(doc, dict) or not {"poset", "n", "initial", "steps"} <= doc.keys():
        raise DocumentError("schedule document needs 'poset', 'n', 'initial' and 'steps'")
    P = poset_from_doc(doc["poset"])
    n = doc["n"]
    initial = family_from_doc({"n": n, "sets": doc["initial"]})
    steps = []
    for i, step in enumerate(doc["steps"]):
        if not isinstance(step, dict) or "set" not in step or "witness" not in step:
            raise DocumentError(f"step {i} needs 'set' and 'witness'")
        if not isinstance(step["witness"], list):
            raise DocumentError(f"step {i}: witness must be a list of sets")
        S = _set_from_list(step["set"], n)
        emb = Embedding(tuple(_set_from_list(w, n) for w in step["witness"]))
        steps.append((S, emb))
    return PercolationSchedule(P, n, initial, tuple(steps))
