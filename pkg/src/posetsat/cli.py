"""Command-line front end.

Exit codes: 0 the property holds or the construction is certified, 1 it
fails (a certificate is printed), 2 usage or parse error, 3 feasibility cap.

Environment (read once at startup):
  POSETSAT_MAX_N          cap on n for exhaustive saturation checks
  POSETSAT_ORACLE_MAX_N   cap on n for the exact oracles
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Optional

from . import constructions, oracle, percolation, saturation
from .documents import (
    DocumentError,
    dumps,
    family_from_doc,
    family_to_doc,
    load_json,
    poset_from_doc,
    poset_to_doc,
    schedule_from_doc,
    schedule_to_doc,
)
from .family import SetFamily, elements_of, separates
from .poset import Poset, antichain, chain, complete_multilayer, make_poset

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

SHORTHANDS = "chain:k, antichain:k, layers:a,b,... (bottom first), diamond"


class UsageError(Exception):
    pass


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def parse_poset(text: str) -> Poset:
    """A poset document path or one of the shorthands."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "chain" and arg:
            return chain(int(arg))
        if kind == "antichain" and arg:
            return antichain(int(arg))
        if kind == "layers" and arg:
            return complete_multilayer([int(v) for v in arg.split(",")])
        if text == "diamond":
            return make_poset(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    except ValueError as exc:
        raise UsageError(f"bad poset shorthand {text!r}: {exc}")
    if not Path(text).exists():
        raise UsageError(f"no poset file {text!r} (shorthands: {SHORTHANDS})")
    return poset_from_doc(load_json(text))


def parse_sizes(raw: str) -> list[int]:
    try:
        return [int(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--sizes expects comma separated integers, got {raw!r}")


def _emit(doc: dict[str, Any], out: Optional[str]) -> None:
    text = dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _status_code(status: str) -> int:
    if status in ("saturated", "free"):
        return EXIT_OK
    if status == "unverified":
        return EXIT_CAP
    return EXIT_FAIL


# -- commands ---------------------------------------------------------------


def cmd_check(args, caps) -> int:
    F = family_from_doc(load_json(args.family))
    if args.mode == "separates":
        pair = separates(F)
        cert = None if pair is None else {"pair": list(pair)}
        _emit({"mode": "separates", "holds": pair is None, "certificate": cert}, args.out)
        return EXIT_OK if pair is None else EXIT_FAIL
    if args.poset is None:
        raise UsageError(f"--poset is required for --mode {args.mode}")
    P = parse_poset(args.poset)
    if args.mode == "free":
        free, witness = saturation.is_free(F, P)
        cert = None if free else {"embedding": witness.to_lists()}
        _emit({"mode": "free", "holds": free, "certificate": cert}, args.out)
        return EXIT_OK if free else EXIT_FAIL
    v = saturation.is_saturated(
        F, P, max_n=caps["max_n"], sample=args.sample, seed=args.seed, workers=args.threads
    )
    cert = None
    if v.violation is not None:
        cert = {"embedding": v.violation.to_lists()}
    elif v.missing is not None:
        cert = {"missing": elements_of(v.missing)}
    doc = {
        "mode": "saturated",
        "holds": v.is_saturated,
        "status": v.status,
        "checked": v.checked,
        "sampled": v.sampled,
        "certificate": cert,
    }
    _emit(doc, args.out)
    if v.status == "not refuted":
        return EXIT_OK
    return EXIT_OK if v.is_saturated else EXIT_FAIL


def cmd_construct(args, caps) -> int:
    max_n = caps["max_n"]
    if args.kind == "klayer":
        if not args.sizes:
            raise UsageError("--sizes is required for --kind klayer")
        sizes = parse_sizes(args.sizes)
        if args.complete:
            F, report = constructions.klayer_family(
                sizes, args.n, order=args.order, rng_seed=args.seed, max_n=max_n
            )
        else:
            reduced, positions = constructions.reduce_unit_layers(sizes)
            F, report = constructions.klayer_seed(reduced, args.n, max_n=max_n)
            if positions:
                report.params["sizes"] = sizes
                report.params["unit_positions"] = positions
                report.notes.append("seed for the poset with unit layers removed")
    else:
        if args.poset is None:
            raise UsageError(f"--poset is required for --kind {args.kind}")
        P = parse_poset(args.poset)
        if args.kind == "special":
            F, report = constructions.special_family(P, args.n, max_n=max_n)
        else:
            if args.poset2 is None:
                raise UsageError("--poset2 (the upper part) is required for --kind glued")
            F, report = constructions.glued_special_family(P, parse_poset(args.poset2), args.n, max_n=max_n)
    _emit(family_to_doc(F, report.to_dict()), args.out)
    return _status_code(report.status)


def cmd_saturate(args, caps) -> int:
    P = parse_poset(args.poset)
    if args.seed_family:
        seed = family_from_doc(load_json(args.seed_family))
    elif args.n is not None:
        seed = SetFamily.empty(args.n)
    else:
        raise UsageError("give a seed family file or --n for an empty seed")
    try:
        F = saturation.greedy_complete(seed, P, args.order, rng_seed=args.seed, max_n=caps["max_n"])
    except saturation.NotFreeError as exc:
        _emit({"error": "seed is not free", "certificate": {"embedding": exc.embedding.to_lists()}}, args.out)
        return EXIT_FAIL
    v = saturation.is_saturated(F, P, max_n=caps["max_n"], workers=args.threads)
    meta = {"order": args.order, "seed_size": len(seed), "size": len(F), "status": v.status}
    _emit(family_to_doc(F, meta), args.out)
    return _status_code(v.status)


def cmd_percolate(args, caps) -> int:
    if isinstance(args.verify, str):
        s = schedule_from_doc(load_json(args.verify))
        chk = percolation.verify_schedule(s)
        _emit({"ok": chk.ok, "index": chk.index, "reason": chk.reason}, args.out)
        return EXIT_OK if chk.ok else EXIT_FAIL
    if args.poset is None or args.n is None:
        raise UsageError("--poset and --n are required unless verifying a schedule file")
    P = parse_poset(args.poset)
    s = percolation.percolating_family(P, args.n)
    doc = schedule_to_doc(s)
    doc["initial_size"] = len(s.initial)
    doc["formula"] = percolation.formula(P)
    code = EXIT_OK
    if args.verify:
        chk = percolation.verify_schedule(s)
        doc["verified"] = chk.ok
        code = EXIT_OK if chk.ok else EXIT_FAIL
    _emit(doc, args.out)
    return code


def cmd_oracle(args, caps) -> int:
    P = parse_poset(args.poset)
    limits = oracle.SearchLimits(args.max_size, args.time_budget, not args.no_symmetry)
    kw: dict[str, Any] = {"workers": args.threads}
    if caps["oracle_max_n"] is not None:
        kw["max_n"] = caps["oracle_max_n"]
    if args.kind == "sat":
        res = oracle.min_saturated(P, args.n, limits, **kw)
    else:
        res = oracle.min_percolating(P, args.n, limits, **kw)
    doc = {
        "kind": args.kind,
        "n": args.n,
        "poset": poset_to_doc(P),
        "size": res.size,
        "exact": res.exact,
        "label": res.label,
        "witness": None if res.witness is None else family_to_doc(res.witness),
        "transcript": [list(t) for t in res.transcript],
    }
    _emit(doc, args.out)
    return EXIT_OK if res.exact else EXIT_CAP


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the document here instead of stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads (outputs do not change)")

    ap = argparse.ArgumentParser(prog="posetsat", description="Induced poset saturation toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a family against a poset")
    c.add_argument("--poset", help=f"poset file or shorthand ({SHORTHANDS})")
    c.add_argument("--family", required=True)
    c.add_argument("--mode", choices=["free", "saturated", "separates"], default="saturated")
    c.add_argument("--sample", type=int, help="check only this many random missing sets")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", parents=[common], help="run one of the explicit constructions")
    c.add_argument("--kind", choices=["special", "glued", "klayer"], required=True)
    c.add_argument("--poset", help="poset (lower part for glued)")
    c.add_argument("--poset2", help="upper part for glued")
    c.add_argument("--sizes", help="layer sizes for klayer, bottom first")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--complete", action="store_true", help="klayer: greedily complete the seed")
    c.add_argument("--order", choices=saturation.ORDERS, default="asc")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("saturate", parents=[common], help="greedily complete a free seed")
    c.add_argument("--poset", required=True)
    c.add_argument("--seed-family", help="seed family file (default: empty family on --n)")
    c.add_argument("--n", type=int)
    c.add_argument("--order", choices=saturation.ORDERS, default="asc")
    c.add_argument("--seed", type=int, default=0, help="shuffle seed for --order random")
    c.set_defaults(func=cmd_saturate)

    c = sub.add_parser("percolate", parents=[common], help="build or verify a percolation schedule")
    c.add_argument("--poset")
    c.add_argument("--n", type=int)
    c.add_argument(
        "--verify",
        nargs="?",
        const=True,
        default=False,
        metavar="SCHEDULE",
        help="replay the generated schedule, or the given schedule file",
    )
    c.set_defaults(func=cmd_percolate)

    c = sub.add_parser("oracle", parents=[common], help="exact sat* or percolation number")
    c.add_argument("--kind", choices=["sat", "satp"], required=True)
    c.add_argument("--poset", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--max-size", type=int, help="stop after this family size")
    c.add_argument("--time-budget", type=float, help="seconds")
    c.add_argument("--no-symmetry", action="store_true")
    c.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        caps = {
            "max_n": _env_int("POSETSAT_MAX_N"),
            "oracle_max_n": _env_int("POSETSAT_ORACLE_MAX_N"),
        }
        return args.func(args, caps)
    except saturation.InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, DocumentError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
