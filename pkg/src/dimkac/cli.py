"""Command-line front end.

Exit status: 0 PASS, 1 FAIL (or DEGENERATE), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from datetime import datetime, timezone

from . import kac as kac_mod
from .fock import FockModule
from .macdonald import DegenerateEigenvalue, gen_macdonald, gen_macdonald_at_point
from .partition import (
    InapplicableError,
    NotAPartition,
    RSData,
    count_PN,
    enum_ntuples,
    format_ntuple,
    lambda_rs_closed,
    lemma_e_identities,
    parse_ntuple,
    theta_rs,
)
from .scalar import MAX_RANK, PRIMES, DegenerateInput, ModField, ModPoint, SymbolicField
from .singular import eigenvalue_identity, projection_check, singular_check

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

PAPER_PARAMS = {
    "s": "p^(1/2)",
    "t": "t",
    "p": "s^2",
    "q": "s^2*t",
    "u_i": "highest weight of U_i, with its p-power folded in",
    "variable_order": ["s", "t"] + [f"u{i}" for i in range(1, MAX_RANK + 1)],
}


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",")) if text.strip() else ()
    except ValueError as exc:
        raise UsageError(f"malformed integer list {text!r}") from exc


def _rsdata(args) -> RSData:
    if args.r is None or args.s is None:
        raise UsageError("--r and --s are required")
    try:
        data = RSData(_int_list(args.r), _int_list(args.s))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.N is not None and data.N != args.N:
        raise UsageError(f"--r/--s of length {data.N - 1} need N={data.N}, got N={args.N}")
    return data


def _require_rank(args):
    if args.N is None or not 1 <= args.N <= MAX_RANK:
        raise UsageError(f"--N must be in 1..{MAX_RANK}")


def _require_level(args):
    if args.level is None or args.level < 0:
        raise UsageError("--level must be a non-negative integer")


# commands -------------------------------------------------------------------


def cmd_kac(args) -> tuple[dict, int, list]:
    _require_rank(args)
    _require_level(args)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    symbolic = args.symbolic or args.backend in ("symbolic", "both")
    modular = args.backend in ("modular", "both")
    if symbolic and count_PN(args.N, args.level) > kac_mod.SYMBOLIC_MAX_DIM:
        raise UsageError(f"symbolic check capped at dimension {kac_mod.SYMBOLIC_MAX_DIM}")
    rep = kac_mod.verify_kac(args.N, args.level, args.trials, args.seed, symbolic=symbolic, modular=modular)
    out = rep.to_dict(reproducible=args.reproducible)
    rows = [["prime", "assignment", "lhs", "rhs", "ok"]]
    for p in out["points"]:
        assign = ";".join(f"{k}={v}" for k, v in p.items() if k not in ("prime", "lhs", "rhs", "ok"))
        rows.append([p["prime"], assign, p["lhs"], p["rhs"], p["ok"]])
    return out, EXIT_PASS if rep.passed else EXIT_FAIL, rows


def cmd_gram(args):
    _require_rank(args)
    _require_level(args)
    if count_PN(args.N, args.level) > kac_mod.SYMBOLIC_MAX_DIM:
        raise UsageError(f"symbolic Gram matrix capped at dimension {kac_mod.SYMBOLIC_MAX_DIM}")
    basis = enum_ntuples(args.N, args.level)
    G = kac_mod.gram_matrix(args.N, args.level)
    labels = [format_ntuple(vl) for vl in basis]
    out = {"N": args.N, "level": args.level, "basis": labels, "gram": [[str(x) for x in row] for row in G]}
    rows = [[""] + labels] + [[labels[i]] + [str(x) for x in row] for i, row in enumerate(G)]
    return out, EXIT_PASS, rows


def cmd_gmac(args):
    _require_rank(args)
    if args.tuple is None:
        raise UsageError("--tuple is required")
    try:
        vl = parse_ntuple(args.tuple, args.N)
    except NotAPartition as exc:
        raise UsageError(str(exc)) from exc
    if args.backend == "modular":
        pt = ModPoint.random(random.Random(args.seed), args.N, PRIMES[0])
        fld = ModField(pt)
        exp = gen_macdonald_at_point(vl, FockModule(args.N, fld))
        out = exp.to_json()
        out["point"] = pt.assignment()
    else:
        exp = gen_macdonald(vl, FockModule(args.N, SymbolicField(args.N)))
        out = exp.to_json()
    out["defining_tuple"] = format_ntuple(vl)
    rows = [["tuple", "coefficient"]] + [[k, v] for k, v in out["coefficients"].items()]
    return out, EXIT_PASS, rows


def cmd_singular(args):
    data = _rsdata(args)
    rep = singular_check(data, depth=args.depth, seed=args.seed)
    out = rep.to_dict()
    rows = [["i", "n", "zero"]] + [[a["i"], a["n"], a["zero"]] for a in out["annihilation"]]
    return out, EXIT_PASS if rep.passed else EXIT_FAIL, rows


def cmd_project(args):
    data = _rsdata(args)
    try:
        rep = projection_check(data, seed=args.seed)
    except InapplicableError as exc:
        raise UsageError(str(exc)) from exc
    out = rep.to_dict()
    rows = [["partition", "coefficient"]] + [[k, v] for k, v in out["projection"].items()]
    return out, EXIT_PASS if rep.passed else EXIT_FAIL, rows


def cmd_count(args):
    _require_rank(args)
    _require_level(args)
    table = []
    ok = True
    for n in range(args.level + 1):
        gf, enum = count_PN(args.N, n), len(enum_ntuples(args.N, n))
        ok = ok and gf == enum
        table.append({"level": n, "generating_function": gf, "enumeration": enum})
    out = {
        "N": args.N,
        "level": args.level,
        "count": table[-1]["generating_function"],
        "table": table,
        "verdict": "PASS" if ok else "FAIL",
    }
    rows = [["level", "generating_function", "enumeration"]] + [list(r.values()) for r in table]
    return out, EXIT_PASS if ok else EXIT_FAIL, rows


SUITE_KAC = ((1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2))
SUITE_SINGULAR = (((1,), (1,)), ((2,), (1,)), ((1,), (2,)), ((1, 1), (1, 1)), ((2, 1), (1, 1)))
SUITE_PROJECT = (((1,), (1,)), ((1,), (2,)), ((2,), (1,)))


def cmd_suite(args):
    """Modular Kac, singular and projection checks with fixed configurations."""
    out = {"kac": [], "singular": [], "project": [], "lemma": None, "theta": None}
    ok = True
    for N, n in SUITE_KAC:
        rep = kac_mod.verify_kac(N, n, args.trials, args.seed, symbolic=args.symbolic)
        out["kac"].append(rep.to_dict(reproducible=args.reproducible))
        ok = ok and rep.passed
    for r, s in SUITE_SINGULAR:
        rep = singular_check(RSData(r, s), seed=args.seed)
        out["singular"].append(rep.to_dict())
        ok = ok and rep.passed
    for r, s in SUITE_PROJECT:
        rep = projection_check(RSData(r, s), seed=args.seed)
        out["project"].append(rep.to_dict())
        ok = ok and rep.passed
    lemma = all(all(lemma_e_identities((2, 1), 3, s, n)) for s in (1, 2) for n in (0, 1, 2, 3))
    theta = all(
        theta_rs(RSData(r, s))[-1] == lambda_rs_closed(RSData(r, s)) and eigenvalue_identity(RSData(r, s))
        for r, s in (((1,), (1,)), ((1, 2), (1, 1)), ((1, 1, 2), (2, 1, 1)))
    )
    out["lemma"], out["theta"] = lemma, theta
    ok = ok and lemma and theta
    out["verdict"] = "PASS" if ok else "FAIL"
    return out, EXIT_PASS if ok else EXIT_FAIL, [["verdict"], [out["verdict"]]]


COMMANDS = {
    "kac": cmd_kac,
    "gram": cmd_gram,
    "gmac": cmd_gmac,
    "singular": cmd_singular,
    "project": cmd_project,
    "count": cmd_count,
    "suite": cmd_suite,
}


# output -------------------------------------------------------------------------


def _render(payload: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    lines = []
    for key in sorted(payload):
        val = payload[key]
        text = json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else str(val)
        lines.append(f"{key}: {text}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int)
    common.add_argument("--level", type=int)
    common.add_argument("--tuple")
    common.add_argument("--r")
    common.add_argument("--s")
    common.add_argument("--depth", type=int)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--symbolic", action="store_true")
    common.add_argument("--backend", choices=("modular", "symbolic", "both"), default=None)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--reproducible", action="store_true")
    parser = argparse.ArgumentParser(prog="dimkac", description="Exact checks for the level-N DIM algebra.")
    parser.add_argument("--paper-params", action="store_true", help="print the (s, t) -> (q, p) dictionary")
    sub = parser.add_subparsers(dest="command")
    for name, fn in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(fn.__doc__ or name).strip().splitlines()[0])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.paper_params:
        sys.stdout.write(json.dumps(PAPER_PARAMS, sort_keys=True, indent=2) + "\n")
        if args.command is None:
            return EXIT_PASS
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.backend is None:
        args.backend = "symbolic" if args.command == "gmac" else "modular"
    t0 = time.perf_counter()
    try:
        payload, code, rows = COMMANDS[args.command](args)
    except (UsageError, NotAPartition, InapplicableError) as exc:
        sys.stderr.write(f"dimkac {args.command}: {exc}\n")
        return EXIT_USAGE
    except (DegenerateInput, DegenerateEigenvalue) as exc:
        sys.stderr.write(f"dimkac {args.command}: {exc}\n")
        return EXIT_FAIL
    payload = {"command": args.command, "seed": args.seed, **payload}
    if not args.reproducible:
        payload["timestamp"] = datetime.now(timezone.utc).isoformat()
        payload["elapsed"] = round(time.perf_counter() - t0, 4)
    text = _render(payload, rows, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
