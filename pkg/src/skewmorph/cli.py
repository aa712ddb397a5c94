"""Command-line front end: ``skewmorph <command> ...``.

Exit codes: 0 success, 1 negative result (a candidate was rejected, a
cross-check found mismatches, an oracle ran out of time), 2 usage error,
3 internal consistency failure.

Data goes to stdout (or ``--output``); timings and other run metadata go to
stderr so that repeated runs produce identical data.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from .classify import E1_NOTE, count_closed_form, cross_check, enumerate_constructive, skew_product_group
from .errors import ClosureCapError, ConsistencyError, NotClassifiableError, OracleTimeoutError
from .groups import commutator_subgroup, is_split_metacyclic, quotient_exponent
from .oracle import EXHAUSTIVE_BOUND, oracle_exhaustive, oracle_pruned
from .perm import Permutation, order
from .skew import AdmissibleTuple, classify, compute_power_function, verify_criterion, verify_definition
from .zmod import Modulus

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- output helpers ----------------------------------------------------------

def _dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(msg: str) -> None:
    print(msg, file=sys.stderr)


def _modulus(args) -> Modulus:
    try:
        return Modulus(args.p, args.e)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _joined(values) -> str:
    return ";".join(map(str, values))


# -- input parsing -----------------------------------------------------------

def _load_candidates(path: str) -> list[list[int]]:
    """Image lists from an ``enum`` JSON document, a ``{"candidates": [...]}``
    object, or a bare list of image lists."""
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read candidates: {exc}") from exc
    if isinstance(data, dict):
        if "records" in data:
            items = [r.get("images") if isinstance(r, dict) else None for r in data["records"]]
        elif "candidates" in data:
            items = data["candidates"]
        else:
            raise UsageError('expected "records" or "candidates" in the input object')
    elif isinstance(data, list):
        items = data
    else:
        raise UsageError("input must be a JSON object or list")
    out = []
    for idx, item in enumerate(items):
        if not isinstance(item, list) or not item or not all(isinstance(v, int) and not isinstance(v, bool) for v in item):
            raise UsageError(f"candidate {idx} is not a non-empty list of integers")
        out.append(item)
    return out


# -- commands ----------------------------------------------------------------

def cmd_count(args) -> int:
    m = _modulus(args)
    n1, n2, total = count_closed_form(m)
    note = E1_NOTE if m.e == 1 else None
    if args.format == "json":
        obj = {"p": m.p, "e": m.e, "n": m.n, "n1": n1, "n2": n2, "total": total}
        if note:
            obj["note"] = note
        _emit(args, _dump_json(obj))
    elif args.format == "csv":
        _emit(args, f"p,e,n,n1,n2,total\n{m.p},{m.e},{m.n},{n1},{n2},{total}\n")
    else:
        text = f"N1 {n1}\nN2 {n2}\ntotal {total}\n"
        if note:
            text += f"note: {note}\n"
        _emit(args, text)
    return EXIT_OK


def cmd_enum(args) -> int:
    m = _modulus(args)
    if m.e < 2:
        raise UsageError("enum needs e >= 2")
    records = enumerate_constructive(m)
    if args.format == "json":
        obj = {"p": m.p, "e": m.e, "n": m.n, "records": [r.to_json() for r in records]}
        _emit(args, _dump_json(obj))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "k", "l", "order", "images", "pi"])
        for r in records:
            w.writerow([*r.tuple.as_tuple(), r.order, _joined(r.images), _joined(r.pi_values)])
        _emit(args, buf.getvalue())
    else:
        lines = [f"{r.tuple.as_tuple()} order={r.order} images={list(r.images)}" for r in records]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _verdict(images: list[int]) -> dict:
    n = len(images)
    out = {"images": images}
    if sorted(images) != list(range(n)):
        out.update(accepted=False, reason="not a permutation")
        return out
    f = Permutation(images)
    if images[0] != 0:
        out.update(accepted=False, reason="does not fix 0")
        return out
    by_definition = verify_definition(f)
    by_criterion = verify_criterion(f)
    if by_definition != by_criterion:
        raise ConsistencyError(f"verifiers disagree on {images}")
    if not by_definition:
        out.update(accepted=False, reason="violates f(x+y) = f(x) + f^k(y)")
        return out
    pi = compute_power_function(f)
    out.update(accepted=True, order=pi.modulus_of_values, pi=list(pi.values))
    return out


def cmd_verify(args) -> int:
    verdicts = [_verdict(c) for c in _load_candidates(args.file)]
    rejected = sum(1 for v in verdicts if not v["accepted"])
    if args.format == "json":
        _emit(args, _dump_json({"results": verdicts, "accepted": len(verdicts) - rejected, "rejected": rejected}))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["accepted", "reason", "order", "images", "pi"])
        for v in verdicts:
            w.writerow([int(v["accepted"]), v.get("reason", ""), v.get("order", ""), _joined(v["images"]), _joined(v.get("pi", []))])
        _emit(args, buf.getvalue())
    else:
        lines = []
        for v in verdicts:
            tail = f"order {v['order']}" if v["accepted"] else v["reason"]
            lines.append(f"{'ACCEPT' if v['accepted'] else 'REJECT'} {v['images']} {tail}")
        lines.append(f"accepted {len(verdicts) - rejected}, rejected {rejected}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_NEGATIVE if rejected else EXIT_OK


def cmd_classify(args) -> int:
    m = _modulus(args)
    if m.e < 2:
        raise UsageError("classify needs e >= 2")
    results = []
    for images in _load_candidates(args.file):
        entry = {"images": images}
        if len(images) != m.n or sorted(images) != list(range(m.n)) or not verify_definition(Permutation(images)):
            entry["tuple"] = None
            entry["reason"] = "not a skew-morphism of Z_n"
        else:
            try:
                entry["tuple"] = list(classify(Permutation(images), m).as_tuple())
            except NotClassifiableError as exc:
                raise ConsistencyError(str(exc)) from exc
        results.append(entry)
    failed = sum(1 for r in results if r["tuple"] is None)
    if args.format == "json":
        _emit(args, _dump_json({"p": m.p, "e": m.e, "n": m.n, "results": results}))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "k", "l", "images"])
        for r in results:
            w.writerow([*(r["tuple"] or ["", "", "", ""]), _joined(r["images"])])
        _emit(args, buf.getvalue())
    else:
        lines = [f"{tuple(r['tuple']) if r['tuple'] else r['reason']} {r['images']}" for r in results]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_NEGATIVE if failed else EXIT_OK


def cmd_oracle(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("n must be positive")
    mode = args.mode
    if mode == "auto":
        mode = "exhaustive" if n <= EXHAUSTIVE_BOUND else "pruned"
    start = time.monotonic()
    try:
        if mode == "exhaustive":
            found = oracle_exhaustive(n)
        else:
            stats: dict = {}
            found = oracle_pruned(
                n, bound=args.bound, time_limit=args.time_cap, workers=args.jobs,
                checkpoint=args.checkpoint, stats=stats,
            )
            _meta(f"nodes {stats.get('total_nodes', 0)}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except OracleTimeoutError as exc:
        _meta(f"timeout: {exc}; finished branches {list(exc.completed)}; nodes {exc.nodes}")
        return EXIT_NEGATIVE
    _meta(f"elapsed {time.monotonic() - start:.2f}s")
    perms = sorted(f.images for f in found)
    if args.format == "json":
        _emit(args, _dump_json({"n": n, "count": len(perms), "permutations": [list(x) for x in perms]}))
    elif args.format == "csv":
        _emit(args, "images\n" + "".join(_joined(x) + "\n" for x in perms))
    else:
        _emit(args, f"{len(perms)} skew-morphisms of Z_{n}\n" + "".join(f"{list(x)}\n" for x in perms))
    return EXIT_OK


def cmd_group(args) -> int:
    m = _modulus(args)
    try:
        G = skew_product_group(args.i, args.j, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    D = commutator_subgroup(G)
    info = {
        "p": m.p, "e": m.e, "i": args.i, "j": args.j,
        "order": G.order,
        "split": is_split_metacyclic(G),
        "commutator_order": D.order,
        "abelianization_exponent": quotient_exponent(G, D),
        "max_element_order": max(order(g) for g in G.elements),
    }
    if args.format == "json":
        _emit(args, _dump_json(info))
    elif args.format == "csv":
        keys = list(info)
        _emit(args, ",".join(keys) + "\n" + ",".join(str(info[k]).lower() if isinstance(info[k], bool) else str(info[k]) for k in keys) + "\n")
    else:
        _emit(args, "".join(f"{k} {str(v).lower() if isinstance(v, bool) else v}\n" for k, v in info.items()))
    return EXIT_OK


def _witness(w) -> dict:
    # either (AdmissibleTuple, images) or bare images
    if len(w) == 2 and isinstance(w[0], AdmissibleTuple):
        return {"tuple": list(w[0].as_tuple()), "images": list(w[1])}
    return {"images": list(w)}


def cmd_crosscheck(args) -> int:
    m = _modulus(args)
    if m.e < 2:
        raise UsageError("crosscheck needs e >= 2")
    try:
        report = cross_check(
            m, use_oracle=args.oracle, bound=args.bound, time_limit=args.time_cap,
            workers=args.jobs, checkpoint=args.checkpoint,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except OracleTimeoutError as exc:
        _meta(f"timeout: {exc}")
        return EXIT_NEGATIVE
    info = {
        "p": m.p, "e": m.e, "n": m.n,
        "n1": report.n1_count, "n2": report.n2_count, "total": report.total,
        "closed_form_total": report.closed_form_total,
        "oracle_total": report.oracle_total,
        "mismatches": [
            {"kind": x.kind, "detail": x.detail, "witnesses": [_witness(w) for w in x.witnesses]}
            for x in report.mismatches
        ],
    }
    if args.format == "json":
        _emit(args, _dump_json(info))
    elif args.format == "csv":
        keys = ["p", "e", "n", "n1", "n2", "total", "closed_form_total", "oracle_total"]
        row = ["" if info[k] is None else str(info[k]) for k in keys]
        _emit(args, ",".join(keys + ["mismatches"]) + "\n" + ",".join(row + [str(len(report.mismatches))]) + "\n")
    else:
        lines = [f"{k} {info[k]}" for k in ("n1", "n2", "total", "closed_form_total", "oracle_total")]
        lines += [f"MISMATCH {x.kind}: {x.detail}" for x in report.mismatches]
        lines.append("OK" if report.ok else "FAILED")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


# -- argument parsing --------------------------------------------------------

def _positive_int(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewmorph", description="Skew-morphisms of cyclic p-groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--output", "-o", help="write data here instead of stdout")
    common.add_argument("--closure-cap", type=_positive_int, help="element cap for group closures")

    pe = argparse.ArgumentParser(add_help=False)
    pe.add_argument("--p", type=int, required=True, help="odd prime")
    pe.add_argument("--e", type=int, required=True, help="exponent, n = p**e")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--time-cap", type=_positive_float, help="seconds for the pruned oracle")
    search.add_argument("--jobs", type=_positive_int, help="worker processes for the pruned oracle")
    search.add_argument("--checkpoint", help="resumable progress file for the pruned oracle")
    search.add_argument("--bound", type=_positive_int, default=27, help="largest n accepted by the pruned oracle")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common, pe], help="closed-form counts").set_defaults(func=cmd_count)
    sub.add_parser("enum", parents=[common, pe], help="list every constructive skew-morphism").set_defaults(func=cmd_enum)

    p_verify = sub.add_parser("verify", parents=[common], help="check candidate permutations")
    p_verify.add_argument("file", help="JSON file of candidates, or - for stdin")
    p_verify.set_defaults(func=cmd_verify)

    p_class = sub.add_parser("classify", parents=[common, pe], help="find the admissible tuple of each candidate")
    p_class.add_argument("file", help="JSON file of candidates, or - for stdin")
    p_class.set_defaults(func=cmd_classify)

    p_oracle = sub.add_parser("oracle", parents=[common, search], help="brute-force search on Z_n")
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--mode", choices=("auto", "exhaustive", "pruned"), default="auto")
    p_oracle.set_defaults(func=cmd_oracle)

    p_group = sub.add_parser("group", parents=[common, pe], help="invariants of G(i, j)")
    p_group.add_argument("--i", type=int, required=True)
    p_group.add_argument("--j", type=int, required=True)
    p_group.set_defaults(func=cmd_group)

    p_cross = sub.add_parser("crosscheck", parents=[common, pe, search], help="counts vs closed form vs oracle")
    p_cross.add_argument("--oracle", action="store_true", help="also compare with a brute-force oracle")
    p_cross.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.closure_cap is not None:
        os.environ["SKEWMORPH_CLOSURE_CAP"] = str(args.closure_cap)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"skewmorph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClosureCapError as exc:
        print(f"skewmorph: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ConsistencyError as exc:
        print(f"skewmorph: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
