"""Command line entry point ``dwlink``.

Exit status: 0 success, 1 usage error, 2 a verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

import numpy as np

log = logging.getLogger("dwlink")

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j, got {text!r}") from None
    if not (0 <= i < 5 and 0 <= j < 5):
        raise argparse.ArgumentTypeError("u values lie in 0..4")
    return i, j


def _u(text: str) -> int:
    u = int(text)
    if not 0 <= u < 5:
        raise argparse.ArgumentTypeError("u must lie in 0..4")
    return u


def _records(args):
    from .catalog import find_record, load_catalog

    recs = load_catalog(args.catalog)
    if getattr(args, "link", None):
        try:
            return [find_record(recs, l) for l in args.link]
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return recs


def _store(args):
    from .store import ResultStore

    return ResultStore(args.store) if args.store else None


# --- subcommands -----------------------------------------------------------------


def cmd_invariants(args) -> int:
    from .anyons import build_category
    from .classify import compute_tensors
    from .store import tensor_to_document

    us = [args.u] if args.u is not None else [0, 1, 2, 3, 4]
    for rec in _records(args):
        ts = compute_tensors(rec, _store(args), us)
        for u, t in ts.items():
            names = build_category(u).names
            if args.format == "json":
                print(json.dumps(tensor_to_document(t, names)))
            else:
                print(f"{rec.id}  u={u}  writhe={t.writhe}  components={t.order}")
                if t.order == 1:
                    for i, n in enumerate(names):
                        print(f"  {n:8s} {t[i]}")
                else:
                    ids, vals = t.value_ids
                    print(f"  {ids.size} entries, {len(vals)} distinct values")
    return EXIT_OK


def cmd_modperms(args) -> int:
    from .modular import backtrack_modular_permutations, enumerate_T_respecting, modular_permutations

    i, j = args.pair
    perms = modular_permutations(i, j)
    print(f"u={i} -> u={j}: {enumerate_T_respecting(i, j).count} T-respecting candidates, {len(perms)} modular permutations")
    status = EXIT_OK
    if args.check:
        bt = backtrack_modular_permutations(i, j)
        if [p.images for p in bt] != [p.images for p in perms]:
            print("MISMATCH: backtracking matcher disagrees with the block filter")
            status = EXIT_MISMATCH
        ref = _reference_perms(i, j)
        if ref is not None:
            ours = {frozenset(p.as_names().items()) for p in perms}
            if ours != ref:
                print("MISMATCH: permutations differ from the reference table")
                status = EXIT_MISMATCH
            else:
                print("reference table: match")
    if args.emit_table and perms:
        names = perms[0].names
        for a, n in enumerate(names):
            print("\t".join([n] + [names[p.images[a]] for p in perms]))
    return status


def _reference_perms(i, j):
    name = {(1, 4): "modperms_1_4.tsv", (2, 3): "modperms_2_3.tsv"}.get((i, j))
    if name is None:
        return None
    rows = [
        l.split("\t")
        for l in (resources.files("dwlink") / "data" / name).read_text(encoding="utf-8").splitlines()
        if l and not l.startswith("#")
    ]
    return {frozenset((r[0], r[c]) for r in rows) for c in range(1, len(rows[0]))}


def cmd_classify(args) -> int:
    from .classify import classify, compare_with_reference, compute_all

    recs = _records(args)
    store = _store(args)
    if store is not None:
        compute_all(recs, store, jobs=args.jobs)
    results = [classify(r, store=store) for r in recs]
    for r in results:
        flags = " ".join(f"({i},{j}):{'compatible' if ok else 'blocked'}" for (i, j), ok in r.compatible.items())
        print(f"{r.id}\tweak={int(r.weak)}\tstrong={int(r.strong)}\tall_equal={int(r.all_equal)}\t{flags}")
    if args.check:
        bad = compare_with_reference(results)
        for line in bad:
            print("MISMATCH:", line)
        return EXIT_MISMATCH if bad else EXIT_OK
    return EXIT_OK


def cmd_report(args) -> int:
    from .classify import classify, compare_with_reference, compute_all, report_tables

    recs = _records(args)
    store = _store(args)
    if store is not None:
        compute_all(recs, store, jobs=args.jobs)
    results = [classify(r, store=store) for r in recs]
    fmt = "tsv" if args.format == "tsv" else "markdown"
    sys.stdout.write(report_tables(results, recs, fmt))
    if args.check:
        bad = compare_with_reference(results)
        for line in bad:
            print("MISMATCH:", line, file=sys.stderr)
        return EXIT_MISMATCH if bad else EXIT_OK
    return EXIT_OK


def cmd_quandle(args) -> int:
    from .quandle import count_colorings

    for rec in _records(args):
        ks = [args.k] if args.k else [1, 2, 3, 4]
        counts = {k: count_colorings(rec.braid, k, method=args.method) for k in ks}
        print(rec.id, " ".join(f"k={k}:{c}" for k, c in counts.items()))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .anyons import build_category, reference_twist
    from .cocycle import verify_cocycle
    from .modular import compute_modular_data, modular_data_equal_as_sets, unitarity_defect, verlinde_fusion

    failures = []
    us = [args.u] if args.u is not None else [0, 1, 2, 3, 4]
    for u in us:
        if not verify_cocycle(u):
            failures.append(f"cocycle u={u}")
        C = build_category(u)
        if any(a.twist != reference_twist(a.label, u) for a in C):
            failures.append(f"twists u={u}")
        md = compute_modular_data(u)
        if np.any(unitarity_defect(md)):
            failures.append(f"S unitarity u={u}")
        try:
            verlinde_fusion(md)
        except ArithmeticError as exc:
            failures.append(f"Verlinde u={u}: {exc}")
        print(f"u={u}: cocycle, twists, S and fusion checked")
    if args.u is None:
        groups = {frozenset(j for j in range(5) if modular_data_equal_as_sets(i, j)) for i in range(5)}
        if groups != {frozenset({0}), frozenset({1, 4}), frozenset({2, 3})}:
            failures.append(f"modular data classes {sorted(map(sorted, groups))}")
        print("modular data classes:", sorted(map(sorted, groups)))
    if args.oracle:
        failures += _oracle(args, us)
    for f in failures:
        print("MISMATCH:", f)
    return EXIT_MISMATCH if failures else EXIT_OK


def _oracle(args, us) -> list[str]:
    from .anyons import AnyonLabel, build_category
    from .braids import engine
    from .cyclotomic import ring
    from .quandle import quandle_prediction

    bad = []
    recs = _records(args)
    for u in us:
        E = engine(u)
        for rec in recs:
            labels = np.array(
                [[E.category.index(AnyonLabel("B", k, s))] * rec.strands for k in range(1, 5) for s in range(5)]
            )
            got = E.traces(rec.braid, labels)
            for row, (k, s) in zip(got, [(k, s) for k in range(1, 5) for s in range(5)]):
                if not np.array_equal(row, quandle_prediction(rec.braid, k, s, u).coeffs):
                    bad.append(f"quandle oracle {rec.id} u={u} B_{k}_{s}")
    print(f"quandle oracle checked on {len(recs)} links")
    return bad


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog TSV (default: bundled)")
    common.add_argument("--store", help="result store directory")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", choices=["text", "json", "markdown", "tsv"], default="text")
    common.add_argument("--link", action="append", help="restrict to this catalog id (repeatable)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="dwlink", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", parents=[common], help="invariant tensors of catalog links")
    s.add_argument("--u", type=_u)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("modperms", parents=[common], help="modular permutations between two categories")
    s.add_argument("--pair", type=_pair, required=True)
    s.add_argument("--emit-table", action="store_true")
    s.add_argument("--check", action="store_true", help="cross-check with backtracking and the reference table")
    s.set_defaults(func=cmd_modperms)

    s = sub.add_parser("classify", parents=[common], help="weak/strong classification")
    s.add_argument("--check", action="store_true", help="compare with the reference checkmarks")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("quandle", parents=[common], help="Alexander quandle colouring counts")
    s.add_argument("--k", type=int, choices=[1, 2, 3, 4])
    s.add_argument("--method", choices=["linear", "bruteforce"], default="linear")
    s.set_defaults(func=cmd_quandle)

    s = sub.add_parser("verify", parents=[common], help="structural self-checks")
    s.add_argument("--u", type=_u)
    s.add_argument("--oracle", action="store_true", help="also check B-labelled invariants against quandle counts")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("report", parents=[common], help="render the classification tables")
    s.add_argument("--check", action="store_true", help="compare with the reference checkmarks")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"dwlink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"dwlink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # malformed catalog and similar input problems
        print(f"dwlink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
