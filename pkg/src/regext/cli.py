"""Command-line frontend.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exceeded.  Data goes to stdout (or ``--output``), diagnostics to stderr.
JSON output is deterministic; text output is meant for people.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import classifier
from .classifier import InvalidCertificate, NoWitness
from .closed_sets import (
    RootSubset,
    closure,
    decompose,
    enumerate_closed,
    enumerate_closed_up_to_conjugacy,
    is_closed,
    symmetrize,
    violating_pair,
)
from .dynkin import PathError
from .errors import BudgetExceeded, NotClosedError
from .rootsys import LieType, RootSystemError, Weight, build_root_system, dominant_weights_up_to

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("regext")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return n


def worker_count() -> int:
    raw = os.environ.get("REGEXT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"REGEXT_THREADS must be an integer, got {raw!r}") from None


def load_subset(rs, literal: str) -> RootSubset:
    if literal.startswith("@"):
        try:
            literal = Path(literal[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read subset file: {exc}") from None
    try:
        return RootSubset.parse(rs, literal)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad subset literal: {exc}") from None


def _weight(rs, literal: str) -> Weight:
    w = Weight.parse(literal)
    if len(w.coords) != rs.rank:
        raise UsageError(f"weight {literal} has {len(w.coords)} coordinates, expected {rs.rank}")
    return w


def _grid(rs, args) -> list[Weight]:
    if getattr(args, "weight", None):
        return [_weight(rs, args.weight)]
    return dominant_weights_up_to(rs, args.bound)


# -- commands; each returns (json document, csv rows, text lines, exit code)


def cmd_roots(args):
    rs = build_root_system(args.type)
    roots = [list(r.coeffs) for r in rs.roots]
    doc = {"system": str(rs.lie_type), "count": len(roots), "positive_count": rs.positive_count,
           "cartan": [list(row) for row in rs.cartan], "roots": roots}
    rows = [["index", "root", "height"]] + [[k, str(r), r.height] for k, r in enumerate(rs.roots)]
    text = [f"{rs.lie_type}: {len(roots)} roots"] + [f"  {r}" for r in rs.roots]
    return doc, rows, text, EXIT_OK


def cmd_closure(args):
    rs = build_root_system(args.type)
    T = load_subset(rs, args.subset)
    C = closure(T)
    doc = {"system": str(rs.lie_type), "subset": T.to_json(), "is_closed": is_closed(T),
           "closure": C.to_json(), "symmetrized": symmetrize(C).to_json(), "kind": decompose(C).kind}
    pair = violating_pair(T)
    if pair is not None:
        doc["violating_pair"] = [list(rs.roots[k].coeffs) for k in pair]
    rows = [["field", "value"]] + [[k, json.dumps(v)] for k, v in doc.items()]
    text = [f"closed: {doc['is_closed']}", f"closure: {C.literal()}", f"[T u -T]: {symmetrize(C).literal()}",
            f"kind: {doc['kind']}"]
    return doc, rows, text, EXIT_OK


def cmd_enumerate(args):
    rs = build_root_system(args.type)
    if args.mode == "full":
        items = [(T, None) for T in enumerate_closed(rs)]
    else:
        items = enumerate_closed_up_to_conjugacy(rs)
    out = []
    for T, orbit in items:
        entry = {"subset": T.to_json(), "size": len(T), "kind": decompose(T).kind}
        if orbit is not None:
            entry["orbit_size"] = orbit
        out.append(entry)
    doc = {"system": str(rs.lie_type), "mode": args.mode, "count": len(out), "subsets": out}
    rows = [["subset", "size", "kind", "orbit_size"]] + [
        [T.literal(), len(T), decompose(T).kind, "" if o is None else o] for T, o in items
    ]
    text = [f"{rs.lie_type}: {len(out)} closed subsets ({args.mode})"] + [
        f"  {{{T.literal()}}} {decompose(T).kind}" for T, _ in items
    ]
    return doc, rows, text, EXIT_OK


def cmd_classify(args):
    rs = build_root_system(args.type)
    T = load_subset(rs, args.subset)
    v = classifier.classify_subset(T, _grid(rs, args), args.dim_cap)
    doc = {"system": str(rs.lie_type)} | v.to_json()
    rows = [["lambda", "kind", "witness", "path", "validated_by"]] + [
        [" ".join(map(str, c.lam.coords)) if c.lam else "", c.kind,
         "" if c.witness_weight is None else str(c.witness_weight),
         "" if c.path is None else c.path.label(), c.validated_by or ""]
        for c in v.certificates
    ]
    text = [f"{{{T.literal()}}}: {v.verdict} ({v.kind})"] + [
        f"  {c.lam}: {c.kind} -> {c.witness_weight}" + (f" via {c.path.label()}" if c.path else "")
        for c in v.certificates if c.lam is not None
    ] + [f"  problem: {p}" for p in v.problems]
    return doc, rows, text, EXIT_FAILED if v.verdict == "violation" else EXIT_OK


def cmd_witness(args):
    rs = build_root_system(args.type)
    T = load_subset(rs, args.subset)
    c = classifier.narrow_witness(T, _weight(rs, args.weight), args.dim_cap)
    doc = {"system": str(rs.lie_type), "subset": T.to_json(), "symmetrized": c.symmetrized.to_json()} | c.to_json()
    rows = [["field", "value"]] + [[k, json.dumps(v)] for k, v in doc.items()]
    text = [f"{c.kind}: witness {c.witness_weight}" + (f", path {c.path.label()}" if c.path else ""),
            f"validated by {c.validated_by}"]
    return doc, rows, text, EXIT_OK


def cmd_oracle_check(args):
    rs = build_root_system(args.type)
    T = load_subset(rs, args.subset)
    chk = classifier.oracle_check(T, _weight(rs, args.weight), args.dim_cap)
    doc = {"system": str(rs.lie_type), "subset": T.to_json()} | chk.to_json()
    rows = [["field", "value"]] + [[k, json.dumps(v)] for k, v in doc.items()]
    text = [f"dim {chk.dim}: lambda-wide {chk.lambda_wide}, indecomposable {chk.indecomposable} "
            f"(commutant {chk.commutant_dim}, radical {chk.radical_dim})"]
    return doc, rows, text, EXIT_OK if chk.agree else EXIT_FAILED


def cmd_verify_extreme(args):
    rs = build_root_system(args.type)
    report = classifier.verify_regular_extreme(rs, args.bound, args.dim_cap, args.mode,
                                               time_budget=args.time_budget, workers=worker_count())
    log.info("%s: %d subsets checked in %.2fs", report.system, len(report.results), report.elapsed)
    doc = report.to_json()
    rows = [["subset", "kind", "verdict", "certificates", "oracle_checks", "oracle_agree"]] + [
        [r.subset.literal(), r.kind, r.verdict, len(r.certificates), len(r.oracle_checks),
         all(c.agree for c in r.oracle_checks)]
        for r in report.results
    ]
    s = report.counts()
    text = [f"{report.system} ({report.mode}, bound {report.coeff_bound}, dim cap {report.dim_cap})",
            f"  subsets {s['total']}: wide {s['wide']}, narrow {s['narrow']}, violations {s['violation']}",
            f"  oracle checks {s['oracle_checks']}, criterion-validated certificates {s['criterion_validated']}",
            f"  dichotomy holds: {report.dichotomy_holds}" + (" (incomplete)" if report.incomplete else "")]
    if not report.dichotomy_holds:
        code = EXIT_FAILED
    elif report.incomplete:
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    return doc, rows, text, code


def cmd_nonsimple_demo(args):
    types = [LieType.parse(t) for t in args.types.split(",")]
    if len(types) < 2:
        raise UsageError("--types needs at least two comma-separated types")
    lam = _weight(build_root_system(types[0]), args.lam)
    eta = _weight(build_root_system(types[1]), args.eta)
    r = classifier.nonsimple_demo(types, lam, eta, args.dim_cap)
    doc = r.to_json()
    rows = [["field", "value"]] + [[k, json.dumps(v)] for k, v in doc.items()]
    text = [f"V = V1({lam}) x trivial: dim {r.v_dim}, indecomposable over g1: {r.v_indecomposable}",
            f"W = trivial x V2({eta}): dim {r.w_dim}, splits over g1 into {r.w_summands} trivial lines",
            f"first factor neither narrow nor wide: {r.not_narrow and r.not_wide}"]
    ok = r.not_narrow and r.not_wide and r.w_summands == r.w_dim
    return doc, rows, text, EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regext", description="Wide and narrow regular subalgebras of simple Lie algebras.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        return sp

    sp = command("roots", cmd_roots, "list the roots of a simple type")
    sp.add_argument("--type", required=True)

    sp = command("closure", cmd_closure, "closure and symmetrization of a root subset")
    sp.add_argument("--type", required=True)
    sp.add_argument("--subset", required=True, help='e.g. "1,0;-1,0" or @file.json')

    sp = command("enumerate", cmd_enumerate, "list closed subsets")
    sp.add_argument("--type", required=True)
    sp.add_argument("--mode", choices=("full", "conjugacy"), default="full")

    sp = command("classify", cmd_classify, "wide/narrow verdict with certificates")
    sp.add_argument("--type", required=True)
    sp.add_argument("--subset", required=True)
    sp.add_argument("--weight", help="a single weight instead of the grid")
    sp.add_argument("--bound", type=_nonnegative, default=1)
    sp.add_argument("--dim-cap", type=_positive, default=classifier.ORACLE_CAP)

    for name, func, help_ in (("witness", cmd_witness, "narrow witness certificate"),
                              ("oracle-check", cmd_oracle_check, "span criterion against the commutant oracle")):
        sp = command(name, func, help_)
        sp.add_argument("--type", required=True)
        sp.add_argument("--subset", required=True)
        sp.add_argument("--weight", required=True)
        sp.add_argument("--dim-cap", type=_positive, default=classifier.ORACLE_CAP)

    sp = command("verify-extreme", cmd_verify_extreme, "check the dichotomy over all closed subsets")
    sp.add_argument("--type", required=True)
    sp.add_argument("--bound", type=_nonnegative, default=2)
    sp.add_argument("--dim-cap", type=_positive, default=classifier.ORACLE_CAP)
    sp.add_argument("--mode", choices=("full", "conjugacy"), default="full")
    sp.add_argument("--time-budget", type=float, help="seconds; stop early and flag the report incomplete")

    sp = command("nonsimple-demo", cmd_nonsimple_demo, "the semisimple counterexample")
    sp.add_argument("--types", required=True, help="comma-separated, e.g. A1,A2")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--eta", required=True)
    sp.add_argument("--dim-cap", type=_positive, default=classifier.ORACLE_CAP)
    return p


def render(doc, rows, text, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return "\n".join(text) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"regext: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        doc, rows, text, code = args.func(args)
    except UsageError as exc:
        print(f"regext: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"regext: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidCertificate as exc:
        print(f"regext: certificate failed validation: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (NotClosedError, NoWitness, PathError, RootSystemError, ValueError) as exc:
        print(f"regext: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = render(doc, rows, text, args.format)
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)
    if code == EXIT_FAILED:
        print("regext: verification failed", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
