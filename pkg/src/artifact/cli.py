"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 invalid input, 3 budget exhausted
(a partial artifact flagged as incomplete is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import derived, pieces
from .bent import BudgetExhausted
from .surfaces import enumerate_surfaces
from .triangulation import TriangulationError, parse_triangulation, validate

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Normal surfaces and derived complexes of triangulated 3-manifolds.")
    p.add_argument("--threads", type=_positive, default=1)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a triangulation")
    v.add_argument("input")

    e = sub.add_parser("enumerate", help="list index-0/1/2 normal surfaces")
    e.add_argument("input")
    e.add_argument("--index", type=int, choices=(0, 1, 2), required=True)
    e.add_argument("--genus", type=_non_negative, required=True)
    e.add_argument("--weight-cap", type=_non_negative, required=True)
    e.add_argument("--budget", type=_positive, default=2_000_000)
    e.add_argument("--output")

    c = sub.add_parser("classify-loop", help="classify a straight loop in a tetrahedron")
    c.add_argument("weights", help="six edge weights in the order 01,02,03,12,13,23")
    c.add_argument("--arcs", help="optional arc sequence 'face:corner,...' to check against the weights")

    b = sub.add_parser("build-d2", help="build the derived complex")
    b.add_argument("input")
    b.add_argument("--genus", type=_non_negative, required=True)
    b.add_argument("--weight-cap", type=_non_negative, required=True)
    b.add_argument("--budget", type=_positive, default=derived.DEFAULT_BUDGETS["slice"])
    b.add_argument("--format", choices=("json", "dot"), default="json")
    b.add_argument("--output")
    b.add_argument("--threads", type=_positive, default=argparse.SUPPRESS)

    q = sub.add_parser("query", help="ask a decision question of a built complex")
    q.add_argument("question", choices=("incompressible", "isotopic", "stabilized", "stable-genus"))
    q.add_argument("complex")
    q.add_argument("--vertex", action="append", default=[])
    q.add_argument("--path", action="append", default=[], help="comma-separated edge ids")
    q.add_argument("--gmax", type=float)
    q.add_argument("--budget", type=_positive, default=10_000)
    q.add_argument("--output")

    x = sub.add_parser("export", help="re-export a built complex")
    x.add_argument("complex")
    x.add_argument("--format", choices=("json", "dot"), default="json")
    x.add_argument("--output")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_tri(path: str, strict: bool = True):
    try:
        return parse_triangulation(_read(path), strict=strict)
    except TriangulationError as exc:
        raise InputError(str(exc)) from None


def _load_complex(path: str):
    try:
        return derived.load_json(_read(path))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"not a derived complex document: {exc}") from None


def _cmd_validate(args) -> int:
    tri = _load_tri(args.input, strict=False)
    report = validate(tri)
    for name, ok in report.checks.items():
        print(f"{'pass' if ok else 'FAIL'}  {name}")
    return EXIT_OK if report.ok else EXIT_INPUT


def _cmd_enumerate(args) -> int:
    tri = _load_tri(args.input)
    try:
        found = enumerate_surfaces(tri, args.index, args.genus, args.weight_cap, args.budget)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        _write(args.output, json.dumps({"complete": False, "surfaces": []}, sort_keys=True) + "\n")
        return EXIT_BUDGET
    doc = [s.to_dict() for s in found]
    _write(args.output, json.dumps(doc, sort_keys=True) + "\n")
    # keep stdout pure JSON when no output file is given
    summary = sys.stdout if args.output else sys.stderr
    print(f"{len(doc)} index-{args.index} surfaces of genus <= {args.genus}", file=summary)
    return EXIT_OK


def _cmd_classify(args) -> int:
    try:
        weights = tuple(int(x) for x in args.weights.replace(" ", "").split(","))
    except ValueError:
        raise UsageError("weights must be six comma-separated integers") from None
    if len(weights) != 6:
        raise UsageError("weights must have six entries")
    try:
        pattern = pieces.loop_from_weights(weights)
    except pieces.LoopError as exc:
        raise InputError(str(exc)) from None
    if args.arcs:
        try:
            arcs = pieces.parse_arc_sequence(args.arcs)
        except ValueError:
            raise UsageError("arc sequence must look like 'face:corner,...'") from None
        if not pieces.same_cyclic_sequence(arcs, pattern.arcs):
            raise InputError("arc sequence does not match the weights")
    cls = pieces.classify_piece(pattern)
    print(json.dumps({"class": cls.kind, "label": cls.label, "index": cls.index, "corners": pattern.n},
                     sort_keys=True))
    return EXIT_OK


def _cmd_build(args) -> int:
    tri = _load_tri(args.input)
    budgets = {"slice": args.budget, "paths": max(args.budget, 1)}
    try:
        D = derived.build_d2(tri, args.genus, args.weight_cap, budgets, threads=args.threads)
        code = EXIT_OK
    except derived.BuildBudgetExceeded as exc:
        D, code = exc.partial, EXIT_BUDGET
    _write(args.output, derived.export(D, args.format))
    if args.output:
        counts = {i: len(D.vertex_ids(i)) for i in (0, 1, 2)}
        print(f"vertices by index {counts}, {len(D.edges)} edges, {len(D.faces)} faces, "
              f"complete={D.complete}")
    if code == EXIT_BUDGET:
        print("search budget exhausted; the artifact is flagged partial", file=sys.stderr)
    return code


def _paths(args, n: int) -> list:
    if len(args.path) != n:
        raise UsageError(f"expected {n} --path argument(s)")
    return [tuple(x for x in p.split(",") if x) for p in args.path]


def _cmd_query(args) -> int:
    D = _load_complex(args.complex)
    try:
        if args.question == "incompressible":
            if len(args.vertex) != 1:
                raise UsageError("expected one --vertex")
            verdict = derived.query_incompressible(D, args.vertex[0])
        elif args.question == "isotopic":
            if len(args.vertex) != 2:
                raise UsageError("expected two --vertex arguments")
            verdict = derived.query_isotopic_incompressible(D, *args.vertex)
        elif args.question == "stabilized":
            verdict = derived.query_stabilized(D, _paths(args, 1)[0], args.budget)
        else:
            if args.gmax is None:
                raise UsageError("stable-genus needs --gmax")
            p1, p2 = _paths(args, 2)
            verdict = derived.stable_genus_bound(D, p1, p2, args.gmax, args.budget)
    except derived.DerivedError as exc:
        raise InputError(str(exc)) from None
    _write(args.output, json.dumps(verdict.to_dict(), sort_keys=True) + "\n")
    if args.output:
        print(verdict.status)
    return EXIT_OK


def _cmd_export(args) -> int:
    D = _load_complex(args.complex)
    _write(args.output, derived.export(D, args.format))
    return EXIT_OK


_COMMANDS = {"validate": _cmd_validate, "enumerate": _cmd_enumerate, "classify-loop": _cmd_classify,
             "build-d2": _cmd_build, "query": _cmd_query, "export": _cmd_export}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
