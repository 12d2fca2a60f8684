"""Command-line front end.

Exit status: 0 on success (or membership), 1 for a mathematical negative
(non-member, integral point, no decomposition), 2 for malformed input or a
search that exceeds its guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import BipartiteGraph
from .documents import (
    DocumentError,
    certificate_to_doc,
    decomposition_to_doc,
    dumps,
    graph_from_doc,
    matching_to_doc,
    point_from_doc,
    point_to_doc,
    verdict_to_doc,
    violation_to_doc,
)
from .errors import (
    AlreadyIntegral,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidMatching,
    NotAMember,
    NotInDilatedBirkhoff,
    NotInDilatedPolytope,
    SupportOutsideGraph,
    TooLarge,
)
from .normality import birkhoff_decompose, fractional_decompose, k_extract, normality_decompose, remainder
from .oracle import enumerate_integer_points, enumerate_k_matchings
from .polytope import Violation, membership, midpoint_certificate

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc


def _graph(args) -> BipartiteGraph:
    if not args.graph:
        raise InputError("--graph is required")
    return graph_from_doc(_load(args.graph))


def _point(args):
    if not args.point:
        raise InputError("--point is required")
    return point_from_doc(_load(args.point))


def _integer_rows(point):
    if not point.is_integral():
        raise InputError("this command needs an integer point")
    return point.to_integer()


def _need(value, flag):
    if value is None:
        raise InputError(f"{flag} is required")
    if value < 0:
        raise InputError(f"{flag} must be nonnegative")
    return value


def _emit(doc) -> None:
    print(dumps(doc))


def _negative(doc, message: str) -> int:
    _emit(doc)
    print(message, file=sys.stderr)
    return NEGATIVE


# ---------------------------------------------------------------- commands


def cmd_membership(args) -> int:
    graph, point = _graph(args), _point(args)
    t = 1 if args.t is None else args.t
    if t < 1:
        raise InputError("--t must be positive")
    verdict = membership(point, graph, _need(args.k, "--k"), args.mode.replace("-", "_"), t)
    _emit(verdict_to_doc(verdict))
    return OK if verdict else NEGATIVE


def cmd_decompose(args) -> int:
    graph, point = _graph(args), _point(args)
    k = _need(args.k, "--k")
    try:
        if args.fractional:
            dec = fractional_decompose(point, graph, k)
        else:
            t = _need(args.t, "--t")
            if t < 1:
                raise InputError("--t must be positive")
            dec = normality_decompose(_integer_rows(point), graph, t, k)
    except (NotAMember, NotInDilatedPolytope) as exc:
        return _negative({"member": False, "violation": violation_to_doc(exc.violation)}, str(exc))
    except SupportOutsideGraph as exc:
        violation = Violation("support", (exc.i, exc.j), point.rows[exc.i][exc.j])
        return _negative({"member": False, "violation": violation_to_doc(violation)}, str(exc))
    _emit(decomposition_to_doc(dec))
    return OK


def cmd_certificate(args) -> int:
    graph, point = _graph(args), _point(args)
    try:
        cert = midpoint_certificate(point, graph, _need(args.k, "--k"))
    except NotAMember as exc:
        return _negative({"member": False, "violation": violation_to_doc(exc.violation)}, str(exc))
    except AlreadyIntegral as exc:
        return _negative({"integral": True}, str(exc))
    _emit(certificate_to_doc(cert))
    return OK


def cmd_extract(args) -> int:
    point = _integer_rows(_point(args))
    t, k = _need(args.t, "--t"), _need(args.k, "--k")
    if t < 1:
        raise InputError("--t must be positive")
    if point.m != point.n:
        raise InputError(f"extract needs a square point, got {point.m}x{point.n}")
    try:
        mt = k_extract(point, t, k)
    except NotInDilatedPolytope as exc:
        return _negative({"member": False, "violation": violation_to_doc(exc.violation)}, str(exc))
    _emit({"matching": matching_to_doc(mt), "remainder": point_to_doc(remainder(point, mt))})
    return OK


def cmd_birkhoff(args) -> int:
    point = _integer_rows(_point(args))
    t = _need(args.t, "--t")
    if t < 1:
        raise InputError("--t must be positive")
    if point.m != point.n:
        raise InputError(f"birkhoff needs a square point, got {point.m}x{point.n}")
    try:
        dec = birkhoff_decompose(point, t)
    except NotInDilatedBirkhoff as exc:
        doc = {"kind": exc.kind, "index": exc.index, "value": exc.value, "bound": exc.t}
        return _negative({"member": False, "violation": doc}, str(exc))
    _emit(decomposition_to_doc(dec))
    return OK


def cmd_oracle_enumerate(args) -> int:
    graph = _graph(args)
    k = _need(args.k, "--k")
    if args.t is None:
        _emit({"matchings": [matching_to_doc(mt) for mt in enumerate_k_matchings(graph, k)]})
    else:
        _emit({"points": [point_to_doc(p) for p in enumerate_integer_points(graph, k, _need(args.t, "--t"))]})
    return OK


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(
        max_m=args.max_m,
        max_n=args.max_n,
        max_k=args.max_k,
        max_t=args.max_t,
        trials=args.trials,
        seed=args.seed,
        max_denominator=args.max_denominator,
    )
    for res in results:
        for example in res.examples:
            print(f"  {res.name} failed on {example}", file=sys.stderr)
    return OK if all(r.passed for r in results) else NEGATIVE


COMMANDS = {
    "membership": cmd_membership,
    "decompose": cmd_decompose,
    "certificate": cmd_certificate,
    "extract": cmd_extract,
    "birkhoff": cmd_birkhoff,
    "oracle-enumerate": cmd_oracle_enumerate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmatching", description="Exact k-matching polytope tools.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--graph", help="GraphDocument JSON file")
        p.add_argument("--point", help="PointDocument JSON file")
        p.add_argument("--k", type=int)
        p.add_argument("--t", type=int)
        if name == "membership":
            p.add_argument("--mode", choices=("exact", "at-most", "at-least"), default="exact")
        if name == "decompose":
            p.add_argument("--fractional", action="store_true", help="convex decomposition of a rational point")
        if name == "verify":
            p.add_argument("--max-m", type=int, default=3)
            p.add_argument("--max-n", type=int, default=3)
            p.add_argument("--max-k", type=int, default=3)
            p.add_argument("--max-t", type=int, default=3)
            p.add_argument("--trials", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--max-denominator", type=int, default=60)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except TooLarge as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (InputError, DocumentError, DimensionMismatch, IndexOutOfRange, InvalidMatching, ValueError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
