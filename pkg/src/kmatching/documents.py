"""JSON documents for graphs, points, decompositions and certificates.

Rationals are written as ``"p/q"`` strings in lowest terms and integers as
bare JSON numbers.  Keys are emitted in a fixed order so output can be
compared byte for byte.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd

from .core import BipartiteGraph, Decomposition, Matching, RationalPoint

_RATIO = re.compile(r"(0|[1-9][0-9]*)/([1-9][0-9]*)")


class DocumentError(ValueError):
    """A JSON document does not follow its schema."""


def _int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{what} must be an integer, got {value!r}")
    return value


def number_to_json(value):
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def number_from_json(value) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"entry {value!r} is not a number")
    if isinstance(value, int):
        if value < 0:
            raise DocumentError(f"entry {value} is negative")
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIO.fullmatch(value)
        if not match:
            raise DocumentError(f"entry {value!r} is not of the form \"p/q\" with p >= 0, q >= 1")
        p, q = int(match.group(1)), int(match.group(2))
        if gcd(p, q) != 1:
            raise DocumentError(f"entry {value!r} is not in lowest terms")
        return Fraction(p, q)
    raise DocumentError(f"entry {value!r} must be an integer or a \"p/q\" string")


# ---------------------------------------------------------------- graphs


def graph_to_doc(graph: BipartiteGraph) -> dict:
    return {"m": graph.m, "n": graph.n, "edges": [[i, j] for i, j in graph.sorted_edges]}


def graph_from_doc(doc) -> BipartiteGraph:
    if not isinstance(doc, dict):
        raise DocumentError("graph document must be an object")
    missing = {"m", "n", "edges"} - doc.keys()
    if missing:
        raise DocumentError(f"graph document lacks {sorted(missing)}")
    m, n = _int(doc["m"], "m"), _int(doc["n"], "n")
    if m < 0 or n < 0:
        raise DocumentError("m and n must be nonnegative")
    if not isinstance(doc["edges"], list):
        raise DocumentError("edges must be a list")
    edges = []
    for pair in doc["edges"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentError(f"edge {pair!r} is not an [i, j] pair")
        edges.append((_int(pair[0], "edge index"), _int(pair[1], "edge index")))
    if len(set(edges)) != len(edges):
        raise DocumentError("duplicate edges")
    return BipartiteGraph(m, n, frozenset(edges))


# ---------------------------------------------------------------- points


def point_to_doc(point) -> dict:
    rows = point.rows if isinstance(point, RationalPoint) or hasattr(point, "rows") else point
    return {"rows": [[number_to_json(v) for v in row] for row in rows]}


def point_from_doc(doc) -> RationalPoint:
    if not isinstance(doc, dict) or "rows" not in doc:
        raise DocumentError("point document must be an object with \"rows\"")
    rows = doc["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError("rows must be a list of lists")
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DocumentError("rows have different lengths")
    return RationalPoint([[number_from_json(v) for v in row] for row in rows])


# ---------------------------------------------------------------- results


def matching_to_doc(matching: Matching) -> list:
    return [[i, j] for i, j in matching]


def matching_from_doc(doc) -> Matching:
    if not isinstance(doc, list):
        raise DocumentError("matching must be a list of [i, j] pairs")
    edges = []
    for pair in doc:
        if not isinstance(pair, list) or len(pair) != 2:
            raise DocumentError(f"edge {pair!r} is not an [i, j] pair")
        edges.append((_int(pair[0], "edge index"), _int(pair[1], "edge index")))
    if len(set(edges)) != len(edges):
        raise DocumentError("duplicate edges")
    return Matching(frozenset(edges))


def decomposition_to_doc(dec: Decomposition) -> dict:
    return {
        "form": dec.form,
        "terms": [{"weight": number_to_json(w), "matching": matching_to_doc(mt)} for w, mt in dec.terms],
    }


def decomposition_from_doc(doc) -> Decomposition:
    if not isinstance(doc, dict) or "form" not in doc or "terms" not in doc:
        raise DocumentError("decomposition document needs \"form\" and \"terms\"")
    terms = []
    for term in doc["terms"]:
        if not isinstance(term, dict) or "weight" not in term or "matching" not in term:
            raise DocumentError(f"malformed term {term!r}")
        terms.append((number_from_json(term["weight"]), matching_from_doc(term["matching"])))
    return Decomposition(doc["form"], tuple(terms))


def violation_to_doc(violation) -> dict:
    index = violation.index
    if isinstance(index, tuple):
        index = list(index)
    return {
        "kind": violation.kind,
        "index": index,
        "value": number_to_json(violation.value),
        "bound": None if violation.bound is None else number_to_json(violation.bound),
    }


def verdict_to_doc(verdict) -> dict:
    return {"member": verdict.member, "violation": None if verdict.violation is None else violation_to_doc(verdict.violation)}


def certificate_to_doc(cert) -> dict:
    return {
        "x_prime": point_to_doc(cert.x_prime),
        "x_double_prime": point_to_doc(cert.x_double_prime),
        "epsilon": number_to_json(cert.epsilon),
        "case_tag": cert.case_tag.value,
    }


def certificate_from_doc(doc):
    from .polytope import CaseTag, MidpointCertificate

    try:
        return MidpointCertificate(
            point_from_doc(doc["x_prime"]),
            point_from_doc(doc["x_double_prime"]),
            number_from_json(doc["epsilon"]),
            CaseTag(doc["case_tag"]),
        )
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed certificate document: {exc}") from exc


def dumps(doc) -> str:
    return json.dumps(doc, separators=(", ", ": "))
