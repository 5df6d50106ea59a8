"""Strict JSON documents for fixed point data and GKM graphs.

Rationals travel as canonical strings ("-5", "1/2"); integers may be bare.
Unknown keys are rejected so that a typo never silently drops a field.
"""

import io
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from .errors import FpdParseError, GraphParseError
from .fixloc import FixedComponent, FixedPointData
from .gkm import GKMEdge, GKMGraph, GKMVertex
from .series import format_rational

logger = logging.getLogger(__name__)

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")

FPD_KEYS = {"half_dim", "monotone", "spin", "components"}
COMPONENT_KEYS = {"dim", "betti", "signature", "lambda", "moment_value", "weights"}
GRAPH_KEYS = {"rank", "valence", "vertices", "edges"}
VERTEX_KEYS = {"id", "moment"}
EDGE_KEYS = {"v", "w", "weight"}


def read_source(source) -> str:
    """Text of a path, of "-" (standard input) or of an open stream."""
    if source == "-":
        return sys.stdin.read()
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


class _Reader:
    """Field-path aware accessors; every failure raises `error` naming the field."""

    def __init__(self, error):
        self.error = error

    def document(self, text):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise self.error(exc.msg, line=exc.lineno, column=exc.colno)

    def obj(self, value, path, allowed, required):
        if not isinstance(value, dict):
            raise self.error("expected an object", field=path)
        unknown = sorted(set(value) - allowed)
        if unknown:
            raise self.error(f"unknown field {unknown[0]!r}", field=path)
        for key in sorted(required):
            if key not in value:
                raise self.error(f"missing field {key!r}", field=path)
        return value

    def integer(self, value, path, minimum=None):
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error(f"expected an integer, got {value!r}", field=path)
        if minimum is not None and value < minimum:
            raise self.error(f"must be >= {minimum}, got {value}", field=path)
        return value

    def boolean(self, value, path):
        if not isinstance(value, bool):
            raise self.error(f"expected true or false, got {value!r}", field=path)
        return value

    def array(self, value, path):
        if not isinstance(value, list):
            raise self.error("expected an array", field=path)
        return value

    def integers(self, value, path, minimum=None):
        return [self.integer(x, f"{path}[{i}]", minimum) for i, x in enumerate(self.array(value, path))]

    def rational(self, value, path):
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        if not isinstance(value, str) or not _RATIONAL.fullmatch(value):
            raise self.error(f"expected a rational string like \"p/q\", got {value!r}", field=path)
        parsed = Fraction(value)
        if format_rational(parsed) != value:
            raise self.error(f"rational {value!r} is not in lowest terms, write {format_rational(parsed)!r}", field=path)
        return parsed


def _component(reader, raw, path, half_dim):
    raw = reader.obj(raw, path, COMPONENT_KEYS, {"dim", "betti", "signature", "lambda"})
    dim = reader.integer(raw["dim"], f"{path}.dim", minimum=0)
    if dim % 2:
        raise FpdParseError(f"dimension {dim} is odd", field=f"{path}.dim")
    if dim > 2 * half_dim:
        raise FpdParseError(f"dimension {dim} exceeds ambient dimension {2 * half_dim}", field=f"{path}.dim")
    betti = reader.integers(raw["betti"], f"{path}.betti", minimum=0)
    if len(betti) != dim + 1:
        raise FpdParseError(f"expected {dim + 1} Betti numbers for dimension {dim}, got {len(betti)}",
                            field=f"{path}.betti")
    if betti[0] != 1:
        raise FpdParseError(f"b_0 = {betti[0]}, a fixed component is connected", field=f"{path}.betti")
    for i in range(dim + 1):
        if betti[i] != betti[dim - i]:
            raise FpdParseError(f"Poincare duality violated: b_{i} = {betti[i]} but b_{dim - i} = {betti[dim - i]}",
                                field=f"{path}.betti")
    signature = reader.integer(raw["signature"], f"{path}.signature")
    lam = reader.integer(raw["lambda"], f"{path}.lambda", minimum=0)
    rank = half_dim - dim // 2
    if lam > rank:
        raise FpdParseError(f"lambda = {lam} exceeds the normal rank {rank}", field=f"{path}.lambda")
    moment_value = None
    if "moment_value" in raw:
        moment_value = reader.rational(raw["moment_value"], f"{path}.moment_value")
    weights = None
    if "weights" in raw:
        weights = tuple(reader.integers(raw["weights"], f"{path}.weights"))
        if 0 in weights:
            raise FpdParseError("normal weights are nonzero", field=f"{path}.weights")
    return FixedComponent(dim, tuple(betti), signature, lam, moment_value, weights)


def loads_fpd(text: str) -> FixedPointData:
    reader = _Reader(FpdParseError)
    raw = reader.obj(reader.document(text), "$", FPD_KEYS, {"half_dim", "components"})
    half_dim = reader.integer(raw["half_dim"], "half_dim", minimum=0)
    monotone = reader.boolean(raw.get("monotone", False), "monotone")
    spin = reader.boolean(raw["spin"], "spin") if "spin" in raw else None
    components = reader.array(raw["components"], "components")
    if not components:
        raise FpdParseError("components must be non-empty", field="components")
    parsed = tuple(_component(reader, c, f"components[{i}]", half_dim) for i, c in enumerate(components))
    logger.info("Parsed fixed point data: dimension %d, %d components", 2 * half_dim, len(parsed))
    return FixedPointData(half_dim, parsed, monotone, spin)


def parse_fpd(source) -> FixedPointData:
    return loads_fpd(read_source(source))


def fpd_to_dict(fpd: FixedPointData) -> dict:
    document = {"half_dim": fpd.half_dim, "monotone": fpd.monotone}
    if fpd.spin is not None:
        document["spin"] = fpd.spin
    components = []
    for c in fpd.components:
        item = {"dim": c.dim, "betti": list(c.betti), "signature": c.signature, "lambda": c.lam}
        if c.moment_value is not None:
            item["moment_value"] = format_rational(c.moment_value)
        if c.weights is not None:
            item["weights"] = list(c.weights)
        components.append(item)
    document["components"] = components
    return document


def dumps_fpd(fpd: FixedPointData) -> str:
    return json.dumps(fpd_to_dict(fpd), indent=2)


def loads_graph(text: str) -> GKMGraph:
    reader = _Reader(GraphParseError)
    raw = reader.obj(reader.document(text), "$", GRAPH_KEYS, GRAPH_KEYS)
    rank = reader.integer(raw["rank"], "rank", minimum=1)
    valence = reader.integer(raw["valence"], "valence", minimum=0)
    vertices = []
    for i, item in enumerate(reader.array(raw["vertices"], "vertices")):
        path = f"vertices[{i}]"
        item = reader.obj(item, path, VERTEX_KEYS, VERTEX_KEYS)
        if not isinstance(item["id"], str):
            raise GraphParseError("vertex ids are strings", field=f"{path}.id")
        moment = [reader.rational(x, f"{path}.moment[{j}]")
                  for j, x in enumerate(reader.array(item["moment"], f"{path}.moment"))]
        vertices.append(GKMVertex(item["id"], tuple(moment)))
    if not vertices:
        raise GraphParseError("vertices must be non-empty", field="vertices")
    edges = []
    for i, item in enumerate(reader.array(raw["edges"], "edges")):
        path = f"edges[{i}]"
        item = reader.obj(item, path, EDGE_KEYS, EDGE_KEYS)
        for end in ("v", "w"):
            if not isinstance(item[end], str):
                raise GraphParseError("edge endpoints are vertex id strings", field=f"{path}.{end}")
        edges.append(GKMEdge(item["v"], item["w"], tuple(reader.integers(item["weight"], f"{path}.weight"))))
    logger.info("Parsed GKM graph: rank %d, %d vertices, %d edges", rank, len(vertices), len(edges))
    return GKMGraph(rank, valence, tuple(vertices), tuple(edges))


def parse_graph(source) -> GKMGraph:
    return loads_graph(read_source(source))


def graph_to_dict(g: GKMGraph) -> dict:
    return {
        "rank": g.rank,
        "valence": g.valence,
        "vertices": [{"id": v.id, "moment": [format_rational(x) for x in v.moment]} for v in g.vertices],
        "edges": [{"v": e.v, "w": e.w, "weight": list(e.weight)} for e in g.edges],
    }


def dumps_graph(g: GKMGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2)
