"""GKM graphs: fixed points of a torus action joined by invariant 2-spheres.

Edge weights are stored primitive and unoriented. The orientation at a vertex
is recovered from the moment images: the weight pointing away from v is the
one that is a positive multiple of mu(w) - mu(v).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

import networkx as nx

from .errors import BadDimension, InvalidGraph, NonGenericDirection, NonPositiveWeight, PreconditionError, ZeroWeight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GKMVertex:
    id: str
    moment: tuple

    def __post_init__(self):
        object.__setattr__(self, "moment", tuple(Fraction(x) for x in self.moment))


@dataclass(frozen=True)
class GKMEdge:
    v: str
    w: str
    weight: tuple

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(self.weight))


@dataclass(frozen=True)
class GKMGraph:
    rank: int
    valence: int
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @cached_property
    def moments(self) -> dict:
        return {vertex.id: vertex.moment for vertex in self.vertices}

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for vertex in self.vertices:
            graph.add_node(vertex.id, moment=vertex.moment)
        for index, edge in enumerate(self.edges):
            graph.add_edge(edge.v, edge.w, key=index, weight=edge.weight)
        return graph

    def edge_multiple(self, edge: GKMEdge):
        """t with mu(w) - mu(v) = t * weight, or None when they are not proportional."""
        delta = [b - a for a, b in zip(self.moments[edge.v], self.moments[edge.w])]
        pivot = next((i for i, x in enumerate(edge.weight) if x != 0), None)
        if pivot is None:
            return None
        t = delta[pivot] / edge.weight[pivot]
        if any(d != t * x for d, x in zip(delta, edge.weight)):
            return None
        return t

    def oriented_weight(self, edge: GKMEdge, at: str) -> tuple:
        t = self.edge_multiple(edge)
        sign = 1 if t > 0 else -1
        if at == edge.w:
            sign = -sign
        return tuple(sign * x for x in edge.weight)

    def validate(self) -> list:
        problems = []
        if self.rank < 1:
            problems.append(f"rank must be positive, got {self.rank}")
        if self.valence < 0:
            problems.append(f"valence must be non-negative, got {self.valence}")
        ids = [vertex.id for vertex in self.vertices]
        if len(set(ids)) != len(ids):
            problems.append("vertex ids are not unique")
        for vertex in self.vertices:
            if len(vertex.moment) != self.rank:
                problems.append(f"vertex {vertex.id}: moment has {len(vertex.moment)} entries, rank is {self.rank}")
        if problems:
            return problems
        for index, edge in enumerate(self.edges):
            where = f"edge {index} ({edge.v}-{edge.w})"
            if edge.v not in self.moments or edge.w not in self.moments:
                problems.append(f"{where}: unknown endpoint")
                continue
            if edge.v == edge.w:
                problems.append(f"{where}: loop")
                continue
            if len(edge.weight) != self.rank:
                problems.append(f"{where}: weight has {len(edge.weight)} entries, rank is {self.rank}")
                continue
            if not any(edge.weight):
                problems.append(f"{where}: zero weight")
                continue
            if gcd(*edge.weight) != 1:
                problems.append(f"{where}: weight {list(edge.weight)} is not primitive")
            t = self.edge_multiple(edge)
            if t is None or t == 0:
                problems.append(f"{where}: moment difference is not a nonzero multiple of the weight")
        if problems:
            return problems
        graph = self.to_networkx()
        for vertex_id, degree in graph.degree():
            if degree != self.valence:
                problems.append(f"vertex {vertex_id}: {degree} incident edges, valence is {self.valence}")
        return problems

    def check(self) -> "GKMGraph":
        problems = self.validate()
        if problems:
            raise InvalidGraph(problems)
        return self


@dataclass(frozen=True)
class FeasibilityCertificate:
    n: int
    required: int
    lower_bound: int
    feasible: bool
    edge_count: int
    per_edge_minimum: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "required": self.required,
            "lower_bound": self.lower_bound,
            "feasible": self.feasible,
            "edge_count": self.edge_count,
            "per_edge_minimum": self.per_edge_minimum,
        }


def euler(g: GKMGraph) -> int:
    return len(g.vertices)


def edge_count_identity(g: GKMGraph) -> bool:
    return 2 * len(g.edges) == g.valence * len(g.vertices)


def _pairing(weight, xi):
    return sum(a * b for a, b in zip(weight, xi))


def morse_betti(g: GKMGraph, xi) -> list:
    g.check()
    xi = tuple(xi)
    if len(xi) != g.rank:
        raise PreconditionError(f"direction has {len(xi)} entries, rank is {g.rank}")
    degenerate = [index for index, edge in enumerate(g.edges) if _pairing(edge.weight, xi) == 0]
    if degenerate:
        raise NonGenericDirection(degenerate)
    betti = [0] * (2 * g.valence + 1)
    down = {vertex.id: 0 for vertex in g.vertices}
    for edge in g.edges:
        for end in (edge.v, edge.w):
            if _pairing(g.oriented_weight(edge, end), xi) < 0:
                down[end] += 1
    for index in down.values():
        betti[2 * index] += 1
    return betti


def cp_graph(n: int) -> GKMGraph:
    """The standard torus action on CP^n: the complete graph on n+1 fixed points."""
    if n < 1:
        raise BadDimension(f"CP^n needs n >= 1, got {n}")

    def basis(i):
        return tuple(1 if j == i - 1 else 0 for j in range(n))

    vertices = [GKMVertex(str(i), basis(i)) for i in range(n + 1)]
    edges = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            edges.append(GKMEdge(str(i), str(j), tuple(a - b for a, b in zip(basis(i), basis(j)))))
    return GKMGraph(rank=n, valence=n, vertices=tuple(vertices), edges=tuple(edges))


def generic_direction(g: GKMGraph) -> tuple:
    # balanced base-N digits of a nonzero weight cannot sum to zero
    largest = max((abs(x) for edge in g.edges for x in edge.weight), default=0)
    base = 2 * largest + 1
    return tuple(base ** i for i in range(g.rank))


def circle_restriction(g: GKMGraph, xi) -> tuple:
    """Hamiltonian and sphere rotation weights for the circle generated by xi."""
    degenerate = [index for index, edge in enumerate(g.edges) if _pairing(edge.weight, xi) == 0]
    if degenerate:
        raise NonGenericDirection(degenerate)
    moment_h = {vertex.id: Fraction(_pairing(vertex.moment, xi)) for vertex in g.vertices}
    s1_weights = {index: abs(_pairing(edge.weight, xi)) for index, edge in enumerate(g.edges)}
    return moment_h, s1_weights


def skeleton_c1_sum(g: GKMGraph, moment_h, s1_weights) -> Fraction:
    total = Fraction(0)
    for index, edge in enumerate(g.edges):
        m = s1_weights[index]
        if m == 0:
            raise ZeroWeight(f"edge {index} ({edge.v}-{edge.w}) has rotation weight 0")
        if m < 0:
            raise NonPositiveWeight(f"edge {index} ({edge.v}-{edge.w}) has rotation weight {m}")
        try:
            drop = Fraction(moment_h[edge.v]) - Fraction(moment_h[edge.w])
        except KeyError as missing:
            raise PreconditionError(f"no moment value for vertex {missing}")
        total += abs(drop) / m
    return total


def two_quadrics_feasibility(n: int) -> FeasibilityCertificate:
    """Chern number bookkeeping for a hypothetical GKM action on X_n(2,2).

    The Betti numbers force c1 c_(n-1) = n(n+2)(n-1)/2, while the n(n+2) spheres
    of the toric 1-skeleton each carry at least n - 1 of c1.
    """
    if n % 2 or n < 4:
        raise BadDimension(f"the two quadrics argument needs even n >= 4, got {n}")
    required = n * (n + 2) * (n - 1) // 2
    edge_count = n * (n + 2)
    lower_bound = edge_count * (n - 1)
    feasible = lower_bound <= required
    logger.info("X_%d(2,2): c1 c_(n-1) = %d, skeleton bound %d", n, required, lower_bound)
    return FeasibilityCertificate(n, required, lower_bound, feasible, edge_count, n - 1)
