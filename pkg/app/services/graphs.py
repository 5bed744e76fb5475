"""
Graphs of degree-two squarefree ideals and certified chordality.

The ACM test for an unmixed height-two ideal reduces to: build the graph
whose edges are the generators of the dual of the polarization, take its
complement, and decide whether that complement is chordal. Chordality
answers carry a certificate either way: a verified perfect elimination
ordering, or an explicit chordless cycle of length at least four.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx

from app.core.config import settings
from app.core.limits import ensure_within
from app.models.schemas import (
    AcmVerdict,
    ChordalityCertificate,
    ExponentVector,
    Method,
    PairExponents,
)
from app.services.alexander import dual_generators_direct
from app.services.ideal_core import Universe, VarId
from app.services.polarization import SquarefreeIdeal

logger = logging.getLogger(__name__)

Edge = FrozenSet[VarId]


class NotAnEdgeIdealError(ValueError):
    """Raised when a generator does not have exactly two variables."""


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on polarized variables."""

    universe: Universe
    vertices: Tuple[VarId, ...]
    edges: FrozenSet[Edge]

    def __post_init__(self) -> None:
        known = set(self.vertices)
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError(f"edge {sorted(edge)} is a loop or malformed")
            if not edge <= known:
                raise ValueError(f"edge {sorted(edge)} has an endpoint outside the vertex list")

    @cached_property
    def adjacency(self) -> Dict[VarId, FrozenSet[VarId]]:
        neighbours: Dict[VarId, set] = {v: set() for v in self.vertices}
        for edge in self.edges:
            u, v = tuple(edge)
            neighbours[u].add(v)
            neighbours[v].add(u)
        return {v: frozenset(ns) for v, ns in neighbours.items()}

    def has_edge(self, u: VarId, v: VarId) -> bool:
        return v in self.adjacency[u]

    def edge_list(self) -> List[Tuple[VarId, VarId]]:
        return sorted(tuple(sorted(edge)) for edge in self.edges)  # type: ignore[misc]

    def name(self, vertex: VarId) -> str:
        return self.universe.render(vertex)

    def names(self, vertices: Sequence[VarId]) -> List[str]:
        return [self.name(v) for v in vertices]

    def vertex(self, name: str) -> VarId:
        for v in self.vertices:
            if self.name(v) == name:
                return v
        raise KeyError(name)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.vertices)))
        index = {v: k for k, v in enumerate(self.vertices)}
        graph.add_edges_from((index[u], index[v]) for u, v in self.edge_list())
        return graph

    def render(self) -> str:
        """Vertex line, then one `u -- v` line per edge, canonically ordered."""
        lines = ["vertices: " + " ".join(self.names(self.vertices))]
        lines.extend(f"{self.name(u)} -- {self.name(v)}" for u, v in self.edge_list())
        return "\n".join(lines)


def graph_from_ideal(ideal: SquarefreeIdeal, include_isolated: bool = True) -> Graph:
    """
    The graph whose edge ideal is `ideal`. With `include_isolated` every
    variable of the universe is a vertex, otherwise only those in some edge.
    """
    edges = set()
    for gen in ideal.generators:
        if len(gen.support) != 2:
            raise NotAnEdgeIdealError(
                f"generator of degree {gen.degree} cannot be an edge: {gen.exps}"
            )
        edges.add(gen.support)
    if include_isolated:
        vertices = ideal.universe.variables()
    else:
        vertices = tuple(sorted({v for edge in edges for v in edge}))
    return Graph(ideal.universe, tuple(vertices), frozenset(edges))


def complement(graph: Graph) -> Graph:
    co = nx.complement(graph.to_networkx())
    edges = frozenset(frozenset((graph.vertices[u], graph.vertices[v])) for u, v in co.edges())
    return Graph(graph.universe, graph.vertices, edges)


def maximum_cardinality_search(graph: Graph) -> List[VarId]:
    """Visit order of MCS; ties go to the lowest vertex in canonical order."""
    weight = {v: 0 for v in graph.vertices}
    unnumbered = set(graph.vertices)
    visit: List[VarId] = []
    while unnumbered:
        chosen = min(unnumbered, key=lambda v: (-weight[v], v))
        unnumbered.remove(chosen)
        visit.append(chosen)
        for neighbour in graph.adjacency[chosen]:
            if neighbour in unnumbered:
                weight[neighbour] += 1
    return visit


def elimination_violations(
    graph: Graph, order: Sequence[VarId]
) -> List[Tuple[VarId, VarId, VarId]]:
    """(v, u, w): u and w come after v, are adjacent to v, and not to each other."""
    position = {v: k for k, v in enumerate(order)}
    found = []
    for v in order:
        later = sorted(u for u in graph.adjacency[v] if position[u] > position[v])
        for u, w in combinations(later, 2):
            if not graph.has_edge(u, w):
                found.append((v, u, w))
    return found


def is_perfect_elimination_order(graph: Graph, order: Sequence[VarId]) -> bool:
    if sorted(order) != sorted(graph.vertices):
        return False
    return not elimination_violations(graph, order)


def is_induced_cycle(graph: Graph, cycle: Sequence[VarId]) -> bool:
    size = len(cycle)
    if size < 3 or len(set(cycle)) != size:
        return False
    for a, b in combinations(range(size), 2):
        consecutive = b - a == 1 or (a == 0 and b == size - 1)
        if graph.has_edge(cycle[a], cycle[b]) != consecutive:
            return False
    return True


def canonical_cycle(cycle: Sequence[VarId]) -> Tuple[VarId, ...]:
    """Rotate to start at the smallest vertex, then read towards its smaller neighbour."""
    start = cycle.index(min(cycle))
    rotated = list(cycle[start:]) + list(cycle[:start])
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def _shortest_path(graph: Graph, source: VarId, target: VarId, blocked: set) -> Optional[List[VarId]]:
    parent: Dict[VarId, Optional[VarId]] = {source: None}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        if current == target:
            path = [current]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])  # type: ignore[arg-type]
            return path[::-1]
        for nxt in sorted(graph.adjacency[current]):
            if nxt not in parent and nxt not in blocked:
                parent[nxt] = current
                queue.append(nxt)
    return None


def _cycle_through(graph: Graph, v: VarId, u: VarId, w: VarId) -> Optional[List[VarId]]:
    # A shortest u-w path avoiding v's other neighbours closes a chordless cycle through v.
    blocked = (set(graph.adjacency[v]) | {v}) - {u, w}
    path = _shortest_path(graph, u, w, blocked)
    return None if path is None else [v] + path


def is_chordal(graph: Graph) -> ChordalityCertificate:
    visit = maximum_cardinality_search(graph)
    order = visit[::-1]
    violations = elimination_violations(graph, order)
    if not violations:
        return ChordalityCertificate(chordal=True, elimination_order=graph.names(order))

    cycle: Optional[Sequence[VarId]] = None
    for v, u, w in violations:
        cycle = _cycle_through(graph, v, u, w)
        if cycle is not None and is_induced_cycle(graph, cycle):
            break
        cycle = None
    if cycle is None:
        logger.warning("Elimination-order repair failed; searching induced cycles directly.")
        cycle = induced_cycles(graph, 4, max_vertices=len(graph.vertices))[0]

    cycle = canonical_cycle(cycle)
    logger.debug(f"chordless cycle found: {graph.names(cycle)}")
    return ChordalityCertificate(chordal=False, chordless_cycle=graph.names(cycle))


def induced_cycles(
    graph: Graph, min_len: int = 4, max_vertices: Optional[int] = None
) -> List[Tuple[VarId, ...]]:
    """
    Every induced cycle of length >= min_len, once each up to rotation and
    reflection, in canonical form and sorted.
    """
    ensure_within("graph vertices", len(graph.vertices), max_vertices or settings.CYCLE_MAX_VERTICES)
    found = set()
    for cycle in nx.chordless_cycles(graph.to_networkx()):
        if len(cycle) >= max(min_len, 3):
            found.add(canonical_cycle([graph.vertices[k] for k in cycle]))
    return sorted(found, key=lambda c: (len(c), c))


def acm_via_chordality(pairs: Union[PairExponents, ExponentVector]) -> AcmVerdict:
    """ACM iff the complement of the graph of the dual of the polarization is chordal."""
    dual = dual_generators_direct(pairs)
    co_graph = complement(graph_from_ideal(dual))
    certificate = is_chordal(co_graph)
    return AcmVerdict(acm=certificate.chordal, method=Method.CHORDAL, graph_certificate=certificate)
