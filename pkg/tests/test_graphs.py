from itertools import combinations, product

import networkx as nx
import pytest

from app.models.schemas import ExponentVector, Method, PairExponents
from app.services.alexander import dual_generators_direct
from app.services.graphs import (
    Graph,
    NotAnEdgeIdealError,
    acm_via_chordality,
    canonical_cycle,
    complement,
    graph_from_ideal,
    induced_cycles,
    is_chordal,
    is_induced_cycle,
    is_perfect_elimination_order,
    maximum_cardinality_search,
)
from app.services.ideal_core import Monomial, Universe, VarId
from app.services.numeric_classifier import is_normalized
from app.services.polarization import SquarefreeIdeal


def _graph(n, edges):
    """Graph on vertices 0..n-1 named v0..v(n-1)."""
    universe = Universe(tuple(f"v{k}" for k in range(n)))
    vertices = tuple(VarId(k) for k in range(n))
    return Graph(universe, vertices, frozenset(frozenset((VarId(u), VarId(v))) for u, v in edges))


def _cycle(n):
    return _graph(n, [(k, (k + 1) % n) for k in range(n)])


def _complete(n):
    return _graph(n, combinations(range(n), 2))


def _complement_of(vector):
    return complement(graph_from_ideal(dual_generators_direct(vector)))


def test_graph_of_worked_dual(worked_vector):
    graph = graph_from_ideal(dual_generators_direct(worked_vector))
    assert len(graph.vertices) == 8
    assert len(graph.edges) == 10
    assert graph.names(graph.vertices) == ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"]


def test_graph_of_two_skew_lines():
    graph = graph_from_ideal(dual_generators_direct(ExponentVector.of(1, 0, 0, 0, 0, 1)))
    assert graph.render() == "vertices: a1 b1 c1 d1\na1 -- b1\nc1 -- d1"


def test_graph_rejects_cubic_generator():
    universe = Universe.standard(3).with_copies([1, 1, 1])
    ideal = SquarefreeIdeal.from_generators(
        universe, [Monomial.from_support([VarId(0), VarId(1), VarId(2)])]
    )
    with pytest.raises(NotAnEdgeIdealError):
        graph_from_ideal(ideal)


def test_graph_rejects_loops():
    with pytest.raises(ValueError):
        Graph(Universe(("x",)), (VarId(0),), frozenset({frozenset({VarId(0)})}))


def test_complement_of_complete_graph_is_empty():
    assert complement(_complete(4)).edges == frozenset()
    assert len(complement(_graph(5, [])).edges) == 10


def test_complement_of_two_skew_lines_is_four_cycle():
    co_graph = _complement_of(ExponentVector.of(1, 0, 0, 0, 0, 1))
    a1, b1, c1, d1 = (VarId(k) for k in range(4))
    assert is_induced_cycle(co_graph, [a1, c1, b1, d1])
    assert len(co_graph.edges) == 4


def test_complement_splits_every_pair_on_random_graphs():
    import random

    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(0, 8)
        graph = _graph(n, [pair for pair in combinations(range(n), 2) if rng.random() < 0.4])
        co_graph = complement(graph)
        assert co_graph.vertices == graph.vertices
        assert not graph.edges & co_graph.edges
        assert len(graph.edges) + len(co_graph.edges) == n * (n - 1) // 2
        assert complement(co_graph) == graph


def test_complete_graph_is_chordal():
    cert = is_chordal(_complete(4))
    assert cert.chordal
    assert cert.chordless_cycle is None
    assert sorted(cert.elimination_order) == ["v0", "v1", "v2", "v3"]


def test_four_cycle_is_not_chordal():
    cert = is_chordal(_cycle(4))
    assert not cert.chordal
    assert cert.chordless_cycle == ["v0", "v1", "v2", "v3"]


def test_empty_graph_is_chordal():
    cert = is_chordal(_graph(0, []))
    assert cert.chordal
    assert cert.elimination_order == []


def test_mcs_reverse_is_elimination_order_for_chordal_graph():
    # Two triangles sharing the edge 1-2, plus a pendant vertex.
    graph = _graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)])
    order = maximum_cardinality_search(graph)[::-1]
    assert is_perfect_elimination_order(graph, order)


def test_canonical_cycle_rotation_and_direction():
    v = [VarId(k) for k in range(5)]
    assert canonical_cycle([v[3], v[4], v[0], v[2], v[1]]) == (v[0], v[2], v[1], v[3], v[4])
    assert canonical_cycle([v[2], v[0], v[1]]) == (v[0], v[1], v[2])


def test_induced_cycles_of_five_cycle():
    cycles = induced_cycles(_cycle(5), 4)
    assert cycles == [tuple(VarId(k) for k in range(5))]


def test_induced_cycles_of_complete_graph():
    assert induced_cycles(_complete(4), 4) == []


def test_induced_cycles_of_skew_lines_complement():
    cycles = induced_cycles(_complement_of(ExponentVector.of(1, 0, 0, 0, 0, 1)), 4)
    assert cycles == [(VarId(0), VarId(2), VarId(1), VarId(3))]


def test_chordless_cycle_certificate_is_induced():
    # A 6-cycle with one long chord leaves two induced 4-cycles.
    graph = _graph(6, [(k, (k + 1) % 6) for k in range(6)] + [(0, 3)])
    cert = is_chordal(graph)
    assert not cert.chordal
    cycle = [graph.vertex(name) for name in cert.chordless_cycle]
    assert len(cycle) == 4
    assert is_induced_cycle(graph, cycle)


def test_chordality_matches_networkx_on_random_graphs():
    import random

    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 9)
        edges = [pair for pair in combinations(range(n), 2) if rng.random() < 0.5]
        graph = _graph(n, edges)
        cert = is_chordal(graph)
        assert cert.chordal == nx.is_chordal(graph.to_networkx())
        if cert.chordal:
            order = [graph.vertex(name) for name in cert.elimination_order]
            assert is_perfect_elimination_order(graph, order)
        else:
            cycle = [graph.vertex(name) for name in cert.chordless_cycle]
            assert len(cycle) >= 4 and is_induced_cycle(graph, cycle)


def test_acm_via_chordality_worked_example(worked_vector):
    verdict = acm_via_chordality(worked_vector)
    assert verdict.acm
    assert verdict.method is Method.CHORDAL
    assert verdict.graph_certificate.chordal


def test_acm_via_chordality_two_skew_lines():
    verdict = acm_via_chordality(ExponentVector.of(1, 0, 0, 0, 0, 1))
    assert not verdict.acm
    assert verdict.graph_certificate.chordless_cycle == ["a1", "c1", "b1", "d1"]


def test_acm_via_chordality_three_variables():
    pairs = PairExponents(n=3, p=[[0, 2, 3], [2, 0, 1], [3, 1, 0]])
    assert acm_via_chordality(pairs).acm


def test_every_three_variable_ideal_is_acm():
    for p12, p13, p23 in product(range(7), repeat=3):
        pairs = PairExponents(n=3, p=[[0, p12, p13], [p12, 0, p23], [p13, p23, 0]])
        assert acm_via_chordality(pairs).acm, (p12, p13, p23)


def test_single_pair_power_is_acm():
    assert acm_via_chordality(PairExponents(n=2, p=[[0, 5], [5, 0]])).acm


def _cycles_are_tetrahedral(vector):
    for cycle in induced_cycles(_complement_of(vector), 4):
        if len(cycle) != 4 or sorted(v.base for v in cycle) != [0, 1, 2, 3]:
            return False
    return True


def test_induced_cycles_visit_each_letter_once_up_to_two():
    for p in product(range(3), repeat=6):
        assert _cycles_are_tetrahedral(ExponentVector.of(*p)), p


@pytest.mark.slow
def test_induced_cycles_visit_each_letter_once_up_to_three():
    for p in product(range(4), repeat=6):
        assert _cycles_are_tetrahedral(ExponentVector.of(*p)), p


def _alternates_opposite_edges(cycle):
    # a_i - c_l - b_j - d_m up to rotation and reflection: opposite corners are {a, b} and {c, d}.
    if len(cycle) != 4:
        return False
    across = {frozenset((cycle[0].base, cycle[2].base)), frozenset((cycle[1].base, cycle[3].base))}
    return across == {frozenset((0, 1)), frozenset((2, 3))}


def _check_nonchordal_iff_tetrahedral_cycle(bound):
    for p in product(range(bound + 1), repeat=6):
        vector = ExponentVector.of(*p)
        if not is_normalized(vector):
            continue
        co_graph = _complement_of(vector)
        has_cycle = any(_alternates_opposite_edges(c) for c in induced_cycles(co_graph, 4))
        assert is_chordal(co_graph).chordal != has_cycle, p


def test_nonchordal_iff_alternating_four_cycle_up_to_two():
    _check_nonchordal_iff_tetrahedral_cycle(2)


@pytest.mark.slow
def test_nonchordal_iff_alternating_four_cycle_up_to_three():
    _check_nonchordal_iff_tetrahedral_cycle(3)
