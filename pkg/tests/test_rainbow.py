import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import K3, P3
from rwsat.errors import PreconditionError
from rwsat.graph import SimpleGraph, complete_graph, cycle_graph
from rwsat.rainbow import (
    Added,
    ColoredGraph,
    embeddings_through,
    find_rainbow_copy_through,
    format_color_map,
    is_rainbow_copy,
    parse_color_map,
    require_pattern,
)


def brute_copies(g, h, e):
    """Every edge image of ``h`` in ``g`` through ``e``, by trying all injections."""
    core = h.remove_vertices(h.isolated_vertices())
    found = set()
    for image in itertools.permutations(range(g.n), core.n):
        mapped = {tuple(sorted((image[a], image[b]))) for a, b in core.edges()}
        if e in mapped and all(g.has_edge(*x) for x in mapped):
            found.add(frozenset(mapped))
    return found


def test_added_colors_order_and_print():
    assert Added(1) < Added(2)
    assert str(Added(3)) == "c3"


def test_colored_graph_validation():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        ColoredGraph(g, (1, 2))
    gc = ColoredGraph.rainbow(g, start=5)
    assert gc.colors == (5, 6, 7) and gc.is_rainbow and gc.is_concrete
    assert gc.color(2, 0) == 6


def test_require_pattern_rejects_edgeless():
    with pytest.raises(PreconditionError):
        require_pattern(SimpleGraph.empty(3))


def test_embeddings_through_examples():
    assert len(embeddings_through(complete_graph(4), K3, (0, 1))) == 2
    assert embeddings_through(cycle_graph(5), K3, (0, 1)) == []
    k4_minus = complete_graph(4).remove_edge(0, 1)
    assert len(embeddings_through(k4_minus.add_edge(0, 1), K3, (0, 1))) == 2


@st.composite
def host_and_edge(draw):
    n = draw(st.integers(2, 6))
    pairs = list(itertools.combinations(range(n), 2))
    e = draw(st.sampled_from(pairs))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, k in zip(pairs, keep) if k} | {e}
    return SimpleGraph.from_edges(n, edges), e


@settings(max_examples=150)
@given(host_and_edge(), st.sampled_from([K3, P3, cycle_graph(4), SimpleGraph.from_edges(4, [(0, 1), (2, 3)])]))
def test_embeddings_through_matches_brute_force(ge, h):
    g, e = ge
    got = {frozenset(emb.edges) for emb in embeddings_through(g, h, e)}
    assert got == brute_copies(g, h, e)


def test_embeddings_are_deduplicated_and_deterministic():
    g = complete_graph(5)
    first = embeddings_through(g, cycle_graph(4), (0, 1))
    assert first == embeddings_through(g, cycle_graph(4), (0, 1))
    assert len({frozenset(x.edges) for x in first}) == len(first)


def test_pattern_isolated_vertices_are_mapped():
    h = K3.disjoint_union(SimpleGraph.empty(1))
    assert embeddings_through(complete_graph(3), h, (0, 1)) == []
    emb = embeddings_through(complete_graph(3).disjoint_union(SimpleGraph.empty(1)), h, (0, 1))
    assert len(emb) == 1 and sorted(emb[0].mapping) == [0, 1, 2, 3]


def test_find_rainbow_copy_examples():
    k4 = ColoredGraph.rainbow(complete_graph(4))
    assert find_rainbow_copy_through(k4, K3, (0, 1)) is not None
    tri = ColoredGraph.from_mapping(complete_graph(3), {(0, 1): 1, (0, 2): 2, (1, 2): 2})
    assert find_rainbow_copy_through(tri, K3, (0, 1)) is None
    # triangles through 01 are 012 and 013; put a repeat in each
    table = {(0, 1): 1, (0, 2): 2, (1, 2): 2, (0, 3): 3, (1, 3): 3, (2, 3): 4}
    blocked = ColoredGraph.from_mapping(complete_graph(4), table)
    assert find_rainbow_copy_through(blocked, K3, (0, 1)) is None
    table[(1, 3)] = 5
    emb = find_rainbow_copy_through(ColoredGraph.from_mapping(complete_graph(4), table), K3, (0, 1))
    assert emb is not None and set(emb.edges) == {(0, 1), (0, 3), (1, 3)}


def test_find_rainbow_copy_needs_concrete_colors():
    gc = ColoredGraph.from_mapping(complete_graph(3), {(0, 1): 1, (0, 2): 2, (1, 2): Added(1)})
    with pytest.raises(PreconditionError):
        find_rainbow_copy_through(gc, K3, (0, 1))
    assert is_rainbow_copy(gc, [(0, 1), (0, 2), (1, 2)])


def test_color_map_round_trip():
    gc = ColoredGraph.from_mapping(complete_graph(3), {(0, 1): 7, (0, 2): 7, (1, 2): 2})
    text = format_color_map(gc)
    assert text.splitlines()[0] == "0 1: 7"
    assert ColoredGraph.from_mapping(gc.graph, parse_color_map(text)) == gc
