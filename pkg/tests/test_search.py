import itertools
import json
import math

import pytest

from conftest import C4, K3, P3
from rwsat.errors import BudgetExceededError, PreconditionError
from rwsat.extremal import f_of_h, paper_bounds
from rwsat.graph import SimpleGraph, all_labeled_graphs, complete_graph, decode_graph6
from rwsat.rainbow import ColoredGraph
from rwsat.search import exact_rwsat, exhaustive_ordering_check, find_valid_ordering, rwsat_sequence
from rwsat.verifier import ColoredState, greedy_closure, naive_addable_oracle, verify_certificate


def naive_saturated(g, h):
    """Try every ordering of the non-edges, checking each step with the
    brute-force assignment oracle."""
    gc = ColoredGraph.rainbow(g)
    for order in itertools.permutations(g.non_edges()):
        state = ColoredState(gc)
        for e in order:
            if not naive_addable_oracle(state, h, e):
                break
            state = state.extend(e)
        else:
            return True
    return False


def brute_rwsat(n, h):
    best = math.comb(n, 2)
    for g in all_labeled_graphs(n):
        if g.num_edges < best and naive_saturated(g, h):
            best = g.num_edges
    return best


@pytest.mark.parametrize("h", [K3, P3, C4], ids=["K3", "P3", "C4"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_exact_matches_brute_force(n, h):
    assert exact_rwsat(n, h).value == brute_rwsat(n, h)


def test_known_small_values():
    assert rwsat_sequence(K3, range(1, 7)) == {1: 0, 2: 1, 3: 3, 4: 4, 5: 6, 6: 8}
    assert rwsat_sequence(P3, range(2, 7)) == {2: 1, 3: 2, 4: 2, 5: 2, 6: 2}
    assert rwsat_sequence(C4, range(4, 7)) == {4: 6, 5: 6, 6: 8}


def test_k3_on_three_vertices_needs_the_triangle():
    res = exact_rwsat(3, K3)
    assert res.value == 3 and res.witnesses == ["Bw"]


def test_witnesses_are_saturated_and_minimal():
    res = exact_rwsat(5, C4)
    for text in res.witnesses:
        g = decode_graph6(text)
        assert g.num_edges == res.value
        assert greedy_closure(ColoredGraph.rainbow(g), C4).saturated


@pytest.mark.parametrize("n", [4, 5, 6])
def test_exact_within_bounds(n):
    for h in (K3, P3, C4):
        b = paper_bounds(n, h)
        assert b.lower <= exact_rwsat(n, h).value <= b.upper


def test_pendant_pattern_below_clique_bound():
    f = f_of_h(P3)
    for n in range(f + 2, 7):
        assert exact_rwsat(n, P3).value <= math.comb(f + 1, 2)


def test_budget_gives_bracket():
    res = exact_rwsat(6, K3, budget=10)
    assert not res.exact and res.value is None
    assert res.lower <= 8 <= res.upper
    with pytest.raises(BudgetExceededError):
        rwsat_sequence(K3, [6], budget=10)


def test_parallel_agrees_with_serial():
    serial = exact_rwsat(5, C4)
    parallel = exact_rwsat(5, C4, jobs=2)
    assert (serial.value, serial.witnesses) == (parallel.value, parallel.witnesses)


def test_result_json():
    data = exact_rwsat(4, K3).to_json()
    assert json.loads(json.dumps(data))["value"] == 4
    assert set(data["timing"]) == {"elapsed"}


def test_search_rejects_edgeless_pattern():
    with pytest.raises(PreconditionError):
        exact_rwsat(4, SimpleGraph.empty(2))


def test_ordering_check_examples():
    assert exhaustive_ordering_check(ColoredGraph.rainbow(complete_graph(5)), K3)
    gc = ColoredGraph.rainbow(SimpleGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]))
    assert find_valid_ordering(gc, K3) is None
    gc = ColoredGraph.rainbow(complete_graph(4).remove_edge(2, 3))
    order = find_valid_ordering(gc, K3)
    assert order is not None and verify_certificate(gc, K3, order).accepted
    with pytest.raises(BudgetExceededError):
        find_valid_ordering(ColoredGraph.rainbow(SimpleGraph.empty(6)), K3)
