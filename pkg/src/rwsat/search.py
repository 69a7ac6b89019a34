"""Exact rwsat(n, H) by exhaustive search over isomorphism classes."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import BudgetExceededError
from .extremal import paper_bounds
from .graph import MAX_VERTICES, Edge, SimpleGraph, encode_graph6, enumerate_graphs
from .rainbow import ColoredGraph, require_pattern
from .verifier import ColoredState, addable, greedy_closure

#: Largest number of non-edges the permutation oracle will explore.
ORDERING_LIMIT = 8


@dataclass
class SearchResult:
    n: int
    pattern: str
    value: int | None
    lower: int
    upper: int
    witnesses: list[str] = field(default_factory=list)
    #: candidate graphs checked at each edge count
    checked: dict[int, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "witnesses": self.witnesses,
            "checked": {str(k): v for k, v in self.checked.items()},
            "timing": {"elapsed": round(self.elapsed, 3)},
        }


def _accepts(args) -> bool:
    g, h = args
    return greedy_closure(ColoredGraph.rainbow(g), h).saturated


def exact_rwsat(n: int, h: SimpleGraph, budget: int | None = None, jobs: int = 1,
                bound: int = MAX_VERTICES) -> SearchResult:
    """Smallest ``k`` such that some ``n``-vertex ``k``-edge graph, coloured
    rainbow, is weakly ``h``-rainbow saturated.

    Recolouring a weakly saturated graph rainbow keeps it saturated, and
    renaming colours of a rainbow graph changes nothing, so one canonical
    rainbow colouring per isomorphism class is enough. ``K_n`` has no
    non-edges, so the search always terminates by ``k = C(n, 2)``.

    ``budget`` caps the number of candidate graphs checked; when it runs out
    the result carries a bracket and ``value`` is None.
    """
    require_pattern(h)
    started = time.perf_counter()
    result = SearchResult(n, encode_graph6(h), None, 0, paper_bounds(n, h).upper)
    spent = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for k in range(math.comb(n, 2) + 1):
            candidates = list(enumerate_graphs(n, k, bound))
            if budget is not None and spent + len(candidates) > budget:
                result.lower = k
                break
            spent += len(candidates)
            work = [(g, h) for g in candidates]
            verdicts = list(pool.map(_accepts, work, chunksize=8)) if pool else [_accepts(w) for w in work]
            result.checked[k] = len(candidates)
            accepted = [g for g, ok in zip(candidates, verdicts) if ok]
            if accepted:
                result.value = result.lower = result.upper = k
                result.witnesses = [encode_graph6(g) for g in accepted]
                break
    finally:
        if pool:
            pool.shutdown()
    result.elapsed = time.perf_counter() - started
    return result


def find_valid_ordering(gc: ColoredGraph, h: SimpleGraph, limit: int = ORDERING_LIMIT) -> tuple[Edge, ...] | None:
    """Some ordering of the non-edges that passes every step, by depth-first
    search over permutations. Sets of added edges already known to be dead
    ends are memoised; the state depends only on that set, since added
    colours are interchangeable."""
    require_pattern(h)
    non_edges = gc.graph.non_edges()
    if len(non_edges) > limit:
        raise BudgetExceededError(f"{len(non_edges)} non-edges exceed the permutation limit {limit}")
    dead: set[frozenset] = set()
    order: list[Edge] = []

    def dfs(state: ColoredState, remaining: tuple[Edge, ...]) -> bool:
        if not remaining:
            return True
        key = frozenset(order)
        if key in dead:
            return False
        for e in remaining:
            if addable(state, h, e).verdict:
                order.append(e)
                if dfs(state.extend(e), tuple(x for x in remaining if x != e)):
                    return True
                order.pop()
        dead.add(key)
        return False

    return tuple(order) if dfs(ColoredState(gc), tuple(non_edges)) else None


def exhaustive_ordering_check(gc: ColoredGraph, h: SimpleGraph, limit: int = ORDERING_LIMIT) -> bool:
    return find_valid_ordering(gc, h, limit) is not None


def rwsat_sequence(h: SimpleGraph, ns, **kwargs) -> dict[int, int]:
    """Exact values for several ``n``; raises if any search is cut short."""
    out = {}
    for n in ns:
        res = exact_rwsat(n, h, **kwargs)
        if not res.exact:
            raise BudgetExceededError(f"rwsat({n}, H) not settled within budget", partial=res)
        out[n] = res.value
    return out
