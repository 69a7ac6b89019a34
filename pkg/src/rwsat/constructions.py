"""Explicit weakly rainbow-saturated graphs, each with an exact edge count.

Every constructor returns a rainbow :class:`ColoredGraph` whose colours are
``1..|E|`` in lexicographic edge order, so outputs are reproducible and can
be written straight to a colour-map sidecar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ColorCollisionError, NoIndependentSetError, PreconditionError
from .extremal import (
    bridged_cliques_edge_count,
    delta_prime,
    f_of_h,
    family_F_edge_count,
    has_pendant_edge,
    in_family_F,
)
from .graph import SimpleGraph, iter_bits
from .rainbow import ColoredGraph, require_pattern


def _rainbow(n: int, edges) -> ColoredGraph:
    return ColoredGraph.rainbow(SimpleGraph.from_edges(n, edges))


def _clique_edges(vertices):
    vs = list(vertices)
    return [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]]


def clique_plus_isolated(n: int, h: SimpleGraph) -> ColoredGraph:
    """Rainbow ``K_{f(H)+1}`` on vertices ``0..f(H)`` plus isolated vertices."""
    require_pattern(h)
    if not has_pendant_edge(h):
        raise PreconditionError("pattern has no pendant edge")
    f = f_of_h(h)
    if n <= f + 1:
        raise PreconditionError(f"need n > f(H)+1 = {f + 1}, got n={n}")
    return _rainbow(n, _clique_edges(range(f + 1)))


def three_block(n: int, h: SimpleGraph) -> ColoredGraph:
    """Blocks ``A = 0..δ'-1``, ``B`` (``f(H)`` vertices) and ``C`` (the rest):
    a clique on ``A ∪ B`` and every ``A``-``C`` edge."""
    require_pattern(h)
    if has_pendant_edge(h):
        raise PreconditionError("pattern has a pendant edge")
    f, d = f_of_h(h), delta_prime(h)
    if n <= f + d:
        raise PreconditionError(f"need n > f(H)+delta'(H) = {f + d}, got n={n}")
    a = range(d)
    edges = _clique_edges(range(d + f)) + [(x, y) for x in a for y in range(d + f, n)]
    return _rainbow(n, edges)


def complete_graph_construction(n: int, r: int) -> ColoredGraph:
    """The three-block shape for ``K_r`` with ``|A| = r-1`` and ``|B| = 1``."""
    if r < 3:
        raise PreconditionError(f"need r >= 3, got r={r}")
    if n <= r:
        raise PreconditionError(f"need n > r = {r}, got n={n}")
    edges = _clique_edges(range(r)) + [(x, y) for x in range(r - 1) for y in range(r, n)]
    return _rainbow(n, edges)


def family_F_construction(n: int, h: SimpleGraph) -> ColoredGraph:
    """Clique on ``v_1..v_t`` (vertices ``0..t-1``) with pendant triangles
    ``v_1 x_i y_i``; ``x_i = t + 2i``, ``y_i = t + 2i + 1``."""
    require_pattern(h)
    if in_family_F(h) is None:
        raise PreconditionError("pattern is not in the family F")
    if delta_prime(h) != 2:
        raise PreconditionError("pattern must have delta'(H) = 2")
    if n < h.n + 3:
        raise PreconditionError(f"need n >= |V(H)|+3 = {h.n + 3}, got n={n}")
    k, t, _ = family_F_edge_count(n, h.n)
    edges = _clique_edges(range(t))
    for i in range(k):
        x, y = t + 2 * i, t + 2 * i + 1
        edges += [(0, x), (0, y), (x, y)]
    return _rainbow(n, edges)


def c4_construction(n: int) -> ColoredGraph:
    """Odd ``n``: a hub joined to everything plus a perfect matching on the
    rest. Even ``n``: hub ``u=0`` over a triangle ``x, y, z = 1, 2, 3`` and the
    same hub-plus-matching on the remaining vertices."""
    if n % 2:
        if n < 5:
            raise PreconditionError(f"odd case needs n >= 5, got n={n}")
        edges = [(0, i) for i in range(1, n)] + [(i, i + 1) for i in range(1, n, 2)]
    else:
        if n < 8:
            raise PreconditionError(f"even case needs n >= 8, got n={n}")
        edges = _clique_edges(range(4)) + [(0, i) for i in range(4, n)] + [(i, i + 1) for i in range(4, n, 2)]
    return _rainbow(n, edges)


def bridged_cliques_construction(n: int, t: int) -> ColoredGraph:
    """Disjoint rainbow cliques: ``r = n mod (t+1)`` copies of ``K_{t+2}`` and
    the rest ``K_{t+1}``; the witness used against two ``K_t`` joined by an edge."""
    if t < 3:
        raise PreconditionError(f"need t >= 3, got t={t}")
    if bridged_cliques_edge_count(n, t) is None:
        raise PreconditionError(f"n={n} too small to split into cliques of order {t + 1} and {t + 2}")
    q, r = divmod(n, t + 1)
    edges = []
    start = 0
    for size in [t + 2] * r + [t + 1] * (q - r):
        edges += _clique_edges(range(start, start + size))
        start += size
    return _rainbow(n, edges)


# -- the subadditive join ---------------------------------------------------------


@dataclass(frozen=True)
class JoinBlueprint:
    """Blocks are given in the joined graph's labels (``G_2`` shifted by ``m_1``)."""

    t: int
    a_size: int
    b_threshold: int
    x: tuple[tuple[int, ...], tuple[int, ...]]
    a: tuple[tuple[int, ...], tuple[int, ...]]
    b: tuple[tuple[int, ...], tuple[int, ...]]
    c: tuple[tuple[int, ...], tuple[int, ...]]
    joined: ColoredGraph
    join_edges: int

    def edge_count_bound(self, rwsat1: int, rwsat2: int) -> int:
        """``rwsat(m_1, H) + rwsat(m_2, H) + t^14``."""
        return rwsat1 + rwsat2 + self.t ** 14


def first_independent_set(g: SimpleGraph, size: int, avoid=()) -> list[int] | None:
    """Lexicographically first independent set of ``size`` vertices outside ``avoid``."""
    allowed = ((1 << g.n) - 1) & ~sum(1 << v for v in avoid)
    chosen: list[int] = []

    def pick(cand: int) -> bool:
        if len(chosen) == size:
            return True
        if cand.bit_count() < size - len(chosen):
            return False
        for v in iter_bits(cand):
            chosen.append(v)
            if pick(cand & ~g.adj[v] & ~((1 << (v + 1)) - 1)):
                return True
            chosen.pop()
        return False

    return chosen if pick(allowed) else None


def _blocks(gc: ColoredGraph, a_size: int, b_threshold: int, which: int):
    g = gc.graph
    m = g.n
    x = [v for v in range(m) if 4 * g.degree(v) >= m]
    a = first_independent_set(g, a_size, avoid=x)
    if a is None:
        raise NoIndependentSetError(
            f"G_{which} has no independent set of size {a_size} avoiding its {len(x)} high-degree vertices")
    a_mask = sum(1 << v for v in a)
    rest = [v for v in range(m) if v not in set(x) | set(a)]
    b = [v for v in rest if (g.adj[v] & a_mask).bit_count() >= b_threshold]
    c = [v for v in rest if v not in set(b)]
    return x, a, b, c


def subadditive_join(g1: ColoredGraph, g2: ColoredGraph, t: int,
                     a_size: int | None = None, b_threshold: int | None = None) -> JoinBlueprint:
    """Disjoint union of ``g1`` and ``g2`` plus every edge between ``X_1 ∪ A_1``
    and ``X_2 ∪ A_2``, the new edges in fresh rainbow colours.

    ``X_i`` holds the vertices of degree at least ``m_i/4``, ``A_i`` is an
    independent set of ``a_size`` vertices outside ``X_i`` (default ``t^6``),
    ``B_i`` the remaining vertices with at least ``b_threshold`` (default
    ``t^5``) neighbours in ``A_i``, and ``C_i`` everything else. The defaults
    need ``m_i`` far beyond desk scale; smaller overrides carry no guarantee.
    """
    a_size = t ** 6 if a_size is None else a_size
    b_threshold = t ** 5 if b_threshold is None else b_threshold
    for i, gc in ((1, g1), (2, g2)):
        if not gc.is_concrete or not gc.is_rainbow:
            raise PreconditionError(f"G_{i} must be rainbow")
    shared = set(g1.colors) & set(g2.colors)
    if shared:
        raise ColorCollisionError(f"inputs share colours {sorted(shared)[:5]}")
    m1 = g1.graph.n
    blocks1 = _blocks(g1, a_size, b_threshold, 1)
    blocks2 = [[v + m1 for v in block] for block in _blocks(g2, a_size, b_threshold, 2)]
    union = g1.disjoint_union(g2)
    table = dict(union.color_map)
    fresh = max(union.colors, default=0) + 1
    left = sorted(blocks1[0] + blocks1[1])
    right = sorted(blocks2[0] + blocks2[1])
    for u in left:
        for v in right:
            table[(u, v)] = fresh
            fresh += 1
    joined = ColoredGraph.from_mapping(union.graph.add_edges((u, v) for u in left for v in right), table)
    x, a, b, c = ((tuple(p), tuple(q)) for p, q in zip(blocks1, blocks2))
    return JoinBlueprint(t, a_size, b_threshold, x, a, b, c, joined, len(left) * len(right))


# -- closed forms ------------------------------------------------------------------


def expected_edges(kind: str, n: int, h: SimpleGraph | None = None, r: int | None = None) -> int:
    """Closed-form edge count of each construction."""
    if kind == "clique-isolated":
        return math.comb(f_of_h(h) + 1, 2)
    if kind == "three-block":
        f, d = f_of_h(h), delta_prime(h)
        return d * (n - f - d) + math.comb(f + d, 2)
    if kind == "kr":
        return (r - 1) * (n - r) + math.comb(r, 2)
    if kind == "family-f":
        return family_F_edge_count(n, h.n)[2]
    if kind == "c4":
        return (n - 1) + (n - 1) // 2 if n % 2 else 6 + (n - 4) + (n - 4) // 2
    if kind == "bridged":
        return bridged_cliques_edge_count(n, r)
    raise ValueError(f"unknown construction {kind!r}")
