"""Small simple graphs on bitset adjacency.

Vertices are ``0..n-1`` and row ``adj[v]`` is an int whose bit ``u`` is set
iff ``uv`` is an edge. Everything here is immutable, so graphs can be used as
dict keys and shared freely between workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import Graph6Error, SizeExceededError

#: Default upper limit on vertex count for canonical forms and enumeration.
MAX_VERTICES = 12

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in iter_bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {u},{v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, (0,) * n)

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "SimpleGraph":
        # skips validation; only for rows derived from an already valid graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    # -- queries -----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.adj[u] >> v & 1]

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    # -- derived graphs ----------------------------------------------------

    def add_edge(self, u: int, v: int) -> "SimpleGraph":
        if u == v:
            raise ValueError(f"self-loop at {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge {u}-{v} outside 0..{self.n - 1}")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return SimpleGraph._trusted(self.n, tuple(rows))

    def add_edges(self, edges: Iterable[Edge]) -> "SimpleGraph":
        rows = list(self.adj)
        for u, v in edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return SimpleGraph(self.n, tuple(rows))

    def remove_edge(self, u: int, v: int) -> "SimpleGraph":
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return SimpleGraph._trusted(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "SimpleGraph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            r = 0
            for u in iter_bits(row):
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return SimpleGraph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        """Induced subgraph, with ``vertices[i]`` becoming vertex ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        return SimpleGraph.from_edges(
            len(vertices),
            [(index[u], index[v]) for u, v in self.edges() if u in index and v in index],
        )

    def remove_vertices(self, removed: Iterable[int]) -> "SimpleGraph":
        gone = set(removed)
        return self.induced([v for v in range(self.n) if v not in gone])

    def disjoint_union(self, other: "SimpleGraph") -> "SimpleGraph":
        shift = self.n
        return SimpleGraph(self.n + other.n, self.adj + tuple(row << shift for row in other.adj))

    def __str__(self):
        return f"SimpleGraph(n={self.n}, edges={self.edges()})"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complement(g: SimpleGraph) -> SimpleGraph:
    full = (1 << g.n) - 1
    return SimpleGraph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


# -- named graphs ------------------------------------------------------------


def complete_graph(n: int) -> SimpleGraph:
    return complement(SimpleGraph.empty(n))


def cycle_graph(n: int) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    """Path on ``n`` vertices (so ``n - 1`` edges)."""
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return SimpleGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def bridged_cliques(t: int) -> SimpleGraph:
    """Two disjoint copies of ``K_t`` joined by a single edge."""
    g = complete_graph(t).disjoint_union(complete_graph(t))
    return g.add_edge(0, t)


# -- canonical forms ----------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    graph: SimpleGraph
    #: ``perm[v]`` is the canonical label of input vertex ``v``.
    perm: tuple[int, ...]


def _refine(g: SimpleGraph, cells: list[list[int]]) -> list[list[int]]:
    # Equitable refinement: split cells by neighbour counts into every cell.
    # Cell order depends only on structure, which keeps the search equivariant.
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        refined = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple((g.adj[v] & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            for key in sorted(groups):
                refined.append(groups[key])
        if len(refined) == len(cells):
            return refined
        cells = refined


def _relabelled_rows(g: SimpleGraph, order: Sequence[int]) -> tuple[int, ...]:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = []
    for v in order:
        r = 0
        for u in iter_bits(g.adj[v]):
            r |= 1 << pos[u]
        rows.append(r)
    return tuple(rows)


def canonical_form(g: SimpleGraph, bound: int = MAX_VERTICES) -> CanonicalForm:
    """Canonical relabelling by individualisation and refinement.

    The canonical graph maximises the tuple of relabelled adjacency rows over
    all leaves of the search tree. Branching on a vertex whose twin (same
    neighbourhood up to each other) was already tried is skipped; swapping
    twins is an automorphism that fixes the current partition.
    """
    if g.n > bound:
        raise SizeExceededError(g.n, bound)
    if g.n == 0:
        return CanonicalForm(g, ())
    degrees = g.degrees()
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(degrees[v], []).append(v)
    start = [by_degree[d] for d in sorted(by_degree)]

    best_rows = None
    best_order = None

    def search(cells):
        nonlocal best_rows, best_order
        cells = _refine(g, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            rows = _relabelled_rows(g, order)
            if best_rows is None or rows > best_rows:
                best_rows, best_order = rows, order
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if any((g.adj[v] & ~(1 << w)) == (g.adj[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            rest = [w for w in cell if w != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search(start)
    perm = [0] * g.n
    for i, v in enumerate(best_order):
        perm[v] = i
    return CanonicalForm(SimpleGraph._trusted(g.n, best_rows), tuple(perm))


def canonical_graph(g: SimpleGraph) -> SimpleGraph:
    return canonical_form(g).graph


def is_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_graph(g) == canonical_graph(h)


# -- enumeration ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _level(n: int, k: int) -> tuple[SimpleGraph, ...]:
    if k == 0:
        return (SimpleGraph.empty(n),)
    total = n * (n - 1) // 2
    if 2 * k > total:
        return tuple(sorted((canonical_graph(complement(g)) for g in _level(n, total - k)), key=_sort_key))
    seen = set()
    for g in _level(n, k - 1):
        for u, v in g.non_edges():
            seen.add(canonical_graph(g.add_edge(u, v)))
    return tuple(sorted(seen, key=_sort_key))


def _sort_key(g: SimpleGraph):
    return tuple(-r for r in g.adj)


def enumerate_graphs(n: int, k: int, bound: int = MAX_VERTICES) -> Iterator[SimpleGraph]:
    """One canonical representative per isomorphism class of ``n``-vertex,
    ``k``-edge graphs, in a fixed order.

    Every ``k``-edge graph arises from a ``(k-1)``-edge graph by adding one
    edge, so levels are built by augmentation and deduplicated by canonical
    form. Levels above half density are complements of sparse levels.
    """
    if n > bound:
        raise SizeExceededError(n, bound)
    if k < 0 or k > n * (n - 1) // 2:
        return iter(())
    return iter(_level(n, k))


def enumerate_all_graphs(n: int, bound: int = MAX_VERTICES) -> Iterator[SimpleGraph]:
    for k in range(n * (n - 1) // 2 + 1):
        yield from enumerate_graphs(n, k, bound)


# -- subgraph containment -------------------------------------------------------


@lru_cache(maxsize=4096)
def _search_order(f: SimpleGraph, anchors: tuple[int, ...] = ()) -> tuple[int, ...]:
    """Non-isolated vertices of ``f``, each next one with most placed neighbours."""
    order = list(anchors)
    placed = 0
    for v in order:
        placed |= 1 << v
    todo = [v for v in range(f.n) if f.adj[v] and not placed >> v & 1]
    while todo:
        best = max(todo, key=lambda v: ((f.adj[v] & placed).bit_count(), f.degree(v), -v))
        order.append(best)
        placed |= 1 << best
        todo.remove(best)
    return tuple(order)


def iter_vertex_maps(g: SimpleGraph, f: SimpleGraph, fixed: dict[int, int] | None = None,
                     gdeg: Sequence[int] | None = None) -> Iterator[dict[int, int]]:
    """Injective maps of the non-isolated vertices of ``f`` into ``g`` that send
    edges to edges, extending ``fixed``. Isolated vertices of ``f`` are left out.
    ``gdeg`` may pass in ``g.degrees()`` when calling repeatedly."""
    fixed = dict(fixed or {})
    order = _search_order(f, tuple(fixed))
    if gdeg is None:
        gdeg = g.degrees()
    image = dict(fixed)
    used = 0
    for v in fixed.values():
        used |= 1 << v
    for a in fixed:
        for b in fixed:
            if f.has_edge(a, b) and not g.has_edge(fixed[a], fixed[b]):
                return
    start = len(fixed)
    full = (1 << g.n) - 1

    def extend(i):
        nonlocal used
        if i == len(order):
            yield dict(image)
            return
        x = order[i]
        cand = full & ~used
        for y in iter_bits(f.adj[x]):
            if y in image:
                cand &= g.adj[image[y]]
        need = f.degree(x)
        for w in iter_bits(cand):
            if gdeg[w] < need:
                continue
            image[x] = w
            used |= 1 << w
            yield from extend(i + 1)
            used &= ~(1 << w)
            del image[x]

    yield from extend(start)


def contains_subgraph(g: SimpleGraph, f: SimpleGraph) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph isomorphic to ``f``."""
    if f.n > g.n or f.num_edges > g.num_edges:
        return False
    for _ in iter_vertex_maps(g, f):
        return True
    return False


def contains_subgraph_through(g: SimpleGraph, f: SimpleGraph, e: Edge) -> bool:
    """True iff some copy of ``f`` in ``g`` uses the edge ``e``."""
    u, v = e
    if not g.has_edge(u, v) or f.n > g.n:
        return False
    gdeg = g.degrees()
    for a, b in f.edges():
        for x, y in ((u, v), (v, u)):
            for _ in iter_vertex_maps(g, f, {a: x, b: y}, gdeg):
                return True
    return False


# -- graph6 ---------------------------------------------------------------------


def _size_prefix(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    return bytes([126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g: SimpleGraph) -> str:
    bits = [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)
    )
    return (_size_prefix(g.n) + body).decode("ascii")


def decode_graph6(text: str | bytes) -> SimpleGraph:
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\n")
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10
    for i in range(pos, len(data)):
        if not 63 <= data[i] <= 126:
            raise Graph6Error(f"byte {data[i]!r} outside the printable range 63..126", i)
    if pos >= len(data):
        raise Graph6Error("missing vertex count", pos)
    if data[pos] != 126:
        n = data[pos] - 63
        pos += 1
    elif pos + 1 < len(data) and data[pos + 1] == 126:
        if len(data) < pos + 8:
            raise Graph6Error("truncated 8-byte vertex count", len(data))
        n = 0
        for b in data[pos + 2:pos + 8]:
            n = n << 6 | (b - 63)
        pos += 8
    else:
        if len(data) < pos + 4:
            raise Graph6Error("truncated 4-byte vertex count", len(data))
        n = 0
        for b in data[pos + 1:pos + 4]:
            n = n << 6 | (b - 63)
        pos += 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos != nbytes:
        raise Graph6Error(f"expected {nbytes} adjacency bytes for n={n}, found {len(data) - pos}", pos)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = data[pos + k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbytes and (data[-1] - 63) & ((1 << (nbytes * 6 - nbits)) - 1):
        raise Graph6Error("non-zero padding bits", len(data) - 1)
    return SimpleGraph(n, tuple(rows))


def all_labeled_graphs(n: int) -> Iterator[SimpleGraph]:
    """Every labelled graph on ``n`` vertices (``2^C(n,2)`` of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield SimpleGraph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
