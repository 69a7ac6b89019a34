"""Edge-coloured graphs and copies of a pattern through a designated edge."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

from .errors import PreconditionError
from .graph import Edge, SimpleGraph, iter_vertex_maps, norm_edge

ColorId = int


@dataclass(frozen=True, order=True)
class Added:
    """Colour of the ``step``-th added edge. Distinct steps never share a colour;
    whether a step shares a colour with a base edge is up to the adversary."""

    step: int

    def __str__(self):
        return f"c{self.step}"


EdgeColor = Union[ColorId, Added]


def require_pattern(h: SimpleGraph) -> SimpleGraph:
    if h.num_edges == 0:
        raise PreconditionError("pattern graph must have at least one edge")
    return h


@dataclass(frozen=True)
class ColoredGraph:
    graph: SimpleGraph
    #: colours aligned with ``graph.edges()``
    colors: tuple[EdgeColor, ...]

    def __post_init__(self):
        if len(self.colors) != self.graph.num_edges:
            raise ValueError("need exactly one colour per edge")

    @classmethod
    def from_mapping(cls, graph: SimpleGraph, colors: Mapping[Edge, EdgeColor]) -> "ColoredGraph":
        table = {norm_edge(*e): c for e, c in colors.items()}
        missing = [e for e in graph.edges() if e not in table]
        if missing:
            raise ValueError(f"edges without a colour: {missing}")
        extra = set(table) - set(graph.edges())
        if extra:
            raise ValueError(f"colours given for non-edges: {sorted(extra)}")
        return cls(graph, tuple(table[e] for e in graph.edges()))

    @classmethod
    def rainbow(cls, graph: SimpleGraph, start: int = 1) -> "ColoredGraph":
        """Colour the ``i``-th edge in lexicographic order with ``start + i``."""
        return cls(graph, tuple(range(start, start + graph.num_edges)))

    @cached_property
    def color_map(self) -> dict[Edge, EdgeColor]:
        return dict(zip(self.graph.edges(), self.colors))

    def color(self, u: int, v: int) -> EdgeColor:
        return self.color_map[norm_edge(u, v)]

    @property
    def is_concrete(self) -> bool:
        return all(not isinstance(c, Added) for c in self.colors)

    @property
    def is_rainbow(self) -> bool:
        return len(set(self.colors)) == len(self.colors)

    def concrete_colors(self) -> set[ColorId]:
        return {c for c in self.colors if not isinstance(c, Added)}

    def add_edge(self, u: int, v: int, color: EdgeColor) -> "ColoredGraph":
        if self.graph.has_edge(u, v):
            raise ValueError(f"{u}-{v} is already an edge")
        table = dict(self.color_map)
        table[norm_edge(u, v)] = color
        return ColoredGraph.from_mapping(self.graph.add_edge(u, v), table)

    def disjoint_union(self, other: "ColoredGraph") -> "ColoredGraph":
        shift = self.graph.n
        table = dict(self.color_map)
        for (u, v), c in other.color_map.items():
            table[(u + shift, v + shift)] = c
        return ColoredGraph.from_mapping(self.graph.disjoint_union(other.graph), table)


@dataclass(frozen=True)
class Embedding:
    #: host vertex of each pattern vertex
    mapping: tuple[int, ...]
    #: image edges, normalised and sorted
    edges: tuple[Edge, ...]


def embeddings_through(g: SimpleGraph, h: SimpleGraph, e: Edge) -> list[Embedding]:
    """Every copy of ``h`` in ``g`` whose edge set contains ``e``.

    Copies are deduplicated by their edge image. Enumeration is deterministic:
    pattern edges in lexicographic order, both orientations, then host
    vertices in increasing order. Isolated pattern vertices take the smallest
    unused host vertices.
    """
    require_pattern(h)
    u, v = e
    if not g.has_edge(u, v):
        raise PreconditionError(f"{u}-{v} is not an edge of the host")
    if h.n > g.n:
        return []
    isolated = h.isolated_vertices()
    pattern_edges = h.edges()
    seen = set()
    out = []
    for a, b in pattern_edges:
        for x, y in ((u, v), (v, u)):
            for image in iter_vertex_maps(g, h, {a: x, b: y}):
                edges = tuple(sorted(norm_edge(image[p], image[q]) for p, q in pattern_edges))
                if edges in seen:
                    continue
                seen.add(edges)
                used = set(image.values())
                spare = iter(w for w in range(g.n) if w not in used)
                for z in isolated:
                    image[z] = next(spare)
                out.append(Embedding(tuple(image[z] for z in range(h.n)), edges))
    return out


def is_rainbow_copy(gc: ColoredGraph, edges: Iterable[Edge]) -> bool:
    colors = [gc.color(*e) for e in edges]
    return len(set(colors)) == len(colors)


def find_rainbow_copy_through(gc: ColoredGraph, h: SimpleGraph, e: Edge) -> Embedding | None:
    """First copy of ``h`` through ``e`` whose edges carry pairwise distinct colours."""
    if not gc.is_concrete:
        raise PreconditionError("find_rainbow_copy_through needs concrete colours only")
    for emb in embeddings_through(gc.graph, h, e):
        if is_rainbow_copy(gc, emb.edges):
            return emb
    return None


# -- colour-map sidecar ----------------------------------------------------------


def format_color_map(gc: ColoredGraph) -> str:
    """One ``"u v: color"`` line per edge, in lexicographic edge order."""
    if not gc.is_concrete:
        raise ValueError("only concrete colourings can be serialised")
    return "".join(f"{u} {v}: {c}\n" for (u, v), c in gc.color_map.items())


def parse_color_map(text: str) -> dict[Edge, ColorId]:
    table = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            pair, color = line.split(":")
            u, v = (int(x) for x in pair.split())
            table[norm_edge(u, v)] = int(color)
        except ValueError:
            raise ValueError(f"line {lineno}: expected 'u v: color', got {line!r}") from None
    return table
