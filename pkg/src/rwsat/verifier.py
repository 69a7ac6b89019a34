"""Exact decision procedure for weak rainbow saturation.

The adversary picks pairwise distinct colours ``c_1, c_2, ...`` for the added
edges. Only the equality pattern matters, so an adversary move is an
:class:`Assignment`: an injective pinning of some added-edge colours to base
colours, every unpinned colour being fresh. An edge is *addable* when no
assignment kills every copy of the pattern through it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BudgetExceededError, MalformedCertificateError, PreconditionError
from .extremal import f_interval
from .graph import Edge, SimpleGraph, complete_graph, decode_graph6, encode_graph6, norm_edge
from .rainbow import (
    Added,
    ColoredGraph,
    ColorId,
    EdgeColor,
    embeddings_through,
    find_rainbow_copy_through,
    require_pattern,
)

#: Default cap on the number of assignments the naive oracle may enumerate.
ORACLE_BUDGET = 10**7


@dataclass(frozen=True)
class ColoredState:
    """A concretely coloured base graph plus added edges; the ``i``-th added
    edge (1-based) carries colour ``Added(i)``."""

    base: ColoredGraph
    added: tuple[Edge, ...] = ()

    def __post_init__(self):
        if not self.base.is_concrete:
            raise ValueError("base colours must be concrete")
        seen = set()
        for u, v in self.added:
            e = norm_edge(u, v)
            if u == v or self.base.graph.has_edge(u, v) or e in seen:
                raise ValueError(f"added edge {u}-{v} is not a fresh non-edge")
            seen.add(e)

    @property
    def graph(self) -> SimpleGraph:
        return self.base.graph.add_edges(self.added)

    def color(self, u: int, v: int) -> EdgeColor:
        e = norm_edge(u, v)
        for i, a in enumerate(self.added, 1):
            if norm_edge(*a) == e:
                return Added(i)
        return self.base.color(u, v)

    def extend(self, e: Edge) -> "ColoredState":
        return ColoredState(self.base, self.added + (norm_edge(*e),))


@dataclass(frozen=True)
class Assignment:
    """Injective map from added-edge indices to base colours."""

    pins: tuple[tuple[int, ColorId], ...] = ()

    @classmethod
    def from_dict(cls, pins: dict[int, ColorId]) -> "Assignment":
        return cls(tuple(sorted(pins.items())))

    def as_dict(self) -> dict[int, ColorId]:
        return dict(self.pins)

    def __str__(self):
        if not self.pins:
            return "all fresh"
        return ", ".join(f"c{s} -> {c}" for s, c in self.pins)


def concretize(state: ColoredState, e: Edge, assignment: Assignment) -> ColoredGraph:
    """Colour ``state + e`` concretely: pinned steps take their pinned colour,
    the rest take distinct colours unused by the base."""
    pins = assignment.as_dict()
    fresh = max(state.base.concrete_colors(), default=0) + 1
    table = dict(state.base.color_map)
    for i, a in enumerate(state.added + (norm_edge(*e),), 1):
        table[norm_edge(*a)] = pins.get(i, fresh + i)
    return ColoredGraph.from_mapping(state.graph.add_edge(*e), table)


@dataclass(frozen=True)
class Copy:
    """What the adversary sees of a candidate copy: its base colours and added steps."""

    colors: frozenset
    steps: frozenset


def find_killing_assignment(copies: Sequence[Copy]) -> dict[int, ColorId] | None:
    """Injective pinning killing every copy, or None.

    A copy dies when one of its steps is pinned to one of its colours. Copies
    without colours can never die. Search branches on the live copy with the
    fewest ways left to kill it.
    """
    if any(not c.colors for c in copies):
        return None
    pins: dict[int, ColorId] = {}
    used: set[ColorId] = set()

    def solve(live: list[Copy]) -> bool:
        best = None
        for cp in live:
            opts = [(s, c) for s in sorted(cp.steps) if s not in pins
                    for c in sorted(cp.colors) if c not in used]
            if not opts:
                return False
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) == 1:
                    break
        if best is None:
            return True
        for s, c in best:
            pins[s] = c
            used.add(c)
            if solve([cp for cp in live if not (s in cp.steps and c in cp.colors)]):
                return True
            del pins[s]
            used.discard(c)
        return False

    return dict(pins) if solve(list(dict.fromkeys(copies))) else None


@dataclass(frozen=True)
class AddableResult:
    verdict: bool
    breaking: Assignment | None = None
    #: number of distinct copies of the pattern through the edge
    candidates: int = 0
    #: a copy made only of added edges, rainbow under every assignment
    witness: tuple[Edge, ...] | None = None

    def __bool__(self):
        return self.verdict


def addable(state: ColoredState, h: SimpleGraph, e: Edge) -> AddableResult:
    """Does adding ``e`` create a rainbow copy of ``h`` through ``e`` for every
    choice of pairwise distinct colours on the added edges and ``e``?"""
    require_pattern(h)
    e = norm_edge(*e)
    current = state.graph
    if e[0] == e[1] or current.has_edge(*e):
        raise PreconditionError(f"{e[0]}-{e[1]} is not a non-edge of the current graph")
    host = current.add_edge(*e)
    step_of = {a: i for i, a in enumerate(state.added, 1)}
    step_of[e] = len(state.added) + 1
    base_color = state.base.color_map
    embs = embeddings_through(host, h, e)
    copies = []
    witness = None
    for emb in embs:
        colors = [base_color[x] for x in emb.edges if x not in step_of]
        if len(set(colors)) < len(colors):
            continue
        if not colors and witness is None:
            witness = emb.edges
        copies.append(Copy(frozenset(colors), frozenset(step_of[x] for x in emb.edges if x in step_of)))
    if witness is not None:
        return AddableResult(True, None, len(embs), witness)
    pins = find_killing_assignment(copies)
    if pins is None:
        return AddableResult(True, None, len(embs))
    breaking = Assignment.from_dict(pins)
    if find_rainbow_copy_through(concretize(state, e, breaking), h, e) is not None:
        raise AssertionError(f"breaking assignment {breaking} leaves a rainbow copy")
    return AddableResult(False, breaking, len(embs))


# -- independent oracle ----------------------------------------------------------


def count_assignments(symbols: int, colors: int) -> int:
    return sum(math.comb(symbols, t) * math.perm(colors, t) for t in range(min(symbols, colors) + 1))


def iter_assignments(symbols: int, colors: Sequence[ColorId]) -> Iterator[Assignment]:
    """Every injective partial pinning of steps ``1..symbols`` into ``colors``."""
    for t in range(min(symbols, len(colors)) + 1):
        for steps in itertools.combinations(range(1, symbols + 1), t):
            for chosen in itertools.permutations(colors, t):
                yield Assignment(tuple(zip(steps, chosen)))


def naive_addable_oracle(state: ColoredState, h: SimpleGraph, e: Edge, budget: int = ORACLE_BUDGET) -> bool:
    """Brute force over every canonical colour assignment."""
    e = norm_edge(*e)
    colors = sorted(state.base.concrete_colors())
    symbols = len(state.added) + 1
    total = count_assignments(symbols, len(colors))
    if total > budget:
        raise BudgetExceededError(f"{total} assignments exceed the oracle budget {budget}")
    return all(
        find_rainbow_copy_through(concretize(state, e, a), h, e) is not None
        for a in iter_assignments(symbols, colors)
    )


# -- closure and certificates --------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    edge: Edge
    candidates: int
    witness: tuple[Edge, ...] | None = None


@dataclass(frozen=True)
class Certificate:
    graph: SimpleGraph
    pattern: SimpleGraph
    steps: tuple[StepRecord, ...]

    @property
    def ordering(self) -> tuple[Edge, ...]:
        return tuple(s.edge for s in self.steps)


@dataclass(frozen=True)
class ClosureResult:
    saturated: bool
    final: ColoredState
    steps: tuple[StepRecord, ...]
    #: non-edges never added, only when not saturated
    stuck: tuple[Edge, ...] = ()

    @property
    def ordering(self) -> tuple[Edge, ...]:
        return tuple(s.edge for s in self.steps)

    def certificate(self, h: SimpleGraph) -> Certificate:
        if not self.saturated:
            raise ValueError("only saturated closures yield certificates")
        return Certificate(self.final.base.graph, h, self.steps)


def greedy_closure(gc: ColoredGraph, h: SimpleGraph) -> ClosureResult:
    """Add currently addable non-edges, scanning lexicographically, until
    nothing more can be added.

    Addability only grows as edges are added, so the closure is complete iff
    some valid ordering exists; this decides weak rainbow saturation.
    """
    require_pattern(h)
    state = ColoredState(gc)
    pending = gc.graph.non_edges()
    steps = []
    progress = True
    while pending and progress:
        progress = False
        remaining = []
        for e in pending:
            res = addable(state, h, e)
            if res.verdict:
                state = state.extend(e)
                steps.append(StepRecord(e, res.candidates, res.witness))
                progress = True
            else:
                remaining.append(e)
        pending = remaining
    return ClosureResult(not pending, state, tuple(steps), tuple(pending))


def is_weakly_saturated(gc: ColoredGraph, h: SimpleGraph) -> bool:
    return greedy_closure(gc, h).saturated


@dataclass(frozen=True)
class VerifyResult:
    accepted: bool
    failed_step: int | None = None
    failed_edge: Edge | None = None
    breaking: Assignment | None = None


def verify_certificate(gc: ColoredGraph, h: SimpleGraph, cert: Certificate | Sequence[Edge]) -> VerifyResult:
    """Replay an ordering of the non-edges, checking every step."""
    if isinstance(cert, Certificate):
        if cert.graph != gc.graph:
            raise MalformedCertificateError("certificate was issued for a different graph")
        if cert.pattern != h:
            raise MalformedCertificateError("certificate was issued for a different pattern")
        ordering = cert.ordering
    else:
        ordering = tuple(norm_edge(*e) for e in cert)
    non_edges = set(gc.graph.non_edges())
    for i, e in enumerate(ordering, 1):
        if e not in non_edges:
            raise MalformedCertificateError(f"step {i}: {e[0]} {e[1]} is not a non-edge of the graph")
    if len(set(ordering)) != len(ordering):
        raise MalformedCertificateError("ordering repeats an edge")
    if set(ordering) != non_edges:
        raise MalformedCertificateError(f"ordering misses {len(non_edges - set(ordering))} non-edges")
    state = ColoredState(gc)
    for i, e in enumerate(ordering, 1):
        res = addable(state, h, e)
        if not res.verdict:
            return VerifyResult(False, i, e, res.breaking)
        state = state.extend(e)
    return VerifyResult(True)


def format_certificate(cert: Certificate) -> str:
    lines = [f"G {encode_graph6(cert.graph)}", f"H {encode_graph6(cert.pattern)}"]
    for s in cert.steps:
        line = f"{s.edge[0]} {s.edge[1]} # copies={s.candidates}"
        if s.witness is not None:
            line += " witness=" + ",".join(f"{u}-{v}" for u, v in s.witness)
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 2 or not lines[0].startswith("G ") or not lines[1].startswith("H "):
        raise MalformedCertificateError("certificate must start with 'G <graph6>' and 'H <graph6>' lines")
    graph = decode_graph6(lines[0][2:])
    pattern = decode_graph6(lines[1][2:])
    steps = []
    for lineno, line in enumerate(lines[2:], 3):
        body, _, comment = line.partition(" # ")
        try:
            u, v = (int(x) for x in body.split(" "))
        except ValueError:
            raise MalformedCertificateError(f"line {lineno}: expected 'u v', got {body!r}") from None
        candidates, witness = 0, None
        for token in comment.split(" ") if comment else ():
            key, _, value = token.partition("=")
            if key == "copies":
                candidates = int(value)
            elif key == "witness":
                witness = tuple(tuple(int(x) for x in pair.split("-")) for pair in value.split(","))
            else:
                raise MalformedCertificateError(f"line {lineno}: unknown annotation {key!r}")
        steps.append(StepRecord(norm_edge(u, v), candidates, witness))
    return Certificate(graph, pattern, tuple(steps))


# -- recolouring and the augmentation gadget ----------------------------------------------


def rainbow_recolor(gc: ColoredGraph) -> ColoredGraph:
    """Same graph, every edge a distinct colour above all colours in use."""
    if not gc.is_concrete:
        raise PreconditionError("rainbow_recolor needs concrete colours")
    return ColoredGraph.rainbow(gc.graph, start=max(gc.colors, default=0) + 1)


@dataclass(frozen=True)
class GadgetReport:
    holds: bool
    order: int
    checked_colors: int
    failures: tuple = field(default=())


def gadget_graph(inner: int) -> ColoredGraph:
    """``K_{inner+2}`` on ``u=0, v=1`` plus ``inner`` further vertices, coloured
    rainbow: first the ``2·inner`` cross edges, then the inner clique, then
    ``uv``."""
    table = {}
    color = 1
    for w in range(2, inner + 2):
        for x in (0, 1):
            table[(x, w)] = color
            color += 1
    for a in range(2, inner + 2):
        for b in range(a + 1, inner + 2):
            table[(a, b)] = color
            color += 1
    table[(0, 1)] = color
    return ColoredGraph.from_mapping(complete_graph(inner + 2), table)


def _gadget_killable(h: SimpleGraph, inner: int, uv_color: str | int) -> dict | None:
    """Adversarial gadget check for one choice of colour on ``uv``.

    Cross edges keep distinct concrete colours; inner edges become symbols
    that the adversary may pin (injectively) to cross colours. ``uv_color`` is
    a cross colour, ``"fresh"``, or ``"shared"`` (a fresh colour also used by
    inner edge ``(2, 3)``). Returns a killing pinning or None.
    """
    base = gadget_graph(inner)
    cross = {e: c for e, c in base.color_map.items() if e[0] < 2 and e[1] >= 2}
    inner_edges = [e for e in base.graph.edges() if e[0] >= 2]
    step = {e: i for i, e in enumerate(inner_edges, 1)}
    fixed = dict(cross)
    if uv_color == "fresh":
        fixed[(0, 1)] = 0
    elif uv_color == "shared":
        fixed[(0, 1)] = fixed[(2, 3)] = 0
        del step[(2, 3)]
    else:
        fixed[(0, 1)] = uv_color
    copies = []
    for emb in embeddings_through(base.graph, h, (0, 1)):
        colors = [fixed[x] for x in emb.edges if x in fixed]
        if len(set(colors)) < len(colors):
            continue
        copies.append(Copy(frozenset(colors), frozenset(step[x] for x in emb.edges if x in step)))
    if any(not c.steps for c in copies):
        return None
    return find_killing_assignment(copies) if copies else {}


def check_gadget(h: SimpleGraph, f_extra: int, detailed: bool = False, adversarial: bool = False):
    """For every colour ``uv`` might receive (each colour already on the gadget,
    or a fresh one), a rainbow copy of ``h`` through ``uv`` exists.

    With ``adversarial=True`` the inner clique's colours are not fixed: they
    stay pairwise distinct but may coincide with cross colours, and ``uv`` may
    also share a colour with an inner edge.
    """
    require_pattern(h)
    lo, hi = f_interval(h)
    needed = lo if lo == hi else max(hi, 5 * h.n)
    if f_extra < needed:
        raise PreconditionError(f"gadget needs at least f(H) = {needed} extra vertices, got {f_extra}")
    failures = []
    if adversarial:
        options = list(range(1, 2 * f_extra + 1)) + ["fresh"] + (["shared"] if f_extra >= 2 else [])
        for c in options:
            if _gadget_killable(h, f_extra, c) is not None:
                failures.append(c)
    else:
        base = gadget_graph(f_extra)
        options = sorted(set(base.colors)) + [max(base.colors) + 1]
        for c in options:
            table = dict(base.color_map)
            table[(0, 1)] = c
            if find_rainbow_copy_through(ColoredGraph.from_mapping(base.graph, table), h, (0, 1)) is None:
                failures.append(c)
    report = GadgetReport(not failures, f_extra + 2, len(options), tuple(failures))
    return report if detailed else report.holds
