"""Pattern invariants, exact Turán numbers, f(H), and closed-form bounds on rwsat."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import BudgetExceededError, PreconditionError, SizeExceededError
from .graph import (
    MAX_VERTICES,
    Edge,
    SimpleGraph,
    bridged_cliques,
    canonical_graph,
    complete_graph,
    contains_subgraph_through,
    cycle_graph,
    is_isomorphic,
    iter_bits,
    path_graph,
)
from .rainbow import require_pattern

#: Default cap on the number of free graphs kept while computing ``ex``.
TURAN_BUDGET = 200_000


# -- pattern invariants ----------------------------------------------------------


def delta_prime(h: SimpleGraph) -> int:
    """Minimum degree over the non-isolated vertices."""
    require_pattern(h)
    return min(d for d in h.degrees() if d)


def has_pendant_edge(h: SimpleGraph) -> bool:
    return any(h.degree(u) == 1 or h.degree(v) == 1 for u, v in h.edges())


def peeled_family(h: SimpleGraph) -> list[SimpleGraph]:
    """``H - {u, v}`` for every edge ``uv``, one canonical graph per class."""
    out = []
    seen = set()
    for u, v in h.edges():
        g = canonical_graph(h.remove_vertices((u, v)))
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def in_family_F(h: SimpleGraph) -> Edge | None:
    """An edge ``uv`` with both endpoints of degree 2 that is the middle edge of
    an induced ``P_4``, or None."""
    for u, v in h.edges():
        if h.degree(u) != 2 or h.degree(v) != 2:
            continue
        (x,) = [w for w in h.neighbors(u) if w != v]
        (y,) = [w for w in h.neighbors(v) if w != u]
        if x != y and not h.has_edge(x, y):
            return (u, v)
    return None


def is_complete_pattern(h: SimpleGraph) -> bool:
    return h.n >= 2 and h.num_edges == h.n * (h.n - 1) // 2


# -- Turán numbers ------------------------------------------------------------------


@dataclass(frozen=True)
class ExValue:
    """``ex(n, family)``; ``edges is None`` means no ``n``-vertex graph is family-free."""

    edges: int | None

    @property
    def no_free_graph(self) -> bool:
        return self.edges is None

    def __str__(self):
        return "NoFreeGraph" if self.edges is None else str(self.edges)


def turan_graph_edges(n: int, parts: int) -> int:
    """Edges of the complete ``parts``-partite graph on ``n`` vertices with
    part sizes as equal as possible."""
    q, r = divmod(n, parts)
    sizes = [q + 1] * r + [q] * (parts - r)
    return (n * n - sum(x * x for x in sizes)) // 2


def turan_ex(n: int, family: Sequence[SimpleGraph], bound: int = MAX_VERTICES,
             budget: int = TURAN_BUDGET, closed_form: bool = True) -> ExValue:
    """Exact ``ex(n, family)``.

    Being family-free is closed under deleting edges, so the free graphs with
    ``k`` edges are exactly the free one-edge extensions of free graphs with
    ``k - 1`` edges. Levels are grown that way (up to isomorphism) until one
    comes out empty. A family that is a single clique is answered by the
    Turán graph unless ``closed_form`` is False.
    """
    if not family:
        raise PreconditionError("family must be nonempty")
    relevant = [f for f in family if f.n <= n]
    if any(f.num_edges == 0 for f in relevant):
        return ExValue(None)
    if closed_form and len(relevant) == 1 and is_complete_pattern(relevant[0]):
        # Turán's theorem: the balanced complete (r-1)-partite graph is extremal
        return ExValue(turan_graph_edges(n, relevant[0].n - 1))
    if n > bound:
        raise SizeExceededError(n, bound)
    total = n * (n - 1) // 2
    if not relevant:
        return ExValue(total)
    relevant.sort(key=lambda f: (f.num_edges, f.n))
    level = {SimpleGraph.empty(n)}
    kept = 1
    k = 0
    while k < total:
        nxt = set()
        for g in level:
            for e in g.non_edges():
                h = g.add_edge(*e)
                # g is free, so any forbidden copy in h must use the new edge
                if any(contains_subgraph_through(h, f, e) for f in relevant):
                    continue
                c = canonical_graph(h)
                if c in nxt:
                    continue
                nxt.add(c)
                kept += 1
                if kept > budget:
                    raise BudgetExceededError(
                        f"ex({n}, family) needs more than {budget} free graphs", partial=k + 1)
        if not nxt:
            break
        level = nxt
        k += 1
    return ExValue(k)


# -- f(H) ------------------------------------------------------------------------------


def f_condition_holds(ex: ExValue, n: int) -> bool:
    """``ex(N, 𝓗) ≤ C(N,2) - 2N - 2``; vacuously true when nothing is free."""
    return ex.no_free_graph or ex.edges <= math.comb(n, 2) - 2 * n - 2


@lru_cache(maxsize=None)
def _f_of_canonical(h: SimpleGraph, bound: int, budget: int) -> int:
    family = peeled_family(h)
    lo, hi = h.n - 1, 5 * h.n
    checked: dict[int, bool] = {}

    def cond(N: int) -> bool:
        if N not in checked:
            checked[N] = f_condition_holds(turan_ex(N, family, bound=bound, budget=budget), N)
        return checked[N]

    for cand in range(lo, hi + 1):
        try:
            ok = cond(cand - 1) and cond(cand)
        except (SizeExceededError, BudgetExceededError) as exc:
            err = SizeExceededError(
                getattr(exc, "n", cand), bound,
                f"f(H) search needs ex(N, family) beyond desk scale at candidate {cand}; "
                f"f(H) lies in [{cand}, {hi}]")
            err.interval = (cand, hi)
            raise err from exc
        if ok:
            return cand
    raise AssertionError(f"no f(H) found up to {hi}; contradicts f(H) <= 5|V(H)|")


def f_of_h(h: SimpleGraph, bound: int = MAX_VERTICES, budget: int = TURAN_BUDGET) -> int:
    """Smallest ``n ≥ |V(H)| - 1`` with ``ex(N, 𝓗) ≤ C(N,2) - 2N - 2`` for
    ``N ∈ {n-1, n}``, where 𝓗 is :func:`peeled_family`.

    Raises SizeExceededError (with an ``interval`` attribute bracketing f) when
    the Turán computations leave desk scale.
    """
    require_pattern(h)
    return _f_of_canonical(canonical_graph(h), bound, budget)


def f_interval(h: SimpleGraph, bound: int = MAX_VERTICES, budget: int = TURAN_BUDGET) -> tuple[int, int]:
    """``(f, f)`` when computable, otherwise the best bracket known."""
    try:
        f = f_of_h(h, bound, budget)
        return (f, f)
    except SizeExceededError as exc:
        return getattr(exc, "interval", (h.n - 1, 5 * h.n))


# -- witnesses for the independent-set and biclique lemmas --------------------------------


def find_independent_set(g: SimpleGraph, c) -> list[int]:
    """A maximum independent set, which has size at least ``ceil(n / (2c + 1))``
    whenever ``0 ≤ c ≤ (n - 3)/6`` and ``|E| ≤ c n``."""
    c = Fraction(c)
    n = g.n
    if c < 0 or c > Fraction(n - 3, 6):
        raise PreconditionError(f"need 0 <= c <= (n-3)/6, got c={c}, n={n}")
    if g.num_edges > c * n:
        raise PreconditionError(f"graph has {g.num_edges} edges, more than c*n = {c * n}")
    target = math.ceil(Fraction(n) / (2 * c + 1))
    best = maximum_independent_set(g)
    if len(best) < target:
        raise AssertionError(f"independent set of size {len(best)} < guaranteed {target}")
    return best


def maximum_independent_set(g: SimpleGraph) -> list[int]:
    best = 0
    best_size = -1

    def grow(chosen: int, cand: int):
        nonlocal best, best_size
        if not cand:
            size = chosen.bit_count()
            if size > best_size:
                best, best_size = chosen, size
            return
        if chosen.bit_count() + cand.bit_count() <= best_size:
            return
        v = max(iter_bits(cand), key=lambda w: ((g.adj[w] & cand).bit_count(), -w))
        if not g.adj[v] & cand:
            grow(chosen | cand, 0)
            return
        grow(chosen | 1 << v, cand & ~g.adj[v] & ~(1 << v))
        grow(chosen, cand & ~(1 << v))

    grow(0, (1 << g.n) - 1)
    return list(iter_bits(best))


def find_biclique(g: SimpleGraph, part_a: Sequence[int], part_b: Sequence[int]) -> tuple[list[int], list[int]]:
    """``(A*, B*)`` spanning a complete bipartite subgraph with
    ``|A*| = floor(m/2)`` and ``|B*| ≥ floor(n/2)``, where ``m = |A| ≤ n = |B|``
    and ``g`` has at least ``m(n-1)`` edges, all between the parts.

    ``A*`` is taken among the vertices of ``A`` missing at most one vertex of
    ``B`` and ``B*`` is their common neighbourhood.
    """
    a, b = sorted(part_a), sorted(part_b)
    m, n = len(a), len(b)
    if set(a) & set(b):
        raise PreconditionError("parts must be disjoint")
    if not 2 <= m <= n:
        raise PreconditionError(f"need n >= m >= 2, got m={m}, n={n}")
    mask_a = sum(1 << v for v in a)
    mask_b = sum(1 << v for v in b)
    for u, v in g.edges():
        if not (mask_a >> u & 1 and mask_b >> v & 1 or mask_b >> u & 1 and mask_a >> v & 1):
            raise PreconditionError(f"edge {u}-{v} does not cross the bipartition")
    if g.num_edges < m * (n - 1):
        raise PreconditionError(f"need at least m(n-1) = {m * (n - 1)} edges, got {g.num_edges}")
    heavy = [v for v in a if (g.adj[v] & mask_b).bit_count() >= n - 1]
    a_star = heavy[: m // 2]
    common = mask_b
    for v in a_star:
        common &= g.adj[v]
    b_star = list(iter_bits(common))
    if len(a_star) != m // 2 or len(b_star) < n // 2:
        raise AssertionError("biclique construction failed under valid preconditions")
    return a_star, b_star


# -- sequences ---------------------------------------------------------------------------


def _as_table(seq) -> dict[int, float]:
    table = dict(seq.items() if isinstance(seq, Mapping) else seq)
    if table:
        idx = sorted(table)
        if idx != list(range(idx[0], idx[-1] + 1)):
            raise ValueError("sequence has gaps in its index range")
    return table


def check_subadditive(seq, c, t) -> bool:
    """``a[m+n] ≤ a[m] + a[n] + c`` for every available ``m, n ≥ t``."""
    a = _as_table(seq)
    return all(
        a[p + q] <= a[p] + a[q] + c
        for p in a for q in a
        if p >= t and q >= t and p + q in a
    )


def subadditive_slack(seq, t) -> float | None:
    """Smallest ``c`` making :func:`check_subadditive` true; None if no pair applies."""
    a = _as_table(seq)
    gaps = [a[p + q] - a[p] - a[q] for p in a for q in a if p >= t and q >= t and p + q in a]
    return max(gaps) if gaps else None


# -- profile ------------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternProfile:
    delta_prime: int
    has_pendant: bool
    peeled_family: tuple[SimpleGraph, ...]
    f_value: int | None
    f_interval: tuple[int, int]
    family_F_witness: Edge | None


def pattern_profile(h: SimpleGraph, bound: int = MAX_VERTICES, budget: int = TURAN_BUDGET) -> PatternProfile:
    require_pattern(h)
    lo, hi = f_interval(h, bound, budget)
    return PatternProfile(
        delta_prime=delta_prime(h),
        has_pendant=has_pendant_edge(h),
        peeled_family=tuple(peeled_family(h)),
        f_value=lo if lo == hi else None,
        f_interval=(lo, hi),
        family_F_witness=in_family_F(h),
    )


# -- closed-form bounds -----------------------------------------------------------------------


@dataclass(frozen=True)
class BoundTerm:
    side: str  # "lower" or "upper"
    source: str
    value: int | None
    reason: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lower: int
    upper: int
    lower_source: str
    upper_source: str
    terms: tuple[BoundTerm, ...] = field(default=())

    def inapplicable(self) -> list[BoundTerm]:
        return [t for t in self.terms if not t.applicable]


def family_F_edge_count(n: int, h_order: int) -> tuple[int, int, int]:
    """``(k, t, edges)`` for the clique-plus-pendant-triangles construction."""
    k = (n - h_order - 1) // 2
    t = n - 2 * k
    return k, t, math.comb(t, 2) + 3 * k


def bridged_cliques_edge_count(n: int, t: int) -> int | None:
    q, r = divmod(n, t + 1)
    if q < r or q < 2:
        return None
    return r * math.comb(t + 2, 2) + (q - r) * math.comb(t + 1, 2)


def c4_construction_edge_count(n: int) -> int | None:
    if n >= 5 and n % 2 == 1:
        return (n - 1) + (n - 1) // 2
    if n >= 8 and n % 2 == 0:
        return 6 + (n - 4) + (n - 4) // 2
    return None


def paper_bounds(n: int, h: SimpleGraph, bound: int = MAX_VERTICES, budget: int = TURAN_BUDGET) -> BoundsReport:
    """Best lower and upper bounds on ``rwsat(n, H)`` from the closed forms,
    each gated by the range of ``n`` where it holds."""
    require_pattern(h)
    dp = delta_prime(h)
    pendant = has_pendant_edge(h)
    f_lo, f_hi = f_interval(h, bound, budget)
    f = f_lo if f_lo == f_hi else None
    no_f = "f(H) not computed exactly"
    terms: list[BoundTerm] = [
        BoundTerm("lower", "trivial", 0),
        BoundTerm("upper", "complete graph", math.comb(n, 2)),
    ]

    def add(side, source, value, guard, reason):
        terms.append(BoundTerm(side, source, value if guard else None, "" if guard else reason))

    if pendant:
        add("upper", "clique plus isolated vertices",
            math.comb(f + 1, 2) if f is not None else None,
            f is not None and n > f + 1, no_f if f is None else f"needs n > f(H)+1 = {f + 1}")
    else:
        ok = f is not None and n > f + dp
        why = no_f if f is None else f"needs n > f(H)+delta'(H) = {f + dp}"
        add("lower", "minimum-degree bound", math.ceil(dp * n / 2), ok, why)
        add("upper", "three-block construction",
            dp * (n - f - dp) + math.comb(f + dp, 2) if ok else None, ok, why)

    if is_complete_pattern(h) and h.n >= 3:
        r = h.n
        add("upper", "complete-graph construction",
            (r - 1) * (n - r) + math.comb(r, 2) if n > r else None, n > r, f"needs n > r = {r}")
        add("lower", "weak saturation of cliques",
            math.comb(n, 2) - math.comb(n - r + 2, 2) if n >= r else None, n >= r, f"needs n >= r = {r}")

    if in_family_F(h) is not None and dp == 2:
        ok = n >= h.n + 3
        add("upper", "pendant-triangle construction",
            family_F_edge_count(n, h.n)[2] if ok else None, ok, f"needs n >= |V(H)|+3 = {h.n + 3}")

    if h.n == 4 and is_isomorphic(h, cycle_graph(4)):
        value = c4_construction_edge_count(n)
        add("upper", "C4 hub-and-matching construction", value, value is not None, "needs odd n >= 5 or even n >= 8")

    bridged = _bridged_clique_order(h)
    if bridged is not None:
        value = bridged_cliques_edge_count(n, bridged)
        add("upper", "bridged-clique example (disjoint K_{t+1}, K_{t+2})", value,
            value is not None, f"needs floor(n/{bridged + 1}) >= max(2, n mod {bridged + 1})")

    lowers = [t for t in terms if t.side == "lower" and t.applicable]
    uppers = [t for t in terms if t.side == "upper" and t.applicable]
    lo = max(lowers, key=lambda t: t.value)
    hi = min(uppers, key=lambda t: t.value)
    return BoundsReport(n, lo.value, hi.value, lo.source, hi.source, tuple(terms))


def _bridged_clique_order(h: SimpleGraph) -> int | None:
    """``t`` if ``h`` is two disjoint ``K_t`` (``t ≥ 3``) plus one bridging edge."""
    if h.n % 2 or h.n < 6:
        return None
    t = h.n // 2
    if h.num_edges != 2 * math.comb(t, 2) + 1:
        return None
    return t if is_isomorphic(h, bridged_cliques(t)) else None


def named_pattern(name: str) -> SimpleGraph:
    """``K3``, ``C5``, ``P3`` (path on 3 vertices), ``B3`` (bridged cliques)."""
    kind, size = name[0].upper(), int(name[1:])
    builders = {"K": complete_graph, "C": cycle_graph, "P": path_graph, "B": bridged_cliques}
    if kind not in builders:
        raise ValueError(f"unknown pattern family {name!r}")
    return builders[kind](size)
