"""Interval-graph recognition and exact impropriety by clique-ordering search.

An interval representation with distinct endpoints induces a left-to-right
order of the maximal cliques in which each vertex's cliques are
consecutive. Conversely every such ordering can be realized so that the
only containments are the ones forced by strict two-sided nesting of the
vertices' clique ranges (see :func:`realize`). The minimum impropriety is
therefore a minimum over consecutive clique orderings, which is what the
branch-and-bound in :class:`OrderingSearch` computes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .graph import (
    Graph,
    bits,
    connected_components,
    induced_subgraph,
    is_connected,
    mask_of,
    maximal_cliques,
    popcount,
)

IMPROPER = "improper"
PROPER = "proper"


class NotIntervalGraph(ValueError):
    def __init__(self, reason: str = "not an interval graph"):
        self.reason = reason
        super().__init__(reason)


class SearchBudgetExceeded(RuntimeError):
    """Raised when a time budget stops the search before exhaustion.

    ``best_found`` is the best value among explored orderings. It is an
    upper bound on the optimum, not a certificate.
    """

    def __init__(self, best_found: int | None, stats: dict):
        self.best_found = best_found
        self.stats = stats
        super().__init__(f"time budget exceeded (best found so far: {best_found})")


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class IntervalRepresentation:
    intervals: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.intervals)

    def intersection_graph(self) -> Graph:
        iv = self.intervals
        edges = [
            (u, v)
            for u in range(len(iv))
            for v in range(u + 1, len(iv))
            if iv[u][0] <= iv[v][1] and iv[v][0] <= iv[u][1]
        ]
        return Graph.from_edges(len(iv), edges)

    def validate(self, g: Graph | None = None) -> None:
        """Raise ValueError unless endpoints are distinct and ordered (and match ``g``)."""
        seen = set()
        for v, (lo, hi) in enumerate(self.intervals):
            if not lo < hi:
                raise ValueError(f"interval of vertex {v} has left >= right")
            for x in (lo, hi):
                if x in seen:
                    raise ValueError(f"duplicate endpoint {x}")
                seen.add(x)
        if g is not None:
            if g.n != self.n:
                raise ValueError(f"representation has {self.n} intervals, graph has {g.n} vertices")
            if self.intersection_graph().edges != g.edges:
                raise ValueError("intersection graph differs from the source graph")

    def to_json(self) -> dict:
        return {"n": self.n, "intervals": [[lo, hi] for lo, hi in self.intervals]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> IntervalRepresentation:
        intervals = tuple((int(lo), int(hi)) for lo, hi in data["intervals"])
        if int(data["n"]) != len(intervals):
            raise ValueError("'n' does not match the number of intervals")
        return cls(intervals)


@dataclass(frozen=True)
class ContainmentProfile:
    contained_count: tuple[int, ...]
    max_count: int
    argmax: int | None

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> ContainmentProfile:
        if not counts:
            return cls((), 0, None)
        best = max(counts)
        return cls(tuple(counts), best, counts.index(best))


@dataclass
class ImproprietyCertificate:
    value: int
    witness: IntervalRepresentation
    basepoint_witness: int | None
    ordering: tuple[int, ...]
    objective: str = IMPROPER
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "objective": self.objective,
            "value": self.value,
            "witness": self.witness.to_json(),
            "basepoint_witness": self.basepoint_witness,
            "ordering": list(self.ordering),
            "stats": dict(sorted(self.stats.items())),
        }


# ---------------------------------------------------------------------------
# recognition helpers


def _is_chordal(g: Graph) -> bool:
    # maximum cardinality search, then check the perfect elimination ordering
    adj = g.adj
    weight = [0] * g.n
    numbered = 0
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not numbered >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        numbered |= 1 << v
        for u in bits(adj[v] & ~numbered):
            weight[u] += 1
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in bits(adj[v]) if pos[u] < pos[v]]
        if not earlier:
            continue
        parent = max(earlier, key=pos.__getitem__)
        need = mask_of(earlier) & ~(1 << parent)
        if need & ~adj[parent]:
            return False
    return True


def interval_obstruction(g: Graph) -> str | None:
    """``None`` for interval graphs, else a short reason."""
    if not _is_chordal(g):
        return "chordless cycle"
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        search = OrderingSearch(sub, objective=None)
        if search.first_feasible() is None:
            return "asteroidal triple"
    return None


def is_interval_graph(g: Graph) -> bool:
    return interval_obstruction(g) is None


# ---------------------------------------------------------------------------
# ordering search


class OrderingSearch:
    """Depth-first placement of maximal cliques from left to right.

    ``objective`` selects what is minimised: ``"improper"`` counts, per
    vertex, the vertices whose range nests strictly inside its own;
    ``"proper"`` counts the vertices whose range strictly contains it;
    ``None`` only checks feasibility.
    """

    def __init__(self, g: Graph, cliques: Sequence[Sequence[int]] | None = None,
                 objective: str | None = IMPROPER, time_budget: float | None = None):
        self.g = g
        self.cliques = [tuple(c) for c in (maximal_cliques(g) if cliques is None else cliques)]
        self.k = len(self.cliques)
        self.cmask = [mask_of(c) for c in self.cliques]
        self.objective = objective
        self.time_budget = time_budget
        n = g.n
        self.member_of = [0] * n  # bitmask over clique indices
        for i, c in enumerate(self.cliques):
            for v in c:
                self.member_of[v] |= 1 << i
        self.size = [popcount(m) for m in self.member_of]
        # sub[v]: vertices whose clique set is a proper subset of v's
        self.sub = [
            [u for u in range(n) if u != v and self.member_of[u] & ~self.member_of[v] == 0
             and self.member_of[u] != self.member_of[v]]
            for v in range(n)
        ]
        self.stats = {"nodes": 0, "orderings": 0, "feasibility_prunes": 0,
                      "bound_prunes": 0, "mirror_prunes": 0}

    # -- public entry points ------------------------------------------------

    def first_feasible(self) -> tuple[int, ...] | None:
        for order in self._walk(mode="feasible"):
            return order
        return None

    def orderings(self, mirror_quotient: bool = True) -> Iterator[tuple[int, ...]]:
        yield from self._walk(mode="all", mirror=mirror_quotient)

    def minimize(self, collect_all: bool = False) -> tuple[int | None, list[tuple[int, ...]]]:
        """Return the optimum and the optimal orderings (first one only unless ``collect_all``)."""
        self._best = None
        self._best_orders: list[tuple[int, ...]] = []
        self._collect = collect_all
        for _ in self._walk(mode="optimize", mirror=not collect_all):
            pass
        return self._best, self._best_orders

    # -- core ---------------------------------------------------------------

    def _walk(self, mode: str, mirror: bool = True) -> Iterator[tuple[int, ...]]:
        n, k = self.g.n, self.k
        if k == 0:
            if mode == "optimize":
                self._record(0, ())
            yield ()
            return
        first = [-1] * n
        remaining = list(self.size)
        counts = [0] * n
        order: list[int] = []
        started = 0
        finished = 0
        deadline = None if self.time_budget is None else time.monotonic() + self.time_budget
        stats = self.stats
        optimize = mode == "optimize"
        proper = self.objective == PROPER
        improper = self.objective == IMPROPER
        cmask, cliques = self.cmask, self.cliques

        def bound() -> int:
            b = max(counts) if counts else 0
            if improper and self.sub:
                for v in bits(started & ~finished):
                    cand = [u for u in self.sub[v] if first[u] < 0]
                    if not cand:
                        continue
                    # at most the members of v's final clique can escape
                    escape = 0
                    for ci in bits(self.member_of[v] & ~placed_mask[0]):
                        escape = max(escape, sum(1 for u in cand if cmask[ci] >> u & 1))
                    b = max(b, counts[v] + len(cand) - escape)
            return b

        placed_mask = [0]

        def rec() -> Iterator[tuple[int, ...]]:
            nonlocal started, finished
            pos = len(order)
            if pos == k:
                if mirror and k > 1 and order[0] > order[-1]:
                    stats["mirror_prunes"] += 1
                    return
                stats["orderings"] += 1
                if optimize:
                    self._record(max(counts), tuple(order))
                yield tuple(order)
                return
            open_ = started & ~finished
            for ci in bits(((1 << k) - 1) & ~placed_mask[0]):
                stats["nodes"] += 1
                if deadline is not None and stats["nodes"] % 512 == 1 and time.monotonic() > deadline:
                    raise SearchBudgetExceeded(getattr(self, "_best", None), dict(stats))
                cm = cmask[ci]
                if open_ & ~cm or cm & finished:
                    stats["feasibility_prunes"] += 1
                    continue
                if mirror and pos >= 1 and (((1 << k) - 1) & ~placed_mask[0] & ~(1 << ci)) >> (order[0] + 1) == 0 \
                        and pos + 1 < k:
                    # no clique with a larger index than order[0] would remain for the last slot
                    stats["mirror_prunes"] += 1
                    continue
                # place
                newly = cm & ~started
                for v in bits(newly):
                    first[v] = pos
                for v in bits(cm):
                    remaining[v] -= 1
                closing = [v for v in bits(cm) if remaining[v] == 0]
                closing_mask = mask_of(closing)
                staying = cm & ~closing_mask
                saved = None
                if improper or proper:
                    saved = list(counts)
                    for u in closing:
                        fu = first[u]
                        for v in bits(staying):
                            if first[v] < fu:
                                if improper:
                                    counts[v] += 1
                                else:
                                    counts[u] += 1
                prev_started, prev_finished = started, finished
                started |= cm
                finished |= closing_mask
                placed_mask[0] |= 1 << ci
                order.append(ci)

                prune = False
                if optimize and self._best is not None:
                    b = bound()
                    if b > self._best or (b == self._best and not self._collect):
                        prune = True
                        stats["bound_prunes"] += 1
                if not prune:
                    yield from rec()

                order.pop()
                placed_mask[0] &= ~(1 << ci)
                started, finished = prev_started, prev_finished
                if saved is not None:
                    counts[:] = saved
                for v in bits(cm):
                    remaining[v] += 1
                for v in bits(newly):
                    first[v] = -1

        yield from rec()

    def _record(self, value: int, order: tuple[int, ...]) -> None:
        if self._best is None or value < self._best:
            self._best = value
            self._best_orders = [order]
        elif value == self._best and self._collect:
            self._best_orders.append(order)


# ---------------------------------------------------------------------------
# orderings, ranges, nesting, realization


def _check_ordering(g: Graph, cliques: Sequence[Sequence[int]], order: Sequence[int]) -> None:
    if sorted(order) != list(range(len(cliques))):
        raise ValueError("ordering is not a permutation of the clique indices")
    for v in range(g.n):
        pos = [i for i, ci in enumerate(order) if v in cliques[ci]]
        if pos and pos[-1] - pos[0] + 1 != len(pos):
            raise ValueError(f"cliques of vertex {v} are not consecutive")


def consecutive_orderings(g: Graph, mirror_quotient: bool = True) -> Iterator[tuple[int, ...]]:
    """Every consecutive ordering of ``maximal_cliques(g)``.

    With ``mirror_quotient`` only the lexicographically smaller of each
    ordering and its reverse is produced. Non-interval graphs yield nothing.
    """
    yield from OrderingSearch(g, objective=None).orderings(mirror_quotient)


def ranges(g: Graph, order: Sequence[int],
           cliques: Sequence[Sequence[int]] | None = None) -> list[tuple[int, int]]:
    """Per-vertex ``(first, last)`` clique positions under ``order``.

    Vertices not covered by any listed clique get fresh positions after the end.
    """
    cliques = maximal_cliques(g) if cliques is None else cliques
    lo = [None] * g.n
    hi = [None] * g.n
    for pos, ci in enumerate(order):
        for v in cliques[ci]:
            if lo[v] is None:
                lo[v] = pos
            hi[v] = pos
    extra = len(order)
    out = []
    for v in range(g.n):
        if lo[v] is None:
            out.append((extra, extra))
            extra += 1
        else:
            out.append((lo[v], hi[v]))
    return out


def nesting_counts(rng: Sequence[tuple[int, int]], objective: str = IMPROPER) -> list[int]:
    n = len(rng)
    counts = [0] * n
    for v in range(n):
        fv, lv = rng[v]
        for u in range(n):
            fu, lu = rng[u]
            if fv < fu and lu < lv:
                if objective == IMPROPER:
                    counts[v] += 1
                else:
                    counts[u] += 1
    return counts


def forced_nesting(g: Graph, order: Sequence[int], cliques=None,
                   objective: str = IMPROPER) -> ContainmentProfile:
    return ContainmentProfile.from_counts(nesting_counts(ranges(g, order, cliques), objective))


def realize(g: Graph, order: Sequence[int], cliques=None,
            yield_to: int | None = None) -> IntervalRepresentation:
    """Canonical integer representation for a consecutive ordering.

    Gaps are scanned left to right; a gap first closes the vertices whose
    last clique was the previous column (ascending by first position, then
    id) and then opens the vertices whose first clique is the next column
    (ascending by last position, then id). Its containments are exactly
    the strict range nestings.

    ``yield_to`` optionally names a vertex whose endpoints are placed
    innermost within their gaps, so that every interval sharing a boundary
    column with it pokes out of it. The result is still a valid representation.
    """
    cliques = maximal_cliques(g) if cliques is None else cliques
    rng = ranges(g, order, cliques)
    columns = max((hi for _, hi in rng), default=-1) + 1
    left = [0] * g.n
    right = [0] * g.n
    coord = 0

    def opening(i: int) -> list[int]:
        vs = sorted((v for v in range(g.n) if rng[v][0] == i), key=lambda v: (rng[v][1], v))
        if yield_to in vs:
            vs.remove(yield_to)
            vs.append(yield_to)
        return vs

    def closing(i: int) -> list[int]:
        vs = sorted((v for v in range(g.n) if rng[v][1] == i), key=lambda v: (rng[v][0], v))
        if yield_to in vs:
            vs.remove(yield_to)
            vs.insert(0, yield_to)
        return vs

    for v in opening(0):
        left[v] = coord
        coord += 1
    for i in range(columns):
        for v in closing(i):
            right[v] = coord
            coord += 1
        for v in opening(i + 1):
            left[v] = coord
            coord += 1
    return IntervalRepresentation(tuple(zip(left, right)))


def representation_impropriety(rep: IntervalRepresentation, g: Graph | None = None,
                               objective: str = IMPROPER) -> ContainmentProfile:
    rep.validate(g)
    iv = rep.intervals
    counts = [0] * len(iv)
    for v, (lv, rv) in enumerate(iv):
        for u, (lu, ru) in enumerate(iv):
            if lv < lu and ru < rv:
                if objective == IMPROPER:
                    counts[v] += 1
                else:
                    counts[u] += 1
    return ContainmentProfile.from_counts(counts)


# ---------------------------------------------------------------------------
# exact optimisation


def _component_searches(g: Graph, objective: str, time_budget: float | None):
    cliques = maximal_cliques(g)
    index = {c: i for i, c in enumerate(cliques)}
    out = []
    for comp in connected_components(g):
        sub, kept = induced_subgraph(g, comp)
        sub_cliques = maximal_cliques(sub)
        global_ids = [index[tuple(kept[v] for v in c)] for c in sub_cliques]
        out.append((sub, kept, sub_cliques, global_ids,
                    OrderingSearch(sub, sub_cliques, objective, time_budget)))
    return cliques, out


def optimize(g: Graph, objective: str = IMPROPER,
             time_budget: float | None = None) -> ImproprietyCertificate:
    """Exact minimum of the max containment count over all representations.

    Disconnected graphs take the maximum over components, which are laid
    side by side in the witness.
    """
    reason = interval_obstruction(g)
    if reason is not None:
        raise NotIntervalGraph(f"not an interval graph: {reason}")
    cliques, parts = _component_searches(g, objective, time_budget)
    global_order: list[int] = []
    value = 0
    stats = {"nodes": 0, "orderings": 0, "feasibility_prunes": 0, "bound_prunes": 0,
             "mirror_prunes": 0, "components": len(parts)}
    for sub, kept, sub_cliques, global_ids, search in parts:
        best, orders = search.minimize()
        for key, val in search.stats.items():
            stats[key] += val
        value = max(value, best)
        global_order.extend(global_ids[ci] for ci in orders[0])
    witness = realize(g, global_order, cliques)
    profile = representation_impropriety(witness, objective=objective)
    assert profile.max_count == value
    return ImproprietyCertificate(value, witness, profile.argmax, tuple(global_order),
                                  objective, stats)


def impropriety(g: Graph, time_budget: float | None = None) -> ImproprietyCertificate:
    return optimize(g, IMPROPER, time_budget)


def properness(g: Graph, time_budget: float | None = None) -> ImproprietyCertificate:
    return optimize(g, PROPER, time_budget)


def impropriety_value(g: Graph, objective: str = IMPROPER) -> int:
    """Optimum only; the empty graph has value 0."""
    if g.n == 0:
        return 0
    return optimize(g, objective).value


def optimal_orderings(g: Graph, objective: str = IMPROPER) -> tuple[int, list[tuple[int, ...]]]:
    """Optimum for a connected graph and every ordering attaining it (mirror pairs included)."""
    if not is_connected(g):
        raise ValueError("optimal_orderings expects a connected graph")
    if not is_interval_graph(g):
        raise NotIntervalGraph("not an interval graph")
    search = OrderingSearch(g, objective=objective)
    best, orders = search.minimize(collect_all=True)
    return best, orders
