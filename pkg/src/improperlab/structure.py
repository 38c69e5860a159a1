"""Basepoints, local components, side and exterior components.

These are operational versions: a basepoint witness is any vertex attaining
the optimum in the canonical realization of some optimal clique ordering,
and a local component is exterior when some valid representation has it
poking out of the basepoint's interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .engine import (
    IMPROPER,
    IntervalRepresentation,
    NotIntervalGraph,
    OrderingSearch,
    impropriety,
    interval_obstruction,
    nesting_counts,
    ranges,
)
from .graph import Graph, connected_components, delete_vertex, induced_subgraph


class EmptyForProper(ValueError):
    """Basepoints are undefined for graphs of impropriety 0."""


@dataclass
class SideComponentView:
    representation: IntervalRepresentation
    basepoint: int
    components: list[list[int]]
    side_components: list[int]


@dataclass
class StructureReport:
    basepoint_witnesses: list[int]
    local_components: dict[int, list[list[int]]] = field(default_factory=dict)
    exterior_flags: dict[int, list[bool]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "definition": "operational",
            "basepoint_witnesses": self.basepoint_witnesses,
            "per_witness": {
                str(b): {
                    "local_components": self.local_components[b],
                    "exterior": self.exterior_flags[b],
                }
                for b in self.basepoint_witnesses
            },
        }


def _require_interval(g: Graph) -> None:
    reason = interval_obstruction(g)
    if reason is not None:
        raise NotIntervalGraph(f"not an interval graph: {reason}")


def basepoint_witnesses(g: Graph) -> list[int]:
    """Vertices attaining the optimum in some optimal ordering's realization."""
    cert = impropriety(g)
    if cert.value == 0:
        raise EmptyForProper("impropriety is 0; there is no basepoint")
    out: set[int] = set()
    for comp in connected_components(g):
        sub, kept = induced_subgraph(g, comp)
        search = OrderingSearch(sub, objective=IMPROPER)
        best, orders = search.minimize(collect_all=True)
        if best != cert.value:
            continue
        for order in orders:
            counts = nesting_counts(ranges(sub, order, search.cliques))
            out.update(kept[v] for v, c in enumerate(counts) if c == best)
    return sorted(out)


def local_components(g: Graph, b: int) -> list[list[int]]:
    """Components of ``g - b`` in original vertex ids."""
    h, kept = delete_vertex(g, b)
    return [[kept[v] for v in comp] for comp in connected_components(h)]


def _strictly_inside(rep: IntervalRepresentation, u: int, b: int) -> bool:
    lb, rb = rep.intervals[b]
    lu, ru = rep.intervals[u]
    return lb < lu and ru < rb


def side_components(rep: IntervalRepresentation, g: Graph, b: int) -> SideComponentView:
    rep.validate(g)
    comps = local_components(g, b)
    flagged = [i for i, comp in enumerate(comps)
               if any(not _strictly_inside(rep, u, b) for u in comp)]
    return SideComponentView(rep, b, comps, flagged)


def exterior_components(g: Graph, b: int) -> list[bool]:
    """Per local component of ``b``: can it be a side component in some representation?

    Exact over all representations: a member escapes the basepoint in some
    representation with a given clique ordering iff its clique range is not
    strictly nested in the basepoint's (shared boundary columns can always be
    resolved in its favour without changing adjacency). Components outside
    the basepoint's connected component never meet it and are exterior.
    """
    _require_interval(g)
    comps = local_components(g, b)
    flags = [False] * len(comps)
    host = next(c for c in connected_components(g) if b in c)
    host_set = set(host)
    for i, comp in enumerate(comps):
        if not host_set.issuperset(comp):
            flags[i] = True
    sub, kept = induced_subgraph(g, host)
    local_b = kept.index(b)
    owner = {}
    for i, comp in enumerate(comps):
        for u in comp:
            if u in host_set:
                owner[kept.index(u)] = i
    search = OrderingSearch(sub, objective=None)
    for order in search.orderings(mirror_quotient=True):
        if all(flags):
            break
        rng = ranges(sub, order, search.cliques)
        fb, lb = rng[local_b]
        for u, i in owner.items():
            if flags[i]:
                continue
            fu, lu = rng[u]
            if not (fb < fu and lu < lb):
                flags[i] = True
    return flags


def structure_report(g: Graph) -> StructureReport:
    witnesses = basepoint_witnesses(g)
    report = StructureReport(witnesses)
    for b in witnesses:
        report.local_components[b] = local_components(g, b)
        report.exterior_flags[b] = exterior_components(g, b)
    return report
