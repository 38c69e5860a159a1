"""Brute-force ground truth over endpoint sequences.

Enumerates left-to-right sequences of the 2n endpoint marks ``L_v``/``R_v``
directly from the adjacency relation, without using cliques at all, and
takes the minimum over every sequence whose intersection graph is the
input. Pruning is limited to adjacency violations, a symmetry rule for
twin vertices, and the containment counts already final. Single-threaded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import IMPROPER, PROPER, NotIntervalGraph
from .graph import Graph, GuardExceeded, bits

ORACLE_GUARD = 8


@dataclass
class OracleResult:
    value: int
    sequences: int  # complete valid endpoint sequences examined
    nodes: int


def _twin_predecessors(g: Graph) -> list[int]:
    # Mask of smaller-id twins of each vertex; a twin swap is an automorphism,
    # so twins may be opened in increasing id order without loss.
    adj = g.adj
    out = [0] * g.n
    for v in range(g.n):
        for u in range(v):
            if adj[u] & ~(1 << v) == adj[v] & ~(1 << u):
                out[v] |= 1 << u
    return out


def oracle_search(g: Graph, objective: str = IMPROPER, guard: int = ORACLE_GUARD) -> OracleResult:
    if g.n > guard:
        raise GuardExceeded(f"oracle limited to {guard} vertices, got {g.n}")
    n = g.n
    if n == 0:
        return OracleResult(0, 1, 0)
    adj = g.adj
    twins_before = _twin_predecessors(g)
    start = [-1] * n
    counts = [0] * n
    best = [None]
    tally = {"sequences": 0, "nodes": 0}
    improper = objective == IMPROPER
    if objective not in (IMPROPER, PROPER):
        raise ValueError(f"unknown objective {objective!r}")

    def rec(step: int, opened: int, closed: int) -> None:
        if closed == (1 << n) - 1:
            tally["sequences"] += 1
            value = max(counts)
            if best[0] is None or value < best[0]:
                best[0] = value
            return
        open_ = opened & ~closed
        # open a new interval
        for v in range(n):
            if opened >> v & 1:
                continue
            if twins_before[v] & ~opened:
                continue
            if open_ & ~adj[v] or closed & adj[v]:
                continue
            tally["nodes"] += 1
            start[v] = step
            rec(step + 1, opened | 1 << v, closed)
            start[v] = -1
        # close an open interval
        for v in bits(open_):
            if adj[v] & ~opened:
                continue  # a neighbour has not started yet
            tally["nodes"] += 1
            still_open = open_ & ~(1 << v)
            containers = [u for u in bits(still_open) if start[u] < start[v]]
            if improper:
                for u in containers:
                    counts[u] += 1
            else:
                counts[v] += len(containers)
            if best[0] is None or max(counts) < best[0]:
                rec(step + 1, opened, closed | 1 << v)
            if improper:
                for u in containers:
                    counts[u] -= 1
            else:
                counts[v] -= len(containers)

    rec(0, 0, 0)
    if best[0] is None:
        raise NotIntervalGraph("not an interval graph: no endpoint sequence realizes it")
    return OracleResult(best[0], tally["sequences"], tally["nodes"])


def oracle_impropriety(g: Graph, guard: int = ORACLE_GUARD) -> int:
    return oracle_search(g, IMPROPER, guard).value


def oracle_properness(g: Graph, guard: int = ORACLE_GUARD) -> int:
    return oracle_search(g, PROPER, guard).value
