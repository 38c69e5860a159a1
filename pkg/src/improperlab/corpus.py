"""Graphs up to isomorphism by vertex augmentation and canonical dedup.

Every graph on n vertices arises from some graph on n-1 vertices by adding
a vertex with a chosen neighbourhood; connected graphs always have a
non-cut vertex, and interval graphs are closed under vertex deletion, so
each restricted class can be grown from its own smaller members.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .engine import is_interval_graph
from .graph import Graph, canonical_graph, canonical_key, read_graph6_lines


def _grow(level: dict[str, Graph], connected: bool, interval: bool) -> dict[str, Graph]:
    nxt: dict[str, Graph] = {}
    for g in level.values():
        n = g.n
        for nbrs in range(0 if not connected else 1, 1 << n):
            adj = list(g.adj) + [nbrs]
            for u in range(n):
                if nbrs >> u & 1:
                    adj[u] |= 1 << n
            h = Graph.from_adjacency(adj)
            if interval and not is_interval_graph(h):
                continue
            key = canonical_key(h)
            if key not in nxt:
                nxt[key] = canonical_graph(h)
    return nxt


def graphs_by_order(max_n: int, connected: bool = False,
                    interval: bool = False, min_n: int = 1) -> Iterator[tuple[str, Graph]]:
    """Yield ``(key, graph)`` for every isomorphism class, by n then key.

    Graphs are yielded in canonical labelling.
    """
    if max_n < 1:
        return
    k1 = Graph(1, frozenset())
    level = {canonical_key(k1): k1}
    for n in range(1, max_n + 1):
        if n > 1:
            level = _grow(level, connected, interval)
        if n >= min_n:
            for key in sorted(level):
                yield key, level[key]


def all_graphs(max_n: int, **kw) -> list[Graph]:
    return [g for _, g in graphs_by_order(max_n, **kw)]


def interval_graphs(max_n: int, connected: bool = False) -> list[Graph]:
    return all_graphs(max_n, connected=connected, interval=True)


def graph6_corpus(lines: Iterable[str]) -> Iterator[tuple[str, Graph]]:
    """Ingest a graph6 stream, deduplicating by canonical key (first occurrence wins)."""
    seen = set()
    for g in read_graph6_lines(lines):
        key = canonical_key(g)
        if key in seen:
            continue
        seen.add(key)
        yield key, g
