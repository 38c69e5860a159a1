"""Simple undirected graphs on dense vertex ids, plus interchange formats.

Vertices are ``0..n-1``. Adjacency is kept as integer bitmasks, which is
what every search in this package iterates over.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class GraphFormatError(ValueError):
    """Raised for malformed edge-list or graph6 input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GuardExceeded(ValueError):
    """An operation was asked to work beyond its desk-scale size guard."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add((min(u, v), max(u, v)))
        return cls(n, frozenset(norm))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int]) -> Graph:
        n = len(adj)
        return cls(n, frozenset((u, v) for u in range(n) for v in bits(adj[u]) if u < v))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def popcount(x: int) -> int:
    return x.bit_count()


# ---------------------------------------------------------------------------
# construction helpers


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vertices``, renumbered in increasing order.

    Returns the subgraph and ``kept`` with ``kept[new] = old``.
    """
    kept = sorted(set(vertices))
    index = {old: new for new, old in enumerate(kept)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph.from_edges(len(kept), edges), kept


def delete_vertex(g: Graph, v: int) -> tuple[Graph, list[int]]:
    """Remove ``v``; remaining vertices keep their relative order."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for n={g.n}")
    return induced_subgraph(g, (u for u in range(g.n) if u != v))


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the components, each sorted, ordered by minimum member."""
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# ---------------------------------------------------------------------------
# maximal cliques


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All inclusion-maximal cliques (Bron-Kerbosch with pivoting).

    Each clique is a sorted tuple; the list is sorted lexicographically.
    An isolated vertex forms the singleton clique ``(v,)``.
    """
    adj = g.adj
    found: list[tuple[int, ...]] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(tuple(bits(r)))
            return
        # pivot maximizing |P ∩ N(u)|
        pivot = max(bits(p | x), key=lambda u: popcount(p & adj[u]))
        for v in bits(p & ~adj[pivot]):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.all_mask, 0)
    return sorted(found)


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1:])


# ---------------------------------------------------------------------------
# canonical form

CANONICAL_GUARD = 12


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    # Colour refinement; cell order is derived from invariants only.
    while True:
        cell_masks = [mask_of(c) for c in cells]
        new_cells: list[list[int]] = []
        for idx, cell in enumerate(cells):
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(popcount(adj[v] & cm) for cm in cell_masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _upper_bits(adj: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    word = 0
    for j in range(1, n):
        aj = adj[order[j]]
        for i in range(j):
            word = (word << 1) | (aj >> order[i] & 1)
    return word


def canonical_labeling(g: Graph) -> list[int]:
    """An ordering of the vertices whose adjacency string is canonical.

    The returned ``order[i]`` is the original vertex placed at position i.
    Search is individualisation-refinement over an invariant partition,
    minimising the upper-triangle adjacency bit string; twins inside a cell
    are tried once, since swapping them is an automorphism.
    """
    if g.n > CANONICAL_GUARD:
        raise GuardExceeded(f"canonical form limited to {CANONICAL_GUARD} vertices, got {g.n}")
    adj = g.adj
    if g.n == 0:
        return []
    best: list = [None, None]

    def search(cells: list[list[int]]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            word = _upper_bits(adj, order)
            if best[0] is None or word < best[0]:
                best[0], best[1] = word, order
            return
        cell = cells[target]
        tried_classes: list[int] = []
        for v in cell:
            if any(_twins(adj, v, u) for u in tried_classes):
                continue
            tried_classes.append(v)
            rest = [u for u in cell if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(adj, split))

    search(_refine(adj, [list(range(g.n))]))
    return best[1]


def _twins(adj: Sequence[int], u: int, v: int) -> bool:
    mu = adj[u] & ~(1 << v)
    mv = adj[v] & ~(1 << u)
    return mu == mv


def canonical_form(g: Graph) -> bytes:
    """Isomorphism-invariant key: vertex count byte then packed adjacency bits."""
    order = canonical_labeling(g)
    word = _upper_bits(g.adj, order)
    nbits = g.n * (g.n - 1) // 2
    nbytes = (nbits + 7) // 8
    return bytes([g.n]) + word.to_bytes(nbytes, "big") if nbytes else bytes([g.n])


def canonical_graph(g: Graph) -> Graph:
    """The canonical relabelling of ``g`` (isomorphic graphs map to equal graphs)."""
    order = canonical_labeling(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def canonical_key(g: Graph) -> str:
    return canonical_form(g).hex()


# ---------------------------------------------------------------------------
# edge list


def from_edge_list(text: str) -> Graph:
    """Parse the ``p n m`` / ``e u v`` edge-list format (``c`` lines are comments)."""
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("header must be 'p <n> <m>'", lineno)
            try:
                n, m = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer header field", lineno) from None
            if n < 0 or m < 0:
                raise GraphFormatError("negative header field", lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("non-integer vertex id", lineno) from None
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range in edge ({u}, {v})", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p' header")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph6 (short form, n <= 62)


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GuardExceeded("graph6 short form supports n <= 62")
    out = [chr(g.n + 63)]
    bitlist = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    while len(bitlist) % 6:
        bitlist.append(0)
    for k in range(0, len(bitlist), 6):
        val = 0
        for b in bitlist[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def from_graph6(line: str) -> Graph:
    data = line.strip()
    if data.startswith(">>graph6<<"):
        data = data[10:]
    if not data:
        raise GraphFormatError("empty graph6 string")
    n = ord(data[0]) - 63
    if not 0 <= n <= 62:
        raise GraphFormatError(f"bad graph6 header byte {data[0]!r}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = data[1:]
    if len(payload) < need:
        raise GraphFormatError(f"truncated graph6 payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise GraphFormatError("trailing bytes after graph6 payload")
    stream = []
    for ch in payload:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise GraphFormatError(f"bad graph6 data byte {ch!r}")
        stream.extend((val >> s) & 1 for s in range(5, -1, -1))
    if any(stream[nbits:]):
        raise GraphFormatError("nonzero padding bits in graph6 payload")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def parse_graph_text(text: str) -> Graph:
    """Accept either the edge-list format or a single graph6 line."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p ") or line == "p":
            return from_edge_list(text)
        return from_graph6(line)
    raise GraphFormatError("empty graph input")


# ---------------------------------------------------------------------------
# DOT


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
