"""Generators for the construction families and a few primitive graphs.

Each family generator returns a :class:`FamilyInstance`. Its ``expected_*``
fields are the values the construction is claimed to produce; nothing in
this package branches on them, they exist to be checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph


@dataclass(frozen=True)
class FamilyInstance:
    graph: Graph
    designated_vertex: int
    expected_impropriety: int
    expected_drop_value: int
    family_tag: str
    params: dict
    roles: dict = field(default_factory=dict)  # role name -> list of vertex ids
    notes: tuple[str, ...] = ()

    def metadata(self) -> dict:
        return {
            "family_tag": self.family_tag,
            "params": dict(self.params),
            "n": self.graph.n,
            "m": self.graph.m,
            "designated_vertex": self.designated_vertex,
            "expected_imp": self.expected_impropriety,
            "expected_drop": self.expected_drop_value,
            "roles": {k: list(v) for k, v in self.roles.items()},
            "notes": list(self.notes),
        }


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.roles: dict[str, list[int]] = {}

    def add(self, role: str, count: int = 1) -> list[int]:
        ids = list(range(self.n, self.n + count))
        self.n += count
        self.roles[role] = ids
        return ids

    def clique(self, vs) -> None:
        self.edges.extend(combinations(vs, 2))

    def join(self, left, right) -> None:
        self.edges.extend((u, v) for u in left for v in right)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def gen_fig2(p: int, n: int) -> FamilyInstance:
    """Basepoint with a pendant P2 and a triangle carrying K_n, plus a nested K_{p-n}.

    The removal vertex ``y1`` is the one joining the P2 to the basepoint.
    """
    _check(p >= 1, "fig2 needs p >= 1")
    _check(0 <= n <= p - 1, "fig2 needs 0 <= n <= p-1")
    b = _Builder()
    (base,) = b.add("basepoint")
    x1, x2, x3 = b.add("triangle", 3)
    kn = b.add("K_n", n)
    kpn = b.add("K_p-n", p - n)
    y1, y2 = b.add("P2", 2)
    b.clique([x1, x2, x3])
    b.join([x2, x3], [base])
    b.clique(kn)
    b.join(kn, [x3, base])
    b.clique(kpn)
    b.join(kpn, [base])
    b.edges += [(base, y1), (y1, y2)]
    return FamilyInstance(b.graph(), y1, p, n, "fig2", {"p": p, "n": n}, b.roles)


def gen_fig3(p: int, n: int) -> FamilyInstance:
    """Two stacked long intervals A, B over cliques K_{p-n}, K_{p-n}, K_n and a pendant D on A."""
    _check(p >= 2, "fig3 needs p >= 2")
    _check(0 <= n <= p // 2, "fig3 needs 0 <= n <= floor(p/2)")
    b = _Builder()
    (a,) = b.add("basepoint")
    (bb,) = b.add("second_long")
    q1 = b.add("Q1", p - n)
    q2 = b.add("Q2", p - n)
    q3 = b.add("Q3", n)
    (d,) = b.add("D")
    b.edges.append((a, bb))
    for q in (q1, q2, q3):
        b.clique(q)
        b.join(q, [a, bb])
    b.edges.append((a, d))
    return FamilyInstance(b.graph(), d, p, n, "fig3", {"p": p, "n": n}, b.roles)


def fig4_graph(p: int, n: int, s: int) -> tuple[Graph, int, dict]:
    b = _Builder()
    (a,) = b.add("basepoint")
    (d,) = b.add("D")
    q1 = b.add("Q1", p - n)
    q2 = b.add("Q2", p - n)
    singles = b.add("S", s)
    b.edges.append((a, d))
    for q in (q1, q2):
        b.clique(q)
        b.join(q, [a, d])
    b.join(singles, [a])
    return b.graph(), d, b.roles


def gen_fig4(p: int, n: int, s: int | None = None) -> FamilyInstance:
    """Long interval A with two K_{p-n} under a shorter D and ``s`` pendant singletons.

    Without ``s`` the singleton count is calibrated: the smallest s in 1..p
    for which the engine gives impropriety p. The calibration outcome and the
    measured value after deleting D are recorded in ``notes``/``params``.
    """
    from .engine import impropriety_value  # engine is only needed for calibration

    _check(p >= 2, "fig4 needs p >= 2")
    _check(0 <= n <= p - 1, "fig4 needs 0 <= n <= p-1")
    notes = []
    params = {"p": p, "n": n}
    if s is None:
        chosen = None
        for trial in range(1, p + 1):
            g, _, _ = fig4_graph(p, n, trial)
            if impropriety_value(g) == p:
                chosen = trial
                break
        if chosen is None:
            chosen = p
            notes.append(f"calibration failed: no s in 1..{p} gives impropriety {p}; using s={p}")
            params["calibrated"] = False
        else:
            notes.append(f"calibrated s={chosen}")
            params["calibrated"] = True
        s = chosen
    else:
        _check(s >= 0, "fig4 needs s >= 0")
        params["calibrated"] = None
    params["s"] = s
    g, d, roles = fig4_graph(p, n, s)
    if params["calibrated"] is not None:
        from .graph import delete_vertex

        after = impropriety_value(delete_vertex(g, d)[0])
        params["drop_measured"] = after
        notes.append(f"impropriety after deleting D = {after} (claimed {n})")
    return FamilyInstance(g, d, p, n, "fig4", params, roles, tuple(notes))


def gen_fig5(p: int) -> FamilyInstance:
    """Three pendant triangles on a long interval A, the m1/m2/D gadget and K_{p-6}."""
    _check(p >= 8, "fig5 needs p >= 8")
    b = _Builder()
    (a,) = b.add("basepoint")
    tri = [b.add(name, 3) for name in ("L_out", "L_in", "R_out")]
    m1, m2, d = b.add("m1")[0], b.add("m2")[0], b.add("D")[0]
    q = b.add("Q", p - 6)
    for t in tri:
        b.clique(t)
        b.join(t, [a])
    b.edges += [(a, m1), (a, m2), (a, d), (m1, m2), (m1, d)]
    b.clique(q)
    b.join(q, [a, m1])
    return FamilyInstance(b.graph(), d, p, 7, "fig5", {"p": p}, b.roles)


def gen_qproper_obstruction(q: int, literal: bool = False) -> Graph:
    """Minimal interval graph with properness exactly q+1.

    A claw whose centre is blown up into K_{q+1}: every clique vertex sees
    the three pairwise non-adjacent leaves, so the middle leaf lies inside
    all q+1 of them. Vertices: clique ``0..q``, then leaves.

    ``literal=True`` instead attaches K_{q+1} in place of one leaf of a claw
    (centre 0, leaves 1 and 2, clique after). That graph has properness 1
    for every q.
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    b = _Builder()
    if literal:
        (c,) = b.add("center")
        leaves = b.add("leaves", 2)
        k = b.add("clique", q + 1)
        b.join(leaves, [c])
        b.clique(k)
        b.join(k, [c])
    else:
        k = b.add("clique", q + 1)
        leaves = b.add("leaves", 3)
        b.clique(k)
        b.join(k, leaves)
    return b.graph()


def gen_clique(k: int) -> Graph:
    _check(k >= 1, "k must be >= 1")
    return Graph.from_edges(k, combinations(range(k), 2))


def gen_path(k: int) -> Graph:
    _check(k >= 1, "k must be >= 1")
    return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))


def gen_star(k: int) -> Graph:
    """K_{1,k}: centre 0 and leaves 1..k."""
    _check(k >= 1, "k must be >= 1")
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


FAMILIES = ("fig2", "fig3", "fig4", "fig5")


def generate(tag: str, **params) -> FamilyInstance:
    if tag == "fig2":
        return gen_fig2(params["p"], params["n"])
    if tag == "fig3":
        return gen_fig3(params["p"], params["n"])
    if tag == "fig4":
        return gen_fig4(params["p"], params["n"], params.get("s"))
    if tag == "fig5":
        return gen_fig5(params["p"])
    raise ValueError(f"unknown family {tag!r}")


def default_grid(tag: str, pmax: int = 6, pmin: int = 2) -> list[dict]:
    if tag == "fig2":
        return [{"p": p, "n": n} for p in range(pmin, pmax + 1) for n in range(p)]
    if tag == "fig3":
        return [{"p": p, "n": n} for p in range(max(pmin, 2), pmax + 1) for n in range(p // 2 + 1)]
    if tag == "fig4":
        return [{"p": p, "n": n} for p in range(max(pmin, 2), pmax + 1) for n in range(p)]
    if tag == "fig5":
        return [{"p": p} for p in range(max(pmin, 8), pmax + 1)]
    raise ValueError(f"unknown family {tag!r}")
