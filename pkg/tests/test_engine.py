import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from improperlab.engine import (
    IMPROPER,
    PROPER,
    ContainmentProfile,
    IntervalRepresentation,
    NotIntervalGraph,
    OrderingSearch,
    SearchBudgetExceeded,
    consecutive_orderings,
    forced_nesting,
    impropriety,
    impropriety_value,
    interval_obstruction,
    is_interval_graph,
    nesting_counts,
    optimal_orderings,
    optimize,
    properness,
    ranges,
    realize,
    representation_impropriety,
)
from improperlab.families import gen_clique, gen_path, gen_qproper_obstruction, gen_star
from improperlab.graph import Graph, GuardExceeded, disjoint_union, maximal_cliques
from improperlab.oracle import oracle_impropriety, oracle_properness, oracle_search

from conftest import corpus

CLAW = gen_star(3)
P4 = gen_path(4)
K3 = gen_clique(3)
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
SUBDIVIDED_CLAW = Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)])


def brute_orderings(g):
    cliques = maximal_cliques(g)
    out = []
    for perm in itertools.permutations(range(len(cliques))):
        ok = True
        for v in range(g.n):
            pos = [i for i, c in enumerate(perm) if v in cliques[c]]
            if pos[-1] - pos[0] + 1 != len(pos):
                ok = False
        if ok:
            out.append(perm)
    return out


def brute_endpoint_optimum(g, objective=IMPROPER):
    """Minimum over every sequence of 2n distinct endpoints; no pruning at all."""
    best = None
    marks = [(v, side) for v in range(g.n) for side in (0, 1)]
    for perm in itertools.permutations(range(2 * g.n)):
        pos = [[0, 0] for _ in range(g.n)]
        for p, m in enumerate(perm):
            v, side = marks[m]
            pos[v][side] = p
        if any(lo > hi for lo, hi in pos):
            continue
        rep = IntervalRepresentation(tuple(map(tuple, pos)))
        if rep.intersection_graph() != g:
            continue
        value = representation_impropriety(rep, objective=objective).max_count
        best = value if best is None else min(best, value)
    return best


# --- recognition ---------------------------------------------------------------


def test_recognition_examples():
    assert not is_interval_graph(C4)
    assert interval_obstruction(C4) == "chordless cycle"
    assert is_interval_graph(P4)
    assert not is_interval_graph(SUBDIVIDED_CLAW)
    assert interval_obstruction(SUBDIVIDED_CLAW) == "asteroidal triple"


def test_subdivided_claw_has_no_endpoint_sequence():
    with pytest.raises(NotIntervalGraph):
        oracle_search(SUBDIVIDED_CLAW)


def test_recognition_agrees_with_oracle(graphs6):
    for g in graphs6:
        if g.n > 5:
            continue
        try:
            oracle_search(g)
            oracle_ok = True
        except NotIntervalGraph:
            oracle_ok = False
        assert is_interval_graph(g) == oracle_ok


def test_recognition_against_networkx_chordality(graphs6):
    import networkx as nx

    for g in graphs6:
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        if not nx.is_chordal(h):
            assert interval_obstruction(g) == "chordless cycle"


# --- orderings, ranges, nesting ----------------------------------------------


def test_orderings_examples():
    assert list(consecutive_orderings(K3)) == [(0,)]
    assert list(consecutive_orderings(P4)) == [(0, 1, 2)]
    assert len(list(consecutive_orderings(CLAW))) == 3
    assert len(list(consecutive_orderings(CLAW, mirror_quotient=False))) == 6
    assert list(consecutive_orderings(C4)) == []


def test_orderings_match_brute_force(interval6):
    for g in interval6:
        full = brute_orderings(g)
        assert sorted(consecutive_orderings(g, mirror_quotient=False)) == sorted(full)
        quotient = sorted(consecutive_orderings(g))
        expected = sorted({min(o, o[::-1]) for o in full})
        assert quotient == expected


def test_ranges_examples():
    assert ranges(P4, (0, 1, 2))[1] == (0, 1)
    for order in consecutive_orderings(CLAW, mirror_quotient=False):
        assert ranges(CLAW, order)[0] == (0, 2)
    assert ranges(K3, (0,)) == [(0, 0)] * 3


def test_ranges_isolated_vertex_gets_own_column():
    g = Graph.from_edges(3, [(0, 1)])
    cliques = [(0, 1)]
    assert ranges(g, (0,), cliques) == [(0, 0), (0, 0), (1, 1)]


def test_forced_nesting_examples():
    for order in consecutive_orderings(CLAW):
        prof = forced_nesting(CLAW, order)
        assert prof.contained_count[0] == 1
        assert prof.max_count == 1
        assert sorted(prof.contained_count[1:]) == [0, 0, 0]
    prof = forced_nesting(gen_clique(5), (0,))
    assert prof.contained_count == (0,) * 5
    star5 = gen_star(5)
    for order in consecutive_orderings(star5):
        assert forced_nesting(star5, order).contained_count[0] == 3


def test_nesting_counts_dual():
    rng = [(0, 3), (1, 2), (1, 1)]
    assert nesting_counts(rng) == [2, 0, 0]
    assert nesting_counts(rng, PROPER) == [0, 1, 1]


# --- realization -----------------------------------------------------------------


def test_realize_k2():
    g = gen_clique(2)
    rep = realize(g, (0,))
    rep.validate(g)
    (a, b), (c, d) = rep.intervals
    assert a < c < b < d
    assert representation_impropriety(rep).max_count == 0


def test_realize_claw():
    order = (0, 1, 2)
    rep = realize(CLAW, order)
    rep.validate(CLAW)
    lo, hi = rep.intervals[0]
    inside = [v for v, (a, b) in enumerate(rep.intervals) if lo < a and b < hi]
    # cliques are (0,1), (0,2), (0,3); the middle one holds leaf 2
    assert inside == [2]
    prof = representation_impropriety(rep)
    assert prof.max_count == 1 == oracle_impropriety(CLAW)
    assert prof.contained_count[0] == 1


def test_realization_soundness(interval6):
    for g in interval6:
        cliques = maximal_cliques(g)
        for order in consecutive_orderings(g, mirror_quotient=False):
            rep = realize(g, order, cliques)
            rep.validate(g)
            for obj in (IMPROPER, PROPER):
                got = representation_impropriety(rep, objective=obj)
                assert got == forced_nesting(g, order, cliques, obj)


def test_realize_yield_to_is_valid(interval6):
    for g in interval6[:60]:
        cliques = maximal_cliques(g)
        for order in consecutive_orderings(g):
            for v in range(g.n):
                realize(g, order, cliques, yield_to=v).validate(g)


# --- representations -------------------------------------------------------------


def test_representation_examples():
    prof = representation_impropriety(IntervalRepresentation(((0, 3), (1, 2))))
    assert prof.contained_count == (1, 0) and prof.argmax == 0
    prof = representation_impropriety(IntervalRepresentation(((0, 1), (2, 3))))
    assert prof.contained_count == (0, 0)


def test_representation_errors():
    with pytest.raises(ValueError):
        IntervalRepresentation(((0, 2), (2, 3))).validate()
    with pytest.raises(ValueError):
        IntervalRepresentation(((3, 1),)).validate()
    with pytest.raises(ValueError):
        IntervalRepresentation(((0, 1), (2, 3))).validate(gen_clique(2))
    with pytest.raises(ValueError):
        representation_impropriety(IntervalRepresentation(((0, 1), (0, 3))))


def test_representation_json_round_trip():
    rep = realize(CLAW, (0, 1, 2))
    data = json.loads(rep.dumps())
    assert IntervalRepresentation.from_json(data) == rep
    with pytest.raises(ValueError):
        IntervalRepresentation.from_json({"n": 3, "intervals": [[0, 1]]})


# Figure 1 drawn to integer coordinates (x100), ties in the drawing broken by
# a unit stagger that keeps every overlap and adds no containment.
FIG1 = {
    "basepoint": (-200, 200),
    "left_k3": [(-220, -145), (-219, -144), (-218, -143)],
    "inner_k3": [(-135, -60), (-134, -59), (-133, -58)],
    "inner_path": [(65, 150), (-20, 55), (-19, 80), (90, 151)],
    "right_p2": [(170, 245), (210, 285)],
}


def fig1_representation():
    intervals = [FIG1["basepoint"]]
    groups = {}
    for name in ("left_k3", "inner_k3", "inner_path", "right_p2"):
        groups[name] = list(range(len(intervals), len(intervals) + len(FIG1[name])))
        intervals.extend(FIG1[name])
    return IntervalRepresentation(tuple(intervals)), groups


def test_figure1_basepoint_count():
    rep, groups = fig1_representation()
    prof = representation_impropriety(rep)
    # counted by hand: three inner triangle intervals and four inner path intervals
    assert prof.contained_count[0] == 7
    assert prof.max_count == 7 and prof.argmax == 0


# --- optimisation ----------------------------------------------------------------


def test_impropriety_examples():
    assert impropriety(CLAW).value == 1
    for k in range(1, 7):
        assert impropriety(gen_clique(k)).value == 0
        assert impropriety(gen_path(k)).value == 0
    with pytest.raises(NotIntervalGraph):
        impropriety(C4)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_star_by_oracle(k):
    assert oracle_impropriety(gen_star(k)) == k - 2
    assert impropriety(gen_star(k)).value == k - 2


@pytest.mark.parametrize("k", [6, 7])
def test_star_by_engine(k):
    assert impropriety(gen_star(k)).value == k - 2


def test_properness_examples():
    assert properness(CLAW).value == 1
    assert oracle_properness(CLAW) == 1
    assert properness(gen_clique(4)).value == 0


@pytest.mark.parametrize("q", [0, 1, 2])
def test_qproper_obstruction_by_oracle(q):
    g = gen_qproper_obstruction(q)
    assert oracle_properness(g) == q + 1
    assert properness(g).value == q + 1


def test_qproper_obstruction_engine_q3():
    assert properness(gen_qproper_obstruction(3)).value == 4


def test_certificate_is_consistent(interval6):
    for g in interval6:
        for obj in (IMPROPER, PROPER):
            cert = optimize(g, obj)
            prof = representation_impropriety(cert.witness, g, obj)
            assert prof.max_count == cert.value
            assert prof.argmax == cert.basepoint_witness
            assert cert.to_json()["value"] == cert.value


def test_empty_graph_value():
    assert impropriety_value(Graph.from_edges(0, [])) == 0


def test_optimal_orderings_include_mirrors():
    best, orders = optimal_orderings(CLAW)
    assert best == 1 and len(orders) == 6
    with pytest.raises(ValueError):
        optimal_orderings(disjoint_union(K3, K3))


def test_time_budget_exhaustion():
    search = OrderingSearch(gen_star(7), objective=IMPROPER, time_budget=0.0)
    with pytest.raises(SearchBudgetExceeded) as err:
        search.minimize(collect_all=True)
    assert "nodes" in err.value.stats


# --- oracle ------------------------------------------------------------------


def test_oracle_examples():
    assert oracle_impropriety(CLAW) == 1
    assert oracle_impropriety(gen_clique(4)) == 0
    with pytest.raises(NotIntervalGraph):
        oracle_impropriety(C4)
    with pytest.raises(GuardExceeded):
        oracle_impropriety(gen_path(9))
    assert oracle_impropriety(gen_path(9), guard=9) == 0


def test_oracle_against_unpruned_permutations():
    # the oracle's own pruning is checked against plain enumeration
    for key, g in corpus(4):
        expected = brute_endpoint_optimum(g)
        if expected is None:
            with pytest.raises(NotIntervalGraph):
                oracle_search(g)
            continue
        assert oracle_impropriety(g) == expected
        assert oracle_properness(g) == brute_endpoint_optimum(g, PROPER)


def test_oracle_against_unpruned_permutations_k14():
    g = gen_star(4)
    assert oracle_impropriety(g) == brute_endpoint_optimum(g) == 2


def test_engine_matches_oracle_7_vertices(interval7):
    for g in interval7:
        if g.n == 7:
            assert impropriety(g).value == oracle_impropriety(g, guard=7)


# --- properties ------------------------------------------------------------


@st.composite
def interval_reps(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    marks = draw(st.permutations([(v, s) for v in range(n) for s in (0, 1)]))
    pos = [[None, None] for _ in range(n)]
    for p, (v, s) in enumerate(marks):
        pos[v][s] = p
    return IntervalRepresentation(tuple((min(a, b), max(a, b)) for a, b in pos))


@given(interval_reps())
def test_engine_bounded_by_any_representation(rep):
    g = rep.intersection_graph()
    for obj in (IMPROPER, PROPER):
        value = optimize(g, obj).value
        assert value <= representation_impropriety(rep, objective=obj).max_count


@given(interval_reps(max_n=8), st.randoms(use_true_random=False))
def test_impropriety_relabel_invariant(rep, rnd):
    g = rep.intersection_graph()
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert impropriety(g.relabel(perm)).value == impropriety(g).value


def test_containment_profile_ties():
    prof = ContainmentProfile.from_counts([1, 2, 2])
    assert prof.argmax == 1 and prof.max_count == 2
    assert ContainmentProfile.from_counts([]).argmax is None


def test_seeded_relabel_invariance_small():
    rng = random.Random(7)
    for key, g in corpus(5, interval=True):
        value = impropriety(g).value
        for _ in range(5):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert impropriety(g.relabel(perm)).value == value
