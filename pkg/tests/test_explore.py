import json

import pytest

from improperlab.explore import (
    conjecture_stats,
    explore,
    finalize_store,
    load_store,
    run_explore,
    spectrum_record,
)
from improperlab.families import gen_star
from improperlab.graph import Graph, canonical_form, delete_vertex, from_graph6
from improperlab.oracle import oracle_impropriety


def interrupted_run(max_n, store, stop_after, cut_bytes):
    gen = explore(max_n, store)
    for _ in range(stop_after):
        next(gen)
    gen.close()
    data = store.read_bytes()
    store.write_bytes(data[:len(data) - cut_bytes])


def test_store_records_validate_against_oracle(tmp_path):
    store = tmp_path / "s.jsonl"
    assert run_explore(4, store) == 1 + 1 + 2 + 6
    records, errors = load_store(store)
    assert not errors
    for rec in records.values():
        g = from_graph6(rec["g6"])
        if not rec["interval"]:
            assert rec["notes"][0].startswith("not an interval graph")
            continue
        assert rec["imp"] == oracle_impropriety(g)
        for v, value in rec["per_vertex"]:
            h, _ = delete_vertex(g, v)
            assert value == (oracle_impropriety(h) if h.n else 0)
        assert rec["spectrum"] == sorted({x for _, x in rec["per_vertex"]})
        if rec["critical"]:
            assert set(rec["spectrum"]) <= set(range(rec["imp"]))


def test_store_is_sorted_and_rerun_is_noop(tmp_path):
    store = tmp_path / "s.jsonl"
    run_explore(5, store)
    first = store.read_bytes()
    lines = [json.loads(x) for x in first.decode().splitlines()]
    assert [(r["n"], r["key"]) for r in lines] == sorted((r["n"], r["key"]) for r in lines)
    assert run_explore(5, store) == 0
    assert store.read_bytes() == first


@pytest.mark.parametrize("stop_after, cut", [(5, 7), (40, 1), (64, 0), (70, 30)])
def test_resume_after_truncation_is_byte_identical(tmp_path, stop_after, cut):
    ref = tmp_path / "ref.jsonl"
    run_explore(6, ref)
    store = tmp_path / "run.jsonl"
    interrupted_run(6, store, stop_after, cut)
    run_explore(6, store)
    assert store.read_bytes() == ref.read_bytes()


def test_corrupt_line_reported_with_offset(tmp_path):
    store = tmp_path / "s.jsonl"
    run_explore(3, store)
    lines = store.read_bytes().splitlines(keepends=True)
    bad = b"{not json\n"
    store.write_bytes(lines[0] + bad + b"".join(lines[1:]))
    records, errors = load_store(store)
    assert errors and errors[0][0] == len(lines[0])
    assert len(records) == len(lines)
    ref = tmp_path / "ref.jsonl"
    run_explore(3, ref)
    run_explore(3, store)
    assert store.read_bytes() == ref.read_bytes()


def test_unterminated_tail_is_an_error(tmp_path):
    store = tmp_path / "s.jsonl"
    store.write_bytes(b'{"key": "x", "n": 1}')
    records, errors = load_store(store)
    assert not records and errors[0][0] == 0


def test_workers_give_identical_store(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_explore(5, a, workers=1)
    run_explore(5, b, workers=3)
    assert a.read_bytes() == b.read_bytes()


def test_external_corpus_and_interval_only(tmp_path):
    claw = gen_star(3)
    store = tmp_path / "s.jsonl"
    assert run_explore(4, store, corpus=[("claw", claw)]) == 1
    records, _ = load_store(store)
    assert records["claw"]["imp"] == 1
    only = tmp_path / "i.jsonl"
    run_explore(5, only, interval_only=True)
    assert all(r["interval"] for r in load_store(only)[0].values())


def test_max_n_guard(tmp_path):
    with pytest.raises(ValueError):
        run_explore(10, tmp_path / "s.jsonl")


def test_conjecture_stats(tmp_path):
    store = tmp_path / "s.jsonl"
    run_explore(5, store)
    stats = conjecture_stats(store)
    records = [r for r in load_store(store)[0].values() if r["interval"]]
    assert set(stats) == {r["imp"] for r in records}
    for imp, entry in stats.items():
        group = [r for r in records if r["imp"] == imp]
        assert entry["graphs"] == len(group)
        assert entry["critical"] == sum(bool(r["critical"]) for r in group)
        assert entry["max_spectrum_size"] == max(len(r["spectrum"]) for r in group)
    # K_{1,4} is the only connected graph on <= 5 vertices with value 2
    assert stats[2]["graphs"] == 1
    assert canonical_form(from_graph6(stats[2]["example"])) == canonical_form(gen_star(4))


def test_finalize_store_sorts(tmp_path):
    store = tmp_path / "s.jsonl"
    recs = [spectrum_record(Graph.from_edges(2, [(0, 1)])), spectrum_record(Graph.from_edges(1, []))]
    finalize_store(store, recs)
    assert [json.loads(x)["n"] for x in store.read_text().splitlines()] == [1, 2]
