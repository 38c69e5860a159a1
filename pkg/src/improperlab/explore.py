"""Exhaustive explorer with a resumable JSONL store.

One self-contained record per graph. Records are computed in (n, key)
order and appended as they finish; on completion the store is rewritten in
that same order, so an interrupted run resumed later ends byte-identical to
an uninterrupted one.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Iterator

from .corpus import graphs_by_order
from .engine import interval_obstruction
from .graph import Graph, canonical_key, to_graph6
from .spectrum import removal_spectrum

log = logging.getLogger(__name__)

CHUNK = 64


def spectrum_record(g: Graph, key: str | None = None) -> dict:
    key = key or canonical_key(g)
    reason = interval_obstruction(g)
    if reason is not None:
        return {"g6": to_graph6(g), "key": key, "n": g.n, "interval": False, "imp": None,
                "per_vertex": [], "spectrum": [], "critical": None,
                "notes": [f"not an interval graph: {reason}"]}
    report = removal_spectrum(g)
    report.check_invariants()
    return {"g6": to_graph6(g), "key": key, "n": g.n, "interval": True,
            "imp": report.impropriety, "per_vertex": [list(x) for x in report.per_vertex],
            "spectrum": report.spectrum, "critical": report.critical, "notes": report.notes}


def _record_task(item: tuple[str, str]) -> dict:
    key, g6 = item
    from .graph import from_graph6

    return spectrum_record(from_graph6(g6), key)


def dump_record(record: dict) -> str:
    return json.dumps(record, separators=(", ", ": "))


def load_store(path: Path) -> tuple[dict[str, dict], list[tuple[int, str]]]:
    """Return valid records by key and ``(byte offset, error)`` for corrupt lines."""
    records: dict[str, dict] = {}
    errors: list[tuple[int, str]] = []
    if not path.exists():
        return records, errors
    offset = 0
    with path.open("rb") as fh:
        for raw in fh:
            line = raw.decode("utf-8", errors="replace").strip()
            if line:
                try:
                    rec = json.loads(line)
                    if not raw.endswith(b"\n"):
                        raise ValueError("unterminated final line")
                    records[rec["key"]] = rec
                except (ValueError, KeyError, TypeError) as exc:
                    errors.append((offset, str(exc)))
                    log.warning("corrupt store line at byte %d: %s", offset, exc)
            offset += len(raw)
    return records, errors


def _sort_key(rec: dict) -> tuple[int, str]:
    return rec["n"], rec["key"]


def finalize_store(path: Path, records: Iterable[dict]) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with tmp.open("w", encoding="utf-8", newline="\n") as fh:
        for rec in sorted(records, key=_sort_key):
            fh.write(dump_record(rec) + "\n")
    os.replace(tmp, path)


def explore(max_n: int, store: str | os.PathLike, corpus: Iterable[tuple[str, Graph]] | None = None,
            connected: bool = True, interval_only: bool = False, workers: int = 1) -> Iterator[dict]:
    """Compute spectrum records for every graph not yet in ``store``.

    The built-in corpus is every connected graph on <= ``max_n`` vertices
    (only interval ones with ``interval_only``). Yields new records.
    """
    if max_n > 9:
        raise ValueError("built-in exploration is limited to n <= 9")
    path = Path(store)
    path.parent.mkdir(parents=True, exist_ok=True)
    done, _ = load_store(path)
    if corpus is None:
        corpus = graphs_by_order(max_n, connected=connected, interval=interval_only)
    todo = sorted(((g.n, key, to_graph6(g)) for key, g in corpus if key not in done))
    # rewrite first so that the appended tail starts from a clean file
    finalize_store(path, done.values())
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        with path.open("a", encoding="utf-8", newline="\n") as fh:
            for start in range(0, len(todo), CHUNK):
                chunk = [(key, g6) for _, key, g6 in todo[start:start + CHUNK]]
                results = list(pool.map(_record_task, chunk)) if pool else [_record_task(x) for x in chunk]
                for rec in results:
                    fh.write(dump_record(rec) + "\n")
                    done[rec["key"]] = rec
                    yield rec
                fh.flush()
    finally:
        if pool:
            pool.shutdown()
    finalize_store(path, done.values())


def run_explore(max_n: int, store, **kw) -> int:
    return sum(1 for _ in explore(max_n, store, **kw))


def conjecture_stats(store: str | os.PathLike) -> dict[int, dict]:
    """Largest removal spectrum seen per impropriety value."""
    records, _ = load_store(Path(store))
    stats: dict[int, dict] = {}
    for rec in sorted(records.values(), key=_sort_key):
        if not rec["interval"]:
            continue
        entry = stats.setdefault(rec["imp"], {"graphs": 0, "critical": 0,
                                              "max_spectrum_size": 0, "example": None})
        entry["graphs"] += 1
        entry["critical"] += bool(rec["critical"])
        size = len(rec["spectrum"])
        if size > entry["max_spectrum_size"]:
            entry["max_spectrum_size"] = size
            entry["example"] = rec["g6"]
    return dict(sorted(stats.items()))
