"""Census of knotted cycles in the canonical book representation.

Hamiltonian cycles are generated directly in canonical form (vertex 1
first, second vertex smaller than the last), so each of the (n-1)!/2
undirected cycles appears exactly once.  The stream is cut into blocks by
the second and third vertices; blocks are the unit of sharding and of
checkpointing.
"""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb, factorial
from pathlib import Path
from typing import Iterator, Sequence

from .diagram import Cycle, Diagram, cycle_code, reduce_code
from .errors import BookKnotsError, CapacityError, CheckpointError, DomainError
from .invariants import BRACKET_THRESHOLD, KNOT_NAMES, UNKNOT, KnotName, identify

log = logging.getLogger(__name__)

MAX_N = 12
ALL_CYCLES_MAX_N = 9
CHECKPOINT_FORMAT = "bookknots-census-checkpoint"
CHECKPOINT_VERSION = 1


class UnidentifiedKnotError(BookKnotsError):
    """Raised in strict mode when some cycle matches no reference fingerprint."""

    def __init__(self, record: "CensusRecord"):
        super().__init__(f"n={record.n}: {sum(record.unidentified.values())} cycles with unidentified fingerprints")
        self.record = record


# --------------------------------------------------------------------------
# enumeration


def blocks(n: int) -> list[tuple[int, int]]:
    """Block keys (second vertex, third vertex) in lexicographic order."""
    if n == 3:
        return [(2, 3)]
    return [(s, t) for s in range(2, n + 1) for t in range(2, n + 1) if t != s]


def block_cycles(n: int, block: tuple[int, int]) -> Iterator[tuple[int, ...]]:
    s, t = block
    if n == 3:
        yield (1, 2, 3)
        return
    rest = [v for v in range(2, n + 1) if v != s and v != t]
    head = (1, s, t)
    for tail in permutations(rest):
        if tail[-1] > s:
            yield head + tail


def _check_n(n: int, max_n: int):
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if n > max_n:
        raise CapacityError(f"n={n} exceeds the configured maximum {max_n}")


def enumerate_hamiltonian(n: int, *, shard: int = 0, shards: int = 1,
                          max_n: int = MAX_N) -> Iterator[Cycle]:
    """Canonical Hamiltonian cycles of K_n, optionally one of ``shards`` disjoint slices."""
    _check_n(n, max_n)
    if not 0 <= shard < shards:
        raise DomainError(f"shard {shard} not in 0..{shards - 1}")
    for b in blocks(n)[shard::shards]:
        for seq in block_cycles(n, b):
            yield Cycle(seq, n)


def hamiltonian_count(n: int) -> int:
    return factorial(n - 1) // 2


def enumerate_all_cycles(n: int, max_n: int = ALL_CYCLES_MAX_N) -> Iterator[Cycle]:
    """Every cycle of K_n of length 3..n, each once, on its own labels."""
    _check_n(n, max_n)
    for k in range(3, n + 1):
        for subset in combinations(range(1, n + 1), k):
            for sub in _relabelled(k, subset):
                yield Cycle(sub, n)


def _relabelled(k: int, subset: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for b in blocks(k):
        for seq in block_cycles(k, b):
            yield tuple(subset[v - 1] for v in seq)


# --------------------------------------------------------------------------
# classification


class Classifier:
    """Per-process classifier with a cache keyed by the reduced Gauss code."""

    def __init__(self, threshold: int = BRACKET_THRESHOLD):
        self.threshold = threshold
        self.cache: dict = {}

    def __call__(self, n: int, vertices: Sequence[int]) -> KnotName:
        if len(vertices) < 7:
            # every cycle on fewer than 7 vertices of the book is unknotted
            return UNKNOT
        code, signs, _ = cycle_code(n, vertices)
        comps, _ = reduce_code([code])
        if not comps or len(comps[0]) < 6:
            return UNKNOT
        d = Diagram.from_code(comps, signs)
        key = (d.components[0], d.signs)
        name = self.cache.get(key)
        if name is None:
            name = identify(d, self.threshold)
            if len(self.cache) < 200_000:
                self.cache[key] = name
        return name


# --------------------------------------------------------------------------
# records


@dataclass
class CensusRecord:
    n: int
    counts: dict[str, int]
    unidentified: dict[str, int] = field(default_factory=dict)
    total_knotted: int | None = None
    cycles: int = 0

    @property
    def f_n(self) -> int:
        """Number of knotted Hamiltonian cycles (unidentified ones included)."""
        return sum(v for k, v in self.counts.items() if k != "unknot") + sum(self.unidentified.values())

    def knotted_counts(self) -> dict[str, int]:
        return {k: v for k, v in self.counts.items() if k != "unknot" and v}

    def rows(self) -> list[tuple[int, str, int]]:
        out = [(self.n, name, self.counts[name]) for name in _ordered(self.counts)]
        out += [(self.n, f"unidentified[{fp}]", c) for fp, c in sorted(self.unidentified.items())]
        return out


def _ordered(counts: dict[str, int]) -> list[str]:
    rank = {name: i for i, name in enumerate(KNOT_NAMES)}
    return sorted((k for k, v in counts.items() if v), key=lambda k: (rank.get(k, len(rank)), k))


def total_knotted(records: Sequence[CensusRecord] | dict[int, int], n: int) -> int:
    """Sum over j = 7..n of C(n, j) f(j): every knotted cycle of K_n, any length."""
    if isinstance(records, dict):
        f = dict(records)
    else:
        f = {r.n: r.f_n for r in records}
    missing = [j for j in range(7, n + 1) if j not in f]
    if missing:
        raise DomainError(f"missing f(j) for j = {missing}")
    return sum(comb(n, j) * f[j] for j in range(7, n + 1))


# --------------------------------------------------------------------------
# running


def _run_block(args) -> tuple[int, int, dict[str, int], dict[str, int]]:
    n, index, block, threshold = args
    classify = _worker_classifier(threshold)
    counts: Counter = Counter()
    unidentified: Counter = Counter()
    cycles = 0
    for seq in block_cycles(n, block):
        cycles += 1
        name = classify(n, seq)
        if name.identified:
            counts[name.name] += 1
        else:
            unidentified[name.fingerprint.to_text()] += 1
    return index, cycles, dict(counts), dict(unidentified)


_CLASSIFIERS: dict[int, Classifier] = {}


def _worker_classifier(threshold: int) -> Classifier:
    if threshold not in _CLASSIFIERS:
        _CLASSIFIERS[threshold] = Classifier(threshold)
    return _CLASSIFIERS[threshold]


def _checkpoint_header(n: int, nblocks: int, threshold: int) -> dict:
    return {"format": CHECKPOINT_FORMAT, "version": CHECKPOINT_VERSION, "n": n,
            "blocks": nblocks, "bracket_threshold": threshold}


def load_checkpoint(path: Path, n: int, nblocks: int, threshold: int) -> dict[int, dict]:
    """Completed block records from ``path``; empty when the file does not exist."""
    path = Path(path)
    if not path.exists():
        return {}
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CheckpointError(f"checkpoint {path} is not a JSON object")
    want = _checkpoint_header(n, nblocks, threshold)
    for key, value in want.items():
        if data.get(key) != value:
            raise CheckpointError(f"checkpoint {path}: {key}={data.get(key)!r}, expected {value!r}")
    done = {}
    try:
        for rec in data["completed"]:
            i = int(rec["block"])
            if not 0 <= i < nblocks or i in done:
                raise CheckpointError(f"checkpoint {path}: bad block index {i}")
            counts = {str(k): int(v) for k, v in rec["counts"].items()}
            unid = {str(k): int(v) for k, v in rec.get("unidentified", {}).items()}
            cycles = int(rec["cycles"])
            if sum(counts.values()) + sum(unid.values()) != cycles:
                raise CheckpointError(f"checkpoint {path}: block {i} counts do not add up")
            done[i] = {"cycles": cycles, "counts": counts, "unidentified": unid}
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"checkpoint {path} is malformed: {exc}") from exc
    return done


def save_checkpoint(path: Path, n: int, nblocks: int, threshold: int, done: dict[int, dict]):
    path = Path(path)
    data = _checkpoint_header(n, nblocks, threshold)
    completed = []
    last_index = 0
    for i in sorted(done):
        last_index += done[i]["cycles"]
        completed.append({"block": i, **done[i], "cycles_through": last_index})
    data["completed"] = completed
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(data, sort_keys=True) + "\n")
    os.replace(tmp, path)


def run_census(n: int, workers: int = 1, checkpoint_path: str | os.PathLike | None = None, *,
               strict: bool = True, threshold: int = BRACKET_THRESHOLD, max_n: int = MAX_N,
               stop_after: int | None = None) -> CensusRecord:
    """Count Hamiltonian cycles of K_n by knot type.

    ``stop_after`` ends the run after that many new blocks, leaving a
    partial checkpoint behind (used to exercise resumption).
    """
    _check_n(n, max_n)
    keys = blocks(n)
    done: dict[int, dict] = {}
    if checkpoint_path is not None:
        done = load_checkpoint(checkpoint_path, n, len(keys), threshold)
        if done:
            log.info("resuming n=%d with %d/%d blocks done", n, len(done), len(keys))
    todo = [(n, i, keys[i], threshold) for i in range(len(keys)) if i not in done]
    if stop_after is not None:
        todo = todo[:stop_after]

    def record(result):
        i, cycles, counts, unid = result
        done[i] = {"cycles": cycles, "counts": counts, "unidentified": unid}
        if checkpoint_path is not None:
            save_checkpoint(checkpoint_path, n, len(keys), threshold, done)

    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_run_block, todo, chunksize=1):
                record(result)
    else:
        for args in todo:
            record(_run_block(args))

    counts: Counter = Counter({name: 0 for name in KNOT_NAMES})
    unidentified: Counter = Counter()
    cycles = 0
    for i in sorted(done):
        counts.update(done[i]["counts"])
        unidentified.update(done[i]["unidentified"])
        cycles += done[i]["cycles"]
    rec = CensusRecord(n, dict(counts), dict(unidentified), cycles=cycles)
    if len(done) == len(keys) and cycles != hamiltonian_count(n):
        raise CheckpointError(f"n={n}: counted {cycles} cycles, expected {hamiltonian_count(n)}")
    if strict and rec.unidentified:
        raise UnidentifiedKnotError(rec)
    return rec


def census_series(n: int, workers: int = 1, **kwargs) -> list[CensusRecord]:
    """Records for j = 7..n with the total knotted count filled in on each."""
    _check_n(n, kwargs.get("max_n", MAX_N))
    checkpoint_path = kwargs.pop("checkpoint_path", None)
    records = []
    for j in range(7, n + 1):
        rec = run_census(j, workers, checkpoint_path if j == n else None, **kwargs)
        records.append(rec)
        rec.total_knotted = total_knotted(records, j)
    return records


def knotted_cycles_direct(n: int, threshold: int = BRACKET_THRESHOLD) -> tuple[int, dict[str, int]]:
    """Knotted cycles of every length counted one by one (cross-check for ``total_knotted``)."""
    classify = Classifier(threshold)
    counts: Counter = Counter()
    for c in enumerate_all_cycles(n):
        name = classify(n, c.vertices)
        if name.is_knotted:
            counts[str(name)] += 1
    return sum(counts.values()), dict(counts)


# --------------------------------------------------------------------------
# output


def to_csv(records: Sequence[CensusRecord]) -> str:
    lines = ["n,knot_name,count"]
    for r in records:
        lines.extend(f"{n},{name},{count}" for n, name, count in r.rows())
        lines.append(f"{r.n},f_n,{r.f_n}")
        if r.total_knotted is not None:
            lines.append(f"{r.n},total_knotted,{r.total_knotted}")
    return "\n".join(lines) + "\n"


def to_json(records: Sequence[CensusRecord]) -> str:
    from .invariants import reference_table

    table = reference_table()
    out = []
    for r in records:
        out.append({
            "n": r.n,
            "cycles": r.cycles,
            "counts": [{"knot_name": name, "count": r.counts[name],
                        "fingerprint": table[name].to_text()} for name in _ordered(r.counts)],
            "unidentified": [{"fingerprint": fp, "count": c} for fp, c in sorted(r.unidentified.items())],
            "f_n": r.f_n,
            "total_knotted": r.total_knotted,
        })
    return json.dumps({"census": out}, indent=2) + "\n"
