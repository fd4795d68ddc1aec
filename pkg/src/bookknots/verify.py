"""Property suites behind ``bookknots verify``.

Each suite returns a list of :class:`Check` results, one per instance, so
callers can print them line by line and decide on an exit status.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .braids import braid_closure_diagram, step_cycle_braid, torus_braid
from .constructions import (composite_cycle, extension_family, insert_vertex, witness_composite,
                            stable_cycle, step_cycle)
from .diagram import Cycle, diagram_of_cycle
from .embedding import BookEmbedding, Edge, crosses
from .errors import DomainError
from .invariants import fingerprint, identify, reference_table

DEFAULT_SEED = 20240607
TORUS_CASES = ((2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5))
TREFOIL_K7 = Cycle((1, 3, 5, 7, 2, 4, 6), 7)
# braid closures carry many removable crossings that R1/R2 alone leave in place
_WIDE_THRESHOLD = 64


@dataclass(frozen=True)
class Check:
    label: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.label}" + (f": {self.detail}" if self.detail else "")


def _fp_of_cycle(c: Cycle, n: int | None = None):
    return fingerprint(diagram_of_cycle(c.n if n is None else n, c), _WIDE_THRESHOLD)


def check_torus(cases=TORUS_CASES) -> list[Check]:
    """Step-p cycle of K_{2p+q} against the closure of the (p, q) torus braid."""
    out = []
    for p, q in cases:
        n = 2 * p + q
        cyc = _fp_of_cycle(step_cycle(n, p))
        torus = fingerprint(braid_closure_diagram(torus_braid(p, q)), _WIDE_THRESHOLD)
        word = fingerprint(braid_closure_diagram(step_cycle_braid(n, p)), _WIDE_THRESHOLD)
        ok = cyc == torus == word
        out.append(Check(f"torus ({p},{q}) in K{n}", ok, cyc.to_text() if ok else
                         f"cycle {cyc.to_text()} / torus {torus.to_text()} / word {word.to_text()}"))
    return out


def check_composite(ns=(12, 13, 14)) -> list[Check]:
    out = []
    for n in ns:
        c = witness_composite(n)
        name = identify(diagram_of_cycle(n, c))
        out.append(Check(f"composite K{n} {c}", str(name) == "3_1#3_1", str(name)))
    t = reference_table()["3_1"]
    c = composite_cycle(TREFOIL_K7, TREFOIL_K7)
    fp = _fp_of_cycle(c)
    ok = fp.alexander == t.alexander * t.alexander and fp.determinant == t.determinant ** 2
    out.append(Check(f"composite_cycle(3_1, 3_1) = {c}", ok, f"det={fp.determinant}"))
    return out


def _random_hamiltonian(rng: random.Random, labels) -> tuple[int, ...]:
    vs = list(labels)
    rng.shuffle(vs)
    return tuple(vs)


def check_extension(samples: int = 1000, seed: int = DEFAULT_SEED,
                    n_range=(7, 10), max_N: int = 12) -> list[Check]:
    """Random cycles keep their fingerprint under stable_cycle and insert_vertex.

    Each sample draws n, a Hamiltonian cycle of K_n and a target N for the
    stability check, plus an n-cycle of K_{n+1} missing a random vertex
    for the insertion check.
    """
    rng = random.Random(seed)
    failures = []
    for k in range(samples):
        n = rng.randint(*n_range)
        c = Cycle(_random_hamiltonian(rng, range(1, n + 1)), n)
        N = rng.randint(n, max_N)
        base = _fp_of_cycle(c)
        moved = _fp_of_cycle(stable_cycle(c, N))
        if not base.matches(moved):
            failures.append(f"stable {c} -> K{N}")

        N1 = n + 1
        missing = rng.randint(1, N1)
        i = N1 if missing == 1 else missing - 1
        a = Cycle(_random_hamiltonian(rng, [v for v in range(1, N1 + 1) if v != missing]), N1)
        before = _fp_of_cycle(a)
        after = _fp_of_cycle(insert_vertex(a, i))
        if not before.matches(after):
            failures.append(f"insert {missing} into {a}")
    detail = f"{samples} samples, {len(failures)} failures"
    if failures:
        detail += "; first: " + failures[0]
    return [Check("extension invariance", not failures, detail)]


def check_family(seed_cycle: Cycle = TREFOIL_K7, ks=(1, 2)) -> list[Check]:
    """Extension families reach the 2^k C(n+k, k) bound and keep the knot type."""
    from math import comb

    target = identify(diagram_of_cycle(seed_cycle.n, seed_cycle))
    out = []
    for k in ks:
        fam = extension_family(seed_cycle, seed_cycle.n, k)
        bound = 2 ** k * comb(seed_cycle.n + k, k)
        N = seed_cycle.n + k
        wrong = [c for c in fam if identify(diagram_of_cycle(N, c)) != target]
        ok = len(fam) >= bound and not wrong and all(c.is_hamiltonian for c in fam)
        out.append(Check(f"family k={k} in K{N}", ok,
                         f"{len(fam)} cycles (bound {bound}), {len(wrong)} not {target}"))
    return out


def lemma_discrepancies(n: int) -> list[tuple[Edge, Edge]]:
    """Crossing pairs where the over/under rule and the sheet order disagree."""
    emb = BookEmbedding(n)
    bad = []
    for e, f in combinations(emb.edges(), 2):
        if not crosses(e, f):
            continue
        se, sf = emb.sheet_of(e), emb.sheet_of(f)
        if se == sf:
            # chords in one sheet never cross
            bad.append((e, f))
            continue
        by_sheet = e if se < sf else f
        if emb.over_edge(e, f) != by_sheet:
            bad.append((e, f))
    return bad


def check_lemmas(max_n: int = 30) -> list[Check]:
    if max_n < 3:
        raise DomainError("lemma checks need max_n >= 3")
    out = []
    for n in range(3, max_n + 1):
        bad = lemma_discrepancies(n)
        out.append(Check(f"lemmas K{n}", not bad,
                         f"{len(bad)} discrepancies" + (f", first {bad[0]}" if bad else "")))
    return out


SUITES = {
    "torus": check_torus,
    "composite": check_composite,
    "extension": check_extension,
    "family": check_family,
    "lemmas": check_lemmas,
}
