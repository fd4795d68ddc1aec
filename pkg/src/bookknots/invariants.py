"""Knot invariants and identification against a small reference table.

The Alexander polynomial and determinant come from the crossing/arc
Alexander matrix.  The Jones polynomial comes from the Kauffman bracket,
evaluated by contracting crossings one at a time while memoizing the
boundary connectivity of partially smoothed states.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .diagram import Diagram, diagram_from_pd, pd_code, reduce_code, simplify
from .errors import CapacityError, DomainError, FixtureError, ParseError
from .laurent import LaurentPoly

BRACKET_THRESHOLD = 24

KNOT_NAMES = ("unknot", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "7_1",
              "8_19", "10_124", "3_1#3_1")


# --------------------------------------------------------------------------
# integer linear algebra


def bareiss_det(M: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


# --------------------------------------------------------------------------
# Alexander polynomial


def _knot_code(d: Diagram) -> tuple[int, ...]:
    if d.component_count != 1:
        raise DomainError(f"expected a knot diagram, got {d.component_count} components")
    return d.components[0]


def alexander_rows(code: Sequence[int], signs: Sequence[int]) -> list[list[tuple[int, int, int]]]:
    """Alexander matrix rows as ``(over_arc, in_arc, out_arc)`` with the crossing sign.

    Arcs run from one under-pass to the next; arc r starts just after the
    r-th under-pass of the walk.
    """
    c = len(signs)
    arc_of_pos = []
    arc = -1
    for x in code:
        if x < 0:
            arc_of_pos.append(arc)      # incoming under-arc, fixed below for arc -1
            arc += 1
        else:
            arc_of_pos.append(arc)
    arc_of_pos = [a % c for a in arc_of_pos]
    over_arc = {}
    in_arc = {}
    for p, x in enumerate(code):
        if x > 0:
            over_arc[x] = arc_of_pos[p]
        else:
            in_arc[-x] = arc_of_pos[p]
    return [(over_arc[k], in_arc[k], (in_arc[k] + 1) % c, signs[k - 1]) for k in range(1, c + 1)]


def _alexander_matrix_at(rows, t: int) -> list[list[int]]:
    """Integer matrix M(t) with the last row and column deleted."""
    c = len(rows)
    M = [[0] * c for _ in range(c)]
    for r, (o, i, out, s) in enumerate(rows):
        row = M[r]
        row[o] += 1 - t
        if s > 0:
            row[out] += t
            row[i] -= 1
        else:
            row[i] += t
            row[out] -= 1
    return [row[:-1] for row in M[:-1]]


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Symmetrize under t -> 1/t and fix the sign so that p(1) = +1."""
    if p.is_zero():
        return p
    span = p.span
    if span % 2:
        raise DomainError(f"Alexander polynomial {p} has odd span; not a knot")
    p = p.shift(-(p.min_exp + span // 2))
    if p.eval_int(1) < 0:
        p = -p
    return p


def alexander_from_code(code: Sequence[int], signs: Sequence[int]) -> LaurentPoly:
    c = len(signs)
    if c <= 1:
        return LaurentPoly.const(1)
    rows = alexander_rows(code, signs)
    # Kronecker substitution: every coefficient of the minor is below 4**c in
    # size, so evaluating at a large power of two and reading balanced digits
    # recovers the polynomial exactly from one integer determinant.
    bits = 2 * c + 2
    base = 1 << bits
    value = bareiss_det(_alexander_matrix_at(rows, base))
    coeffs = []
    half = base >> 1
    while value:
        digit = value & (base - 1)
        if digit >= half:
            digit -= base
        coeffs.append(digit)
        value = (value - digit) >> bits
    return normalize_alexander(LaurentPoly.from_dense(coeffs))


def alexander_poly(d: Diagram) -> LaurentPoly:
    return alexander_from_code(_knot_code(d), d.signs)


def determinant_from_code(code: Sequence[int], signs: Sequence[int]) -> int:
    if len(signs) <= 1:
        return 1
    return abs(bareiss_det(_alexander_matrix_at(alexander_rows(code, signs), -1)))


def determinant(d: Diagram) -> int:
    return determinant_from_code(_knot_code(d), d.signs)


# --------------------------------------------------------------------------
# Kauffman bracket and Jones polynomial

_LOOP = LaurentPoly({2: -1, -2: -1})   # -A^2 - A^-2


def _contraction_order(pd: Sequence[Sequence[int]]) -> list[int]:
    """Greedy crossing order keeping the set of open edge labels small."""
    remaining = set(range(len(pd)))
    order = []
    open_labels: set[int] = set()
    while remaining:
        best = max(remaining, key=lambda i: (sum(lab in open_labels for lab in pd[i]), -i))
        remaining.discard(best)
        order.append(best)
        for lab in pd[best]:
            open_labels ^= {lab}
    return order


def _join(conn: dict, x: int, y: int) -> int:
    """Add a strand between labels x and y; returns the number of loops closed."""
    if x == y:
        if x in conn:
            raise ParseError(f"edge label {x} used more than twice", x)
        return 1
    ex = conn.pop(x, None)
    ey = conn.pop(y, None)
    if ex is None and ey is None:
        conn[x], conn[y] = y, x
        return 0
    if ex == y:
        # x and y were the two ends of one open path
        return 1
    if ex is None:
        conn[ey] = x
        conn[x] = ey
        return 0
    if ey is None:
        conn[ex] = y
        conn[y] = ex
        return 0
    conn[ex] = ey
    conn[ey] = ex
    return 0


def bracket_from_pd(pd: Sequence[Sequence[int]], free_loops: int = 0) -> LaurentPoly:
    """Kauffman bracket in A, normalized so a single circle gives 1."""
    pd = [tuple(X) for X in pd]
    if not pd:
        return _LOOP ** max(free_loops - 1, 0)
    states: dict[frozenset, dict[int, int]] = {frozenset(): {0: 1}}
    for ci in _contraction_order(pd):
        a, b, c, d = pd[ci]
        new: dict[frozenset, dict[int, int]] = {}
        for key, poly in states.items():
            for pairs, shift in ((((a, b), (c, d)), 1), (((a, d), (b, c)), -1)):
                conn = {}
                for u, v in key:
                    conn[u] = v
                    conn[v] = u
                loops = 0
                for u, v in pairs:
                    loops += _join(conn, u, v)
                nkey = frozenset((u, v) for u, v in conn.items() if u < v)
                # loops are recorded as powers of a formal loop variable folded in below
                term = LaurentPoly({e + shift: v for e, v in poly.items()})
                if loops:
                    term = term * _LOOP ** loops
                acc = new.setdefault(nkey, {})
                for e, v in term.coeffs().items():
                    acc[e] = acc.get(e, 0) + v
        states = {k: {e: v for e, v in p.items() if v} for k, p in new.items()}
    total = LaurentPoly(states.get(frozenset(), {}))
    if free_loops:
        total = total * _LOOP ** free_loops
    return total.exact_div(_LOOP)


def kauffman_bracket(d: Diagram, threshold: int = BRACKET_THRESHOLD) -> LaurentPoly:
    if d.crossing_count > threshold:
        raise CapacityError(f"{d.crossing_count} crossings exceed the bracket threshold {threshold}")
    free = sum(1 for comp in d.components if not comp)
    return bracket_from_pd(pd_code(d), free_loops=free)


def writhe_normalized_bracket(d: Diagram, threshold: int = BRACKET_THRESHOLD) -> LaurentPoly:
    """(-A^3)^(-w) <D>, an invariant of oriented links in the variable A."""
    w = sum(d.signs)
    factor = LaurentPoly({-3 * w: -1 if w % 2 else 1})
    return factor * kauffman_bracket(d, threshold)


def jones_poly(d: Diagram, threshold: int = BRACKET_THRESHOLD) -> LaurentPoly:
    """Jones polynomial.

    For an odd number of components the result is in t.  With an even
    number of components the Jones polynomial has half-integer powers, so
    it is returned in s = t^(1/2) instead.
    """
    f = writhe_normalized_bracket(d, threshold)
    # A = t^(-1/4)
    if d.component_count % 2:
        return f.divide_exponents(-4)
    return f.divide_exponents(-2)


# --------------------------------------------------------------------------
# fingerprints


def canonical_mirror(p: LaurentPoly | None) -> LaurentPoly | None:
    if p is None:
        return None
    m = p.mirror()
    return min(p, m, key=LaurentPoly.sort_key)


@dataclass(frozen=True)
class Fingerprint:
    """Identification key of a knot or link type (mirror-insensitive)."""

    components: int
    alexander: LaurentPoly | None
    determinant: int | None
    jones: LaurentPoly | None

    def matches(self, other: "Fingerprint") -> bool:
        if (self.components, self.alexander, self.determinant) != (
                other.components, other.alexander, other.determinant):
            return False
        if self.jones is not None and other.jones is not None:
            return self.jones == other.jones
        return True

    def to_text(self) -> str:
        parts = [f"components={self.components}"]
        if self.alexander is not None:
            parts.append(f"alexander={self.alexander.to_text()}")
        if self.determinant is not None:
            parts.append(f"det={self.determinant}")
        if self.jones is not None:
            key = "jones" if self.components % 2 else "jones_s"
            parts.append(f"{key}={self.jones.to_text()}")
        return ";".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "Fingerprint":
        fields = {}
        for part in text.split(";"):
            if "=" not in part:
                raise ParseError(f"bad fingerprint field {part!r}", text.find(part))
            k, v = part.split("=", 1)
            fields[k] = v
        jones = fields.get("jones", fields.get("jones_s"))
        return cls(
            components=int(fields.get("components", 1)),
            alexander=LaurentPoly.from_text(fields["alexander"]) if "alexander" in fields else None,
            determinant=int(fields["det"]) if "det" in fields else None,
            jones=LaurentPoly.from_text(jones) if jones is not None else None,
        )

    def __str__(self):
        return self.to_text()


def fingerprint(d: Diagram, threshold: int = BRACKET_THRESHOLD, *, with_jones: bool = True,
                reduced: bool = False) -> Fingerprint:
    """Fingerprint of a diagram; simplifies first unless ``reduced`` is set."""
    if not reduced:
        d = simplify(d)
    jones = None
    if with_jones and d.crossing_count <= threshold:
        jones = canonical_mirror(jones_poly(d, threshold))
    if d.component_count != 1:
        return Fingerprint(d.component_count, None, None, jones)
    alex = alexander_poly(d)
    return Fingerprint(1, alex, abs(alex.eval_int(-1)), jones)


def product_fingerprint(a: Fingerprint, b: Fingerprint) -> Fingerprint:
    """Fingerprint of a connected sum, from those of the summands.

    The Jones polynomial is only multiplicative for a fixed choice of
    mirrors, so it is dropped from the product.
    """
    if a.components != 1 or b.components != 1:
        raise DomainError("connected sums are formed from knots")
    return Fingerprint(1, a.alexander * b.alexander, a.determinant * b.determinant, None)


# --------------------------------------------------------------------------
# reference table


@dataclass(frozen=True)
class KnotName:
    """A name from the reference table, or ``unidentified`` with its fingerprint."""

    name: str
    fingerprint: Fingerprint | None = None

    @property
    def identified(self) -> bool:
        return self.name != "unidentified"

    @property
    def is_knotted(self) -> bool:
        return self.name != "unknot"

    def __str__(self):
        if self.identified:
            return self.name
        return f"unidentified[{self.fingerprint.to_text()}]"


UNKNOT = KnotName("unknot")


def _fixture_records() -> list[dict]:
    text = resources.files("bookknots").joinpath("data/reference_knots.json").read_text()
    return json.loads(text)["knots"]


@lru_cache(maxsize=None)
def reference_table() -> dict[str, Fingerprint]:
    """Fingerprints recomputed from the bundled reference PD codes.

    Each record also carries the fingerprint text it is expected to
    produce; any disagreement, or two names sharing a fingerprint, is a
    hard failure.
    """
    table = {}
    for rec in _fixture_records():
        d = diagram_from_pd(rec["pd"])
        fp = fingerprint(d)
        stored = Fingerprint.from_text(rec["fingerprint"])
        if fp != stored:
            raise FixtureError(f"fixture {rec['name']}: recomputed {fp} != stored {stored}")
        table[rec["name"]] = fp
    if set(table) != set(KNOT_NAMES):
        raise FixtureError(f"fixture names {sorted(table)} differ from {sorted(KNOT_NAMES)}")
    names = list(table)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if table[a].matches(table[b]):
                raise FixtureError(f"fixtures {a} and {b} share a fingerprint")
    return table


def lookup(fp: Fingerprint) -> KnotName:
    hits = [name for name, ref in reference_table().items() if ref.matches(fp)]
    if len(hits) == 1:
        return KnotName(hits[0])
    return KnotName("unidentified", fp)


def identify(d: Diagram, threshold: int = BRACKET_THRESHOLD) -> KnotName:
    """Name the knot type of a diagram.

    Alexander-trivial diagrams that do not simplify to zero crossings are
    only called unknots when their Jones polynomial is trivial too.
    """
    s = simplify(d)
    if s.crossing_count == 0 and s.component_count == 1:
        return UNKNOT
    if s.component_count != 1:
        return KnotName("unidentified", fingerprint(s, threshold, reduced=True))
    fp = fingerprint(s, threshold, reduced=True)
    if fp.alexander == LaurentPoly.const(1) and fp.jones is None:
        # never certify an unknot from the Alexander polynomial alone
        return KnotName("unidentified", fp)
    return lookup(fp)


def identify_code(code: Sequence[int], signs: Sequence[int], threshold: int = BRACKET_THRESHOLD) -> KnotName:
    """Fast path for the census: identify a raw single-component signed Gauss code."""
    comps, loops = reduce_code([code])
    if not comps:
        return UNKNOT
    sign_map = dict(enumerate(signs, 1)) if not isinstance(signs, dict) else signs
    d = Diagram.from_code(comps, sign_map)
    return identify(d, threshold)
