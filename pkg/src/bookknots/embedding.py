"""Otsuki's right canonical book representation of K_n.

Vertices sit on a circle labelled 1..n in order.  Every edge is a chord
living in one sheet; sheets are stacked so that sheet 1 is nearest the
viewer.  Nothing is stored: sheet membership and over/under data are
closed-form functions of the labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, PreconditionError


class Edge(NamedTuple):
    """An undirected chord, always stored with ``a < b``."""

    a: int
    b: int

    @classmethod
    def of(cls, u: int, v: int) -> "Edge":
        if u == v:
            raise DomainError(f"loop edge ({u},{v})")
        return cls(u, v) if u < v else cls(v, u)

    def shares_vertex(self, other: "Edge") -> bool:
        return bool({self.a, self.b} & {other.a, other.b})

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class BookEmbedding:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 3:
            raise DomainError(f"need an integer n >= 3, got {self.n!r}")

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def sheet_count(self) -> int:
        return (self.n + 1) // 2

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[Edge]:
        n = self.n
        return [Edge(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]

    def check_edge(self, e: Edge) -> Edge:
        a, b = e
        if not (1 <= a <= self.n and 1 <= b <= self.n) or a == b:
            raise DomainError(f"edge {tuple(e)} is not an edge of K_{self.n}")
        return Edge.of(a, b)

    def sheet_of(self, e: Edge) -> int:
        """Index of the sheet holding ``e`` (1 is the top sheet)."""
        i, j = self.check_edge(e)
        return sheet_index(self.n, i, j)

    def edges_in_sheet(self, s: int) -> list[Edge]:
        if not 1 <= s <= self.sheet_count:
            raise DomainError(f"sheet {s} outside 1..{self.sheet_count}")
        n = self.n
        return [Edge(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                if sheet_index(n, a, b) == s]

    def over_edge(self, e1: Edge, e2: Edge) -> Edge:
        """Return whichever of two crossing edges passes over the other."""
        e1 = self.check_edge(e1)
        e2 = self.check_edge(e2)
        if not crosses(e1, e2):
            raise PreconditionError(f"edges {e1} and {e2} do not cross")
        return e2 if second_is_over(self.n, e1, e2) else e1


def sheet_index(n: int, i: int, j: int) -> int:
    """Sheet of edge (i, j), ``i < j``, following the two parity cases."""
    m = n // 2
    if n % 2 == 0:
        if i <= m:
            return i if j - i <= m else j - m
        return i - m
    if i <= m + 1:
        return i if j - i <= m + 1 else j - m - 1
    return i - m - 1


def crosses(e1: Edge, e2: Edge) -> bool:
    """True iff the chords interleave on the circle (shared endpoints never cross)."""
    a, b = e1
    c, d = e2
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    return (a < c < b < d) or (c < a < d < b)


def second_is_over(n: int, e1: Edge, e2: Edge) -> bool:
    """Over/under rule for interleaved chords; True when ``e2`` is on top."""
    (i, j), (k, l) = (e1, e2) if e1[0] < e2[0] else (e2, e1)
    # relabelled so that i < k < j < l; (k, l) is on top iff the rule fires
    m = n // 2
    if n % 2 == 0:
        kl_on_top = i <= m and k >= m + 1
    else:
        kl_on_top = i <= m + 1 and k >= m + 2
    return kl_on_top == (e2[0] == k)
