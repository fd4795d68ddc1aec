"""Braid words, torus braids and braid closures.

Letters are signed generator indices: ``+i`` is sigma_i (strand i passes
over strand i+1, a positive crossing), ``-i`` its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .diagram import Diagram
from .embedding import Edge, second_is_over
from .errors import DomainError, LinkCaseError, ParseError


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise DomainError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise DomainError(f"generator {x} invalid on {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        return BraidWord(self.strands, self.letters * k)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Where each starting position (0-based) ends up after the word."""
        pos = list(range(self.strands))   # pos[strand] = current position
        at = list(range(self.strands))    # at[position] = strand
        for x in self.letters:
            i = abs(x) - 1
            a, b = at[i], at[i + 1]
            at[i], at[i + 1] = b, a
            pos[a], pos[b] = i + 1, i
        return tuple(pos)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    letters = []
    pos = 0
    for tok in text.split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise ParseError(f"bad braid letter {tok!r}", text.index(tok, pos)) from None
        pos = text.index(tok, pos) + len(tok)
    if strands is None:
        strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


def torus_braid(p: int, q: int) -> BraidWord:
    """(sigma_1 ... sigma_{p-1})^q, whose closure is the (p, q) torus link."""
    if p < 2:
        raise DomainError(f"torus braids need p >= 2, got {p}")
    if q < 1:
        raise DomainError(f"torus braids need q >= 1, got {q}")
    return BraidWord(p, tuple(range(1, p)) * q)


def step_cycle_braid(n: int, p: int) -> BraidWord:
    """Braid word of the cycle (1, 1+p, 1+2p, ...) in the book of K_n.

    Reading the edges (i, i+p) for i = 1..n, generator sigma_j gets
    exponent +1 when (i, i+p) passes over (i+j, i+j+p) and -1 otherwise.
    """
    if p < 2:
        raise DomainError("step braids need p >= 2")
    if n < 2 * p + 1:
        raise DomainError(f"need n >= 2p+1, got n={n}, p={p}")
    if gcd(p, n) != 1:
        raise LinkCaseError(f"gcd({p}, {n}) != 1: the step-{p} edges form a link")

    def wrap(v):
        return (v - 1) % n + 1

    letters = []
    for i in range(1, n + 1):
        e = Edge.of(i, wrap(i + p))
        for j in range(1, p):
            f = Edge.of(wrap(i + j), wrap(i + j + p))
            e_over = not second_is_over(n, e, f)
            letters.append(j if e_over else -j)
    return BraidWord(p, tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(w.strands, tuple(out))


def braid_closure_diagram(w: BraidWord) -> Diagram:
    """Diagram of the closure; one component per cycle of the permutation."""
    signs = {k: (1 if x > 0 else -1) for k, x in enumerate(w.letters, 1)}
    seen = [False] * w.strands
    components = []
    for start in range(w.strands):
        if seen[start]:
            continue
        comp = []
        p = start
        while not seen[p]:
            seen[p] = True
            for k, x in enumerate(w.letters, 1):
                i = abs(x) - 1
                if p == i:
                    comp.append(k if x > 0 else -k)
                    p = i + 1
                elif p == i + 1:
                    comp.append(-k if x > 0 else k)
                    p = i
        components.append(comp)
    return Diagram.from_code(components, signs)
