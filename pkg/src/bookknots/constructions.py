"""Cycle constructions that preserve or combine knot types.

Every construction here returns plain :class:`Cycle` values; whether the
knot type really is what the construction promises is checked elsewhere
by comparing fingerprints.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd

from .diagram import Cycle
from .embedding import BookEmbedding, Edge
from .errors import DomainError, LinkCaseError, PreconditionError


def _next_label(v: int, n: int) -> int:
    return 1 if v == n else v + 1


def stable_cycle(c: Cycle, N: int) -> Cycle:
    """The same vertex sequence viewed inside the book of K_N, N >= n."""
    if N < c.n:
        raise DomainError(f"cannot move a cycle of K_{c.n} into the smaller K_{N}")
    return Cycle(c.vertices, N)


def insert_vertex(c: Cycle, i: int) -> Cycle:
    """Splice vertex i+1 (wrapping n to 1) into the cycle right after i."""
    if i not in c.vertices:
        raise PreconditionError(f"vertex {i} is not on the cycle {c}")
    j = _next_label(i, c.n)
    if j in c.vertices:
        raise PreconditionError(f"vertex {j} is already on the cycle {c}")
    vs = list(c.vertices)
    k = vs.index(i)
    vs.insert(k + 1, j)
    return Cycle(tuple(vs), c.n)


def has_consecutive_edge(c: Cycle) -> bool:
    n = c.n
    for a, b in c.edges():
        if b - a == 1 or (a == 1 and b == n):
            return True
    return False


def _extensions(vs: tuple[int, ...], N: int) -> list[tuple[int, ...]]:
    """Both splices of the smallest j whose successor j+1 is missing."""
    present = set(vs)
    j = min(v for v in vs if _next_label(v, N) not in present)
    new = _next_label(j, N)
    k = vs.index(j)
    before = vs[:k] + (new,) + vs[k:]
    after = vs[:k + 1] + (new,) + vs[k + 1:]
    return [before, after]


def extension_family(c: Cycle, n: int | None = None, k: int = 0) -> set[Cycle]:
    """Hamiltonian cycles of K_{n+k} obtained from a Hamiltonian cycle of K_n.

    For every n-subset of 1..n+k the cycle is relabelled onto the subset
    (order preserving), then the missing vertices are spliced in one at a
    time, each in both possible positions.  Results are in canonical form.
    """
    n = c.n if n is None else n
    if c.n != n or not c.is_hamiltonian:
        raise PreconditionError(f"{c} is not a Hamiltonian cycle of K_{n}")
    if has_consecutive_edge(c):
        raise PreconditionError(f"{c} has an edge joining consecutively labelled vertices")
    if k < 0:
        raise DomainError("k must be non-negative")
    N = n + k
    out = set()
    for subset in combinations(range(1, N + 1), n):
        level = [tuple(subset[v - 1] for v in c.vertices)]
        for _ in range(k):
            level = [ext for vs in level for ext in _extensions(vs, N)]
        out.update(Cycle(vs, N).canonical() for vs in level)
    return out


def step_cycle(n: int, p: int) -> Cycle:
    """The cycle (1, 1+p, 1+2p, ...) taken mod n."""
    if not 1 <= p < n:
        raise DomainError(f"step {p} out of range for n={n}")
    if gcd(p, n) != 1:
        raise LinkCaseError(f"gcd({p}, {n}) != 1: the step-{p} edges form a link")
    return Cycle(tuple((i * p) % n + 1 for i in range(n)), n)


def lowest_sheet_edge(c: Cycle, emb: BookEmbedding) -> int:
    """Index i such that edge (c[i], c[i+1]) is in the lowest sheet.

    Ties go to the edge with the smallest lower endpoint.
    """
    vs = c.vertices
    L = len(vs)

    def key(i):
        e = Edge.of(vs[i], vs[(i + 1) % L])
        return (-emb.sheet_of(e), e.a, e.b)

    return min(range(L), key=key)


def composite_cycle(alpha: Cycle, beta: Cycle) -> Cycle:
    """A Hamiltonian cycle of K_{p+q+1} representing alpha # beta.

    ``alpha`` and ``beta`` are Hamiltonian cycles of K_p and K_q.  Alpha is
    rerouted through p+q+1 and p+q across its lowest edge, beta (shifted to
    labels p+1..p+q) is rerouted to contain the edge (p+q, p+q+1), and the
    two are merged along that edge.
    """
    for name, c in (("alpha", alpha), ("beta", beta)):
        if not c.is_hamiltonian:
            raise PreconditionError(f"{name} = {c} is not Hamiltonian in K_{c.n}")
    if alpha.n > beta.n:
        alpha, beta = beta, alpha
    p, q = alpha.n, beta.n
    N = p + q + 1
    emb = BookEmbedding(N)

    # alpha: orient its lowest edge as a_i -> a_{i+1} with a_i < a_{i+1}
    a = alpha.in_graph(N)
    i = lowest_sheet_edge(a, emb)
    vs = a.vertices
    ai, ai1 = vs[i], vs[(i + 1) % p]
    if ai > ai1:
        vs = vs[::-1]
        ai, ai1 = ai1, ai
    k = vs.index(ai1)
    alpha_path = vs[k:] + vs[:k]      # a_{i+1}, ..., a_i

    # beta on labels p+1..p+q, read backwards from b_{j-1} to b_{j+1}
    bs = tuple(v + p for v in beta.vertices)
    j = bs.index(p + q)
    prev_b, next_b = bs[j - 1], bs[(j + 1) % q]
    if prev_b > next_b:
        bs = bs[::-1]
        j = bs.index(p + q)
        prev_b, next_b = next_b, prev_b
    around = bs[j + 1:] + bs[:j]      # b_{j+1}, ..., b_{j-1}
    beta_path = around[::-1]          # b_{j-1}, ..., b_{j+1}

    seq = alpha_path + (N,) + beta_path + (N - 1,)
    return Cycle(seq, N)


COMPOSITE_K12 = (1, 3, 5, 8, 10, 12, 7, 9, 11, 2, 4, 6)
COMPOSITE_K13 = (1, 3, 5, 7, 9, 11, 13, 8, 10, 12, 2, 4, 6)


def witness_composite(n: int) -> Cycle:
    """A Hamiltonian cycle of K_n that is a composite of two trefoils (n >= 12).

    Witnesses are stored only from n = 12 on; smaller n raise DomainError.
    """
    if n < 12:
        raise DomainError(f"no stored composite witness for K_{n} (needs n >= 12)")
    if n == 12:
        return Cycle(COMPOSITE_K12, 12)
    if n == 13:
        return Cycle(COMPOSITE_K13, 13)
    return Cycle((1, 3, 5, 7, 9, 11, 13, 8, 10, 12) + tuple(range(14, n + 1)) + (2, 4, 6), n)


def witness_composites(max_n: int = 14) -> dict[str, Cycle]:
    if max_n < 12:
        raise DomainError(f"composites start at n = 12, got {max_n}")
    return {f"K{n}": witness_composite(n) for n in range(12, max_n + 1)}
