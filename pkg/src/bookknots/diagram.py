"""Knot diagrams of cycles in the canonical book representation.

A cycle is a closed walk of chords on the vertex circle.  Projecting the
book onto the plane of the circle gives a diagram whose crossings are the
interleaved chord pairs, with over/under fixed by the sheet rules in
:mod:`bookknots.embedding`.

To order several crossings along one chord we need an actual planar
drawing.  Vertices are placed on the parabola ``y = x**2`` at ``x = 2**i``
(convex position, cyclic order 1..n) and chords are drawn straight; all
coordinates are integers so the ordering is exact.  Chords of one sheet
never interleave, so the straight drawing is a valid projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .embedding import BookEmbedding, Edge, crosses, second_is_over
from .errors import DomainError, ParseError, PreconditionError


# --------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class Cycle:
    """A closed vertex sequence in K_n (not necessarily Hamiltonian)."""

    vertices: tuple[int, ...]
    n: int

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 3:
            raise DomainError(f"a cycle needs at least 3 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise DomainError(f"repeated vertex in cycle {vs}")
        if self.n < 3 or any(not 1 <= v <= self.n for v in vs):
            raise DomainError(f"cycle {vs} does not live in K_{self.n}")

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def is_hamiltonian(self) -> bool:
        return len(self.vertices) == self.n

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [Edge.of(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def canonical(self) -> "Cycle":
        return Cycle(canonical_vertices(self.vertices), self.n)

    def reversed(self) -> "Cycle":
        return Cycle(self.vertices[::-1], self.n)

    def rotated(self, k: int) -> "Cycle":
        k %= len(self.vertices)
        return Cycle(self.vertices[k:] + self.vertices[:k], self.n)

    def in_graph(self, n: int) -> "Cycle":
        return Cycle(self.vertices, n)

    def __str__(self):
        return format_cycle(self.vertices)


def canonical_vertices(vs: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect so the minimum comes first, followed by its smaller neighbour."""
    k = min(range(len(vs)), key=vs.__getitem__)
    out = tuple(vs[k:]) + tuple(vs[:k])
    if out[-1] < out[1]:
        out = (out[0],) + out[:0:-1]
    return out


def format_cycle(vs: Iterable[int]) -> str:
    return "(" + ",".join(str(v) for v in vs) + ")"


def parse_cycle(text: str, n: int | None = None) -> Cycle:
    """Parse ``"(1,3,5,7,2,4,6)"``; ``n`` defaults to the largest label."""
    s = text.strip()
    if not s.startswith("("):
        raise ParseError("cycle must start with '('", 0)
    if not s.endswith(")"):
        raise ParseError("cycle must end with ')'", len(s) - 1)
    vs = []
    pos = 1
    for tok in s[1:-1].split(","):
        body = tok.strip()
        if not body.isdigit():
            raise ParseError(f"expected a positive integer, got {body!r}", pos)
        vs.append(int(body))
        pos += len(tok) + 1
    if n is None:
        n = max(vs)
    return Cycle(tuple(vs), n)


# --------------------------------------------------------------------------
# exact straight-chord geometry


def vertex_point(i: int) -> tuple[int, int]:
    x = 1 << i
    return x, x * x


def _cross(ax, ay, bx, by) -> int:
    return ax * by - ay * bx


@dataclass(frozen=True)
class _Tables:
    """Per-n lookup tables shared by every cycle of K_n."""

    n: int
    over: dict        # (e1, e2) -> True when e1 passes over e2; only for crossing pairs
    rank: dict        # (e1, e2) -> rank of the crossing with e2 along e1, ascending x
    orient: dict      # (e1, e2) -> sign of cross(dir e1, dir e2) for a->b directions


@lru_cache(maxsize=None)
def chord_tables(n: int) -> _Tables:
    pts = {i: vertex_point(i) for i in range(1, n + 1)}
    edges = BookEmbedding(n).edges()
    over, rank, orient = {}, {}, {}
    for e in edges:
        (ax, ay), (bx, by) = pts[e[0]], pts[e[1]]
        rx, ry = bx - ax, by - ay
        keyed = []
        for f in edges:
            if not crosses(e, f):
                continue
            (cx, cy), (dx, dy) = pts[f[0]], pts[f[1]]
            sx, sy = dx - cx, dy - cy
            den = _cross(rx, ry, sx, sy)
            keyed.append((Fraction(_cross(cx - ax, cy - ay, sx, sy), den), f))
            over[e, f] = not second_is_over(n, e, f)
            orient[e, f] = 1 if den > 0 else -1
        keyed.sort()
        for r, (t, f) in enumerate(keyed):
            if r and keyed[r - 1][0] == t:
                raise DomainError(f"three chords meet at one point in K_{n}; drawing is degenerate")
            rank[e, f] = r
    return _Tables(n, over, rank, orient)


# --------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class Crossing:
    over_edge: Edge | None
    under_edge: Edge | None
    positions: tuple[int, int]   # (over visit, under visit) indices into the traversal
    sign: int


@dataclass(frozen=True)
class GaussCode:
    """Signed Gauss code: ``+k`` passes over crossing k, ``-k`` under it."""

    components: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]

    def __str__(self):
        return " | ".join(",".join(str(x) for x in comp) for comp in self.components)


@dataclass(frozen=True)
class Diagram:
    """An oriented diagram stored as a signed Gauss code.

    Crossings are numbered 1..c in order of first visit.  Components with
    no crossings are kept as empty sequences so the component count is
    faithful.
    """

    components: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    edges: tuple[tuple[Edge, Edge] | None, ...] = field(default=(), compare=False)

    @classmethod
    def from_code(cls, components, signs, edges=None) -> "Diagram":
        """Renumber labels by first appearance; ``signs``/``edges`` are keyed by old label."""
        relabel: dict[int, int] = {}
        comps = []
        for comp in components:
            out = []
            for x in comp:
                k = abs(x)
                if k not in relabel:
                    relabel[k] = len(relabel) + 1
                out.append(relabel[k] if x > 0 else -relabel[k])
            comps.append(tuple(out))
        order = sorted(relabel, key=relabel.get)
        new_signs = tuple(signs[k] for k in order)
        new_edges = tuple(edges[k] for k in order) if edges else ()
        return cls(tuple(comps), new_signs, new_edges)

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def traversal(self) -> tuple[tuple[int, bool], ...]:
        """All visits in walk order as ``(crossing index from 0, is_over)``."""
        return tuple((abs(x) - 1, x > 0) for comp in self.components for x in comp)

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        over_pos = {}
        under_pos = {}
        for p, x in enumerate(x for comp in self.components for x in comp):
            (over_pos if x > 0 else under_pos)[abs(x)] = p
        out = []
        for k in range(1, self.crossing_count + 1):
            oe, ue = self.edges[k - 1] if self.edges else (None, None)
            out.append(Crossing(oe, ue, (over_pos[k], under_pos[k]), self.signs[k - 1]))
        return tuple(out)

    def mirror(self) -> "Diagram":
        """Swap every over/under; signs flip."""
        comps = tuple(tuple(-x for x in comp) for comp in self.components)
        return Diagram(comps, tuple(-s for s in self.signs))

    def reverse(self) -> "Diagram":
        """Reverse the orientation of every component (signs are unchanged)."""
        comps = [comp[::-1] for comp in self.components]
        return Diagram.from_code(comps, dict(enumerate(self.signs, 1)))


def cycle_code(n: int, vertices: Sequence[int]):
    """Signed Gauss code of a cycle in the book of K_n.

    Returns ``(code, signs, edges)`` where ``code`` lists ``+k``/``-k`` visits,
    ``signs[k]`` is the crossing sign and ``edges[k]`` the ``(over, under)``
    chords.  Crossing labels are arbitrary positive ints.
    """
    tab = chord_tables(n)
    over, rank, orient = tab.over, tab.rank, tab.orient
    L = len(vertices)
    chords = []
    for i in range(L):
        u, v = vertices[i], vertices[(i + 1) % L]
        chords.append(((u, v) if u < v else (v, u), 1 if u < v else -1))
    on_edge: list[list] = [[] for _ in range(L)]
    signs = {}
    edges = {}
    label = 0
    for i in range(L):
        e, di = chords[i]
        for j in range(i + 2, L):
            f, dj = chords[j]
            if (e, f) not in over:
                continue
            label += 1
            e_over = over[e, f]
            sgn = orient[e, f] * di * dj
            signs[label] = sgn if e_over else -sgn
            edges[label] = (Edge(*e), Edge(*f)) if e_over else (Edge(*f), Edge(*e))
            on_edge[i].append((rank[e, f] * di, label if e_over else -label))
            on_edge[j].append((rank[f, e] * dj, -label if e_over else label))
    code = []
    for lst in on_edge:
        lst.sort()
        code.extend(x for _, x in lst)
    return code, signs, edges


def diagram_of_cycle(emb: BookEmbedding | int, c: Cycle | Sequence[int]) -> Diagram:
    n = emb.n if isinstance(emb, BookEmbedding) else emb
    vs = c.vertices if isinstance(c, Cycle) else tuple(c)
    if len(vs) < 3:
        raise DomainError("a cycle needs at least 3 vertices")
    if isinstance(c, Cycle) and c.n > n:
        raise DomainError(f"cycle lives in K_{c.n}, not in K_{n}")
    Cycle(vs, n)  # validation
    code, signs, edges = cycle_code(n, vs)
    return Diagram.from_code([code], signs, edges)


def writhe(d: Diagram) -> int:
    return sum(d.signs)


# --------------------------------------------------------------------------
# codes


def gauss_code(d: Diagram) -> GaussCode:
    return GaussCode(d.components, d.signs)


def dt_code(d: Diagram) -> tuple[int, ...]:
    """Dowker-Thistlethwaite code.

    Visits are numbered 1..2c along the walk; each crossing pairs an odd and
    an even number.  Entry i is the even partner of 2i-1, negated when the
    even-numbered pass is the over-pass.
    """
    if d.component_count != 1:
        raise DomainError("DT codes describe knots, not links")
    seq = d.components[0]
    where: dict[int, list[int]] = {}
    for p, x in enumerate(seq, start=1):
        where.setdefault(abs(x), []).append(p)
    out = {}
    for k, (p, q) in where.items():
        if p % 2 == q % 2:
            raise PreconditionError("non-planar Gauss code: crossing visited twice with same parity")
        odd, even = (p, q) if p % 2 else (q, p)
        even_is_over = seq[even - 1] > 0
        out[odd] = -even if even_is_over else even
    return tuple(out[i] for i in range(1, 2 * len(where), 2))


def pd_code(d: Diagram) -> tuple[tuple[int, int, int, int], ...]:
    """PD code: each crossing as four edge labels counterclockwise from the incoming under-strand.

    Edge labels are 1..2c; the edge entering visit p (1-based, global) is
    labelled p.  Crossings are listed in label order.
    """
    out_label = {}
    p = 0
    for comp in d.components:
        start = p + 1
        for i in range(len(comp)):
            p += 1
            out_label[p] = p + 1 if i < len(comp) - 1 else start
    over_at, under_at = {}, {}
    p = 0
    for comp in d.components:
        for x in comp:
            p += 1
            (over_at if x > 0 else under_at)[abs(x)] = p
    pd = []
    for k in range(1, d.crossing_count + 1):
        u, o = under_at[k], over_at[k]
        if d.signs[k - 1] > 0:
            pd.append((u, out_label[o], out_label[u], o))
        else:
            pd.append((u, o, out_label[u], out_label[o]))
    return tuple(pd)


def diagram_from_pd(pd: Iterable[Sequence[int]]) -> Diagram:
    """Rebuild an oriented diagram from a PD code.

    Under-strands are oriented a -> c; over-strand directions follow from
    the walk.  A component made only of over-passes is oriented from its
    first slot, which the codes leave ambiguous.  An empty code is read as
    a single crossingless circle.
    """
    pd = [tuple(x) for x in pd]
    if not pd:
        return Diagram(((),), ())
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, X in enumerate(pd):
        if len(X) != 4:
            raise ParseError(f"crossing {X} does not have four labels", ci)
        for pos, lab in enumerate(X):
            slots.setdefault(lab, []).append((ci, pos))
    for lab, occ in slots.items():
        if len(occ) != 2:
            raise ParseError(f"edge label {lab} occurs {len(occ)} times", lab)
    opposite = {0: 2, 2: 0, 1: 3, 3: 1}
    used = set()
    components = []
    signs = {}
    # start each component on an incoming under-strand when it has one, so
    # the orientation agrees with the a -> c convention
    starts = sorted(slots, key=lambda lab: (all(pos != 0 for _, pos in slots[lab]), lab))
    for start in starts:
        if start in used:
            continue
        occ = slots[start]
        head = next((o for o in occ if o[1] == 0), None)
        if head is None:
            head = next((o for o in occ if o[1] != 2), occ[0])
        comp = []
        lab, slot = start, head
        while True:
            used.add(lab)
            ci, pos = slot
            out_pos = opposite[pos]
            if pos == 2:
                raise ParseError(f"under-strand of crossing {ci + 1} entered against its orientation", ci)
            if pos == 0:
                comp.append(-(ci + 1))
            else:
                comp.append(ci + 1)
                signs[ci + 1] = 1 if pos == 3 else -1
            nxt = pd[ci][out_pos]
            a, b = slots[nxt]
            slot = b if a == (ci, out_pos) else a
            lab = nxt
            if lab == start:
                break
        components.append(comp)
    return Diagram.from_code(components, signs)


# --------------------------------------------------------------------------
# simplification


def reduce_code(components: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Apply Reidemeister I and II reductions until none applies.

    Works on a circular doubly linked list of visits so each move is O(1).
    Returns the reduced components (crossingless ones dropped) and the
    number of crossingless loops produced or already present.
    """
    val: list[int] = []
    nxt: list[int] = []
    prv: list[int] = []
    starts = []
    free_loops = 0
    for comp in components:
        if not comp:
            free_loops += 1
            continue
        base = len(val)
        starts.append(base)
        L = len(comp)
        for i, x in enumerate(comp):
            val.append(x)
            nxt.append(base + (i + 1) % L)
            prv.append(base + (i - 1) % L)
    N = len(val)
    partner = [0] * N
    first = {}
    for p, x in enumerate(val):
        k = abs(x)
        if k in first:
            q = first.pop(k)
            partner[p], partner[q] = q, p
        else:
            first[k] = p
    if first:
        raise PreconditionError("every crossing must be visited exactly twice")
    alive = [True] * N

    def unlink(p):
        nonlocal free_loops
        alive[p] = False
        a, b = prv[p], nxt[p]
        if a == p:
            free_loops += 1
            return
        nxt[a] = b
        prv[b] = a

    stack = list(range(N - 1, -1, -1))
    while stack:
        x = stack.pop()
        if not alive[x]:
            continue
        y = nxt[x]
        if y == x:
            continue
        px = partner[x]
        if y == px:
            # R1: a kink
            a, b = prv[x], nxt[y]
            unlink(x)
            unlink(y)
            if alive[a]:
                stack.extend((a, prv[a], partner[a], prv[partner[a]]))
            if alive[b]:
                stack.extend((b, partner[b], prv[partner[b]]))
            continue
        if (val[x] > 0) != (val[y] > 0):
            continue
        py = partner[y]
        if nxt[px] == py or nxt[py] == px:
            # R2: a bigon with one strand over both crossings
            touched = []
            for p in (x, y, px, py):
                touched.extend((prv[p], nxt[p]))
            for p in (x, y, px, py):
                unlink(p)
            for a in touched:
                if alive[a]:
                    stack.extend((a, prv[a], partner[a], prv[partner[a]]))
    out = []
    bounds = starts[1:] + [N]
    for s, end in zip(starts, bounds):
        first_alive = next((q for q in range(s, end) if alive[q]), None)
        if first_alive is None:
            continue
        comp = []
        p = first_alive
        while True:
            comp.append(val[p])
            p = nxt[p]
            if p == first_alive:
                break
        out.append(comp)
    return out, free_loops


def simplify(d: Diagram) -> Diagram:
    comps, loops = reduce_code(d.components)
    signs = dict(enumerate(d.signs, 1))
    edges = dict(enumerate(d.edges, 1)) if d.edges else None
    return Diagram.from_code(comps + [()] * loops, signs, edges)
