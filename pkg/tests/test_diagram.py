import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from bookknots.diagram import (Cycle, Diagram, canonical_vertices, chord_tables, diagram_from_pd,
                               diagram_of_cycle, dt_code, gauss_code, parse_cycle, pd_code,
                               reduce_code, simplify, writhe)
from bookknots.embedding import BookEmbedding, crosses
from bookknots.errors import DomainError, ParseError, PreconditionError
from bookknots.invariants import alexander_poly, determinant, fingerprint, identify

TREFOIL = (1, 3, 5, 7, 2, 4, 6)


@st.composite
def cycles(draw, min_n=3, max_n=11, hamiltonian=False):
    n = draw(st.integers(min_n, max_n))
    k = n if hamiltonian else draw(st.integers(3, n))
    vs = draw(st.permutations(range(1, n + 1)))[:k]
    return Cycle(tuple(vs), n)


def interleaved_pairs(c):
    es = c.edges()
    return sum(crosses(e, f) for e, f in combinations(es, 2))


# --- cycles ------------------------------------------------------------------

def test_parse_and_format():
    c = parse_cycle("(1,3,5,7,2,4,6)")
    assert c.vertices == TREFOIL and c.n == 7
    assert str(c) == "(1,3,5,7,2,4,6)"
    assert parse_cycle(" ( 1, 2 ,3 ) ", 5).n == 5


@pytest.mark.parametrize("text,pos", [("1,2,3)", 0), ("(1,2,3", 5), ("(1,2,x)", 5), ("(1,,3)", 3)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_cycle(text)
    assert exc.value.position == pos
    assert f"position {pos}" in str(exc.value)


def test_cycle_validation():
    with pytest.raises(DomainError):
        Cycle((1, 2), 5)
    with pytest.raises(DomainError):
        Cycle((1, 2, 2), 5)
    with pytest.raises(DomainError):
        Cycle((1, 2, 9), 5)


@given(cycles())
def test_canonical_form_is_dihedral_invariant(c):
    canon = c.canonical().vertices
    assert canon[0] == min(c.vertices)
    assert canon[1] < canon[-1]
    for k in range(len(c)):
        assert c.rotated(k).canonical().vertices == canon
        assert c.rotated(k).reversed().canonical().vertices == canon
    assert canonical_vertices(canon) == canon


# --- geometry ----------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 21))
def test_no_triple_points(n):
    # building the tables raises if three chords ever meet at a point
    tab = chord_tables(n)
    pairs = sum(1 for a, b, c, d in combinations(range(1, n + 1), 4))
    # every 4-subset of vertices gives exactly one crossing pair
    assert len(tab.over) == 2 * pairs


@settings(max_examples=300)
@given(cycles())
def test_crossing_count_is_interleaved_pairs(c):
    d = diagram_of_cycle(c.n, c)
    assert d.crossing_count == interleaved_pairs(c)
    assert all(len(comp) == 2 * d.crossing_count for comp in d.components)


@settings(max_examples=200)
@given(cycles(min_n=4))
def test_over_strands_follow_embedding(c):
    emb = BookEmbedding(c.n)
    d = diagram_of_cycle(c.n, c)
    for x in d.crossings:
        assert emb.over_edge(x.over_edge, x.under_edge) == x.over_edge


def test_trefoil_diagram():
    raw = diagram_of_cycle(7, Cycle(TREFOIL, 7))
    assert raw.crossing_count == interleaved_pairs(Cycle(TREFOIL, 7)) == 7
    d = simplify(raw)
    assert d.crossing_count == 3
    assert writhe(d) == 3
    assert dt_code(d) == (-4, -6, -2)
    assert str(identify(d)) == "3_1"


def test_boundary_cycle_has_no_crossings():
    for n in range(3, 15):
        d = diagram_of_cycle(n, Cycle(tuple(range(1, n + 1)), n))
        assert d.crossing_count == 0


def test_diagram_of_cycle_errors():
    with pytest.raises(DomainError):
        diagram_of_cycle(6, Cycle(TREFOIL, 7))
    with pytest.raises(DomainError):
        diagram_of_cycle(7, (1, 2))


# --- codes -------------------------------------------------------------------

def _pairing(d):
    """Crossing partner structure of the walk, independent of labels."""
    walk = [x for comp in d.components for x in comp]
    pos = {}
    for p, x in enumerate(walk):
        pos.setdefault(abs(x), []).append(p)
    partner = {}
    for p, q in pos.values():
        partner[p], partner[q] = q, p
    over = tuple(x > 0 for x in walk)
    sign_at = tuple(d.signs[abs(x) - 1] for x in walk)
    return tuple(partner[p] for p in range(len(walk))), over, sign_at


def same_walk(a, b):
    """Knot diagrams with equal pairings up to the choice of starting visit."""
    pa, oa, sa = _pairing(a)
    pb, ob, sb = _pairing(b)
    L = len(pa)
    for r in range(L):
        if all(pb[p] == (pa[(p + r) % L] - r) % L and ob[p] == oa[(p + r) % L]
               and sb[p] == sa[(p + r) % L] for p in range(L)):
            return True
    return False


def _from_dt(dt):
    """Rebuild the over/under pairing from a DT code (oracle for dt_code)."""
    c = len(dt)
    walk = [None] * (2 * c)
    for i, e in enumerate(dt):
        odd, even = 2 * i + 1, abs(e)
        walk[odd - 1] = (i, e > 0)
        walk[even - 1] = (i, e < 0)
    return walk


@settings(max_examples=200)
@given(cycles(min_n=5))
def test_dt_code_reconstructs_pairing(c):
    d = diagram_of_cycle(c.n, c)
    if d.crossing_count == 0:
        assert dt_code(d) == ()
        return
    walk = _from_dt(dt_code(d))
    first = {}
    for p, x in enumerate(d.components[0]):
        first.setdefault(abs(x), p)
    for p, x in enumerate(d.components[0]):
        q = first[abs(x)]
        assert walk[p][0] == walk[q][0]
        assert walk[p][1] == (x > 0)


@settings(max_examples=200)
@given(cycles(min_n=5))
def test_pd_roundtrip(c):
    d = diagram_of_cycle(c.n, c)
    pd = pd_code(d)
    assert sorted(lab for x in pd for lab in x) == sorted(list(range(1, 2 * len(pd) + 1)) * 2)
    back = diagram_from_pd(pd)
    if d.crossing_count:
        assert same_walk(d, back)
    assert alexander_poly(back) == alexander_poly(d)


def test_gauss_code():
    d = simplify(diagram_of_cycle(7, Cycle(TREFOIL, 7)))
    g = gauss_code(d)
    assert sorted(abs(x) for x in g.components[0]) == [1, 1, 2, 2, 3, 3]
    assert g.signs == (1, 1, 1)
    assert str(g).count(",") == 5


def test_pd_errors():
    with pytest.raises(ParseError):
        diagram_from_pd([(1, 2, 3)])
    with pytest.raises(ParseError):
        diagram_from_pd([(1, 2, 3, 4), (1, 2, 3, 5)])


def test_dt_rejects_links():
    d = Diagram(((1, -2), (2, -1)), (1, 1))
    with pytest.raises(DomainError):
        dt_code(d)


def test_mirror_and_reverse():
    d = simplify(diagram_of_cycle(7, Cycle(TREFOIL, 7)))
    assert writhe(d.mirror()) == -3
    assert writhe(d.reverse()) == 3
    assert d.mirror().mirror() == d


# --- simplification ----------------------------------------------------------

def test_reduce_code_moves():
    # a kink
    comps, loops = reduce_code([[1, -1]])
    assert comps == [] and loops == 1
    # a bigon
    comps, loops = reduce_code([[1, 2, -1, -2]])
    assert comps == [] and loops == 1
    # the trefoil is already reduced
    comps, loops = reduce_code([[1, -2, 3, -1, 2, -3]])
    assert comps == [[1, -2, 3, -1, 2, -3]] and loops == 0
    with pytest.raises(PreconditionError):
        reduce_code([[1, 2, -1]])


def test_reduce_keeps_empty_components():
    comps, loops = reduce_code([[], [1, -1]])
    assert comps == [] and loops == 2


def test_simplify_on_random_cycles():
    rng = random.Random(7)
    checked = 0
    for _ in range(1000):
        n = rng.randint(3, 11)
        k = rng.randint(3, n)
        vs = rng.sample(range(1, n + 1), k)
        d = diagram_of_cycle(n, vs)
        s = simplify(d)
        assert s.crossing_count <= d.crossing_count
        assert s.component_count == 1
        assert alexander_poly(s) == alexander_poly(d)
        assert determinant(s) == determinant(d)
        checked += 1
    assert checked == 1000


@settings(max_examples=150, deadline=None)
@given(cycles(min_n=7, max_n=10, hamiltonian=True), st.integers(0, 20))
def test_fingerprint_invariant_under_rotation_and_reversal(c, k):
    fp = fingerprint(diagram_of_cycle(c.n, c))
    assert fingerprint(diagram_of_cycle(c.n, c.rotated(k))) == fp
    assert fingerprint(diagram_of_cycle(c.n, c.reversed())) == fp


# --- independent 3D oracle ---------------------------------------------------

def test_book_model_oracle_on_random_cycles():
    import book3d

    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(7, 11)
        vs = rng.sample(range(1, n + 1), n)
        ours = fingerprint(diagram_of_cycle(n, vs), 64)
        theirs = fingerprint(book3d.diagram(n, vs), 64)
        assert ours.matches(theirs), vs
