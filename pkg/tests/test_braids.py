from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from bookknots.braids import (BraidWord, braid_closure_diagram, free_reduce, parse_braid,
                              step_cycle_braid, torus_braid)
from bookknots.constructions import step_cycle
from bookknots.diagram import diagram_of_cycle, writhe
from bookknots.errors import DomainError, LinkCaseError, ParseError
from bookknots.invariants import alexander_poly, fingerprint, identify

WIDE = 64

words = st.integers(2, 4).flatmap(lambda p: st.builds(
    BraidWord, st.just(p),
    st.lists(st.integers(1, p - 1).flatmap(lambda i: st.sampled_from((i, -i))), max_size=10)
    .map(tuple)))


def test_parse_braid():
    w = parse_braid("1 1 1 1 -1 1 1 1 -1")
    assert w.strands == 2 and len(w) == 9
    assert str(w) == "1 1 1 1 -1 1 1 1 -1"
    assert parse_braid("", 3) == BraidWord(3, ())
    with pytest.raises(ParseError) as exc:
        parse_braid("1 2 x")
    assert exc.value.position == 4


def test_generator_bounds():
    with pytest.raises(DomainError):
        BraidWord(2, (2,))
    with pytest.raises(DomainError):
        BraidWord(3, (0,))
    with pytest.raises(DomainError):
        BraidWord(0, ())


def test_torus_braid():
    assert torus_braid(2, 3).letters == (1, 1, 1)
    assert torus_braid(3, 2).letters == (1, 2, 1, 2)
    with pytest.raises(DomainError):
        torus_braid(1, 3)
    with pytest.raises(DomainError):
        torus_braid(2, 0)


def test_step_cycle_braid_k9_word():
    assert str(step_cycle_braid(9, 2)) == "1 1 1 1 -1 1 1 1 -1"


def test_step_cycle_braid_errors():
    with pytest.raises(LinkCaseError):
        step_cycle_braid(10, 2)
    with pytest.raises(DomainError):
        step_cycle_braid(6, 3)
    with pytest.raises(DomainError):
        step_cycle_braid(9, 1)


@given(words)
def test_permutation_and_components(w):
    perm = w.permutation()
    assert sorted(perm) == list(range(w.strands))
    seen, cycles = set(), 0
    for s in range(w.strands):
        if s not in seen:
            cycles += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    d = braid_closure_diagram(w)
    assert d.component_count == cycles
    assert d.crossing_count == len(w)
    assert writhe(d) == w.exponent_sum()


@given(words)
def test_free_reduction_keeps_type(w):
    r = free_reduce(w)
    assert len(r) <= len(w)
    assert all(a != -b for a, b in zip(r.letters, r.letters[1:]))
    a, b = braid_closure_diagram(w), braid_closure_diagram(r)
    assert fingerprint(a, WIDE) == fingerprint(b, WIDE)


def test_multiplication_and_power():
    w = BraidWord(2, (1,))
    assert (w ** 3).letters == (1, 1, 1)
    assert (w * BraidWord(3, (2,))).strands == 3


def test_unlink_closure():
    d = braid_closure_diagram(BraidWord(4, ()))
    assert d.component_count == 4 and d.crossing_count == 0


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)])
def test_torus_theorem_instances(p, q):
    n = 2 * p + q
    cyc = fingerprint(diagram_of_cycle(n, step_cycle(n, p)), WIDE)
    assert cyc == fingerprint(braid_closure_diagram(torus_braid(p, q)), WIDE)
    assert cyc == fingerprint(braid_closure_diagram(step_cycle_braid(n, p)), WIDE)


PAIRS = [(p, q) for p in range(2, 6) for q in range(p + 1, 14)
         if gcd(p, q) == 1 and 2 * p + q <= 13]


@pytest.mark.parametrize("p,q", PAIRS)
def test_step_cycle_is_torus_knot(p, q):
    n = 2 * p + q
    a = fingerprint(diagram_of_cycle(n, step_cycle(n, p)), WIDE)
    b = fingerprint(braid_closure_diagram(torus_braid(p, q)), WIDE)
    assert a == b


@pytest.mark.parametrize("n,p", [(9, 2), (11, 2), (10, 3), (11, 3), (13, 4), (11, 4)])
def test_braid_word_matches_cycle(n, p):
    a = fingerprint(diagram_of_cycle(n, step_cycle(n, p)), WIDE)
    b = fingerprint(braid_closure_diagram(step_cycle_braid(n, p)), WIDE)
    assert a == b


def test_named_torus_knots():
    assert str(identify(braid_closure_diagram(torus_braid(2, 3)))) == "3_1"
    assert str(identify(braid_closure_diagram(torus_braid(2, 5)))) == "5_1"
    assert str(identify(braid_closure_diagram(torus_braid(3, 4)))) == "8_19"
    assert str(identify(braid_closure_diagram(torus_braid(3, 5)))) == "10_124"


def test_torus_links_from_braids():
    # (2,4) torus link and (3,3): the closures have gcd(p,q) components
    assert braid_closure_diagram(torus_braid(2, 4)).component_count == 2
    assert braid_closure_diagram(torus_braid(3, 3)).component_count == 3
    fp = fingerprint(braid_closure_diagram(torus_braid(2, 4)))
    assert fp.components == 2 and fp.alexander is None


def test_torus_knots_are_symmetric_under_pq_swap():
    for p, q in [(2, 3), (2, 5), (3, 4)]:
        a = alexander_poly(braid_closure_diagram(torus_braid(p, q)))
        b = alexander_poly(braid_closure_diagram(torus_braid(q, p)))
        assert a == b


def test_four_strand_word_closes_to_unlink():
    # not freely reducible, yet equivalent to the identity braid
    w = BraidWord(4, (1, 2, 3, 1, 2, -3, 1, -2, -3, -1, -2, -3))
    assert free_reduce(w).letters == w.letters
    d = braid_closure_diagram(w)
    assert d.component_count == 4
    assert fingerprint(d, WIDE) == fingerprint(braid_closure_diagram(BraidWord(4, ())), WIDE)
