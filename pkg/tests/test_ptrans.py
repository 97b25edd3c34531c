"""Partial transformation tests: composition, families, unary structure."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from actionpairs import ptrans
from actionpairs.ptrans import (BadParams, DegreeMismatch, PartialMap, compose,
                                eps, empty_map, family, family_gens,
                                family_size, from_images, id_on, identity,
                                plus, tau)


def test_compose_product_figure():
    a = from_images([2, None, 3, 2, 6, 6])
    b = from_images([1, 1, None, 4, None, 4])
    assert (a * b).img == (1, 0, 0, 1, 4, 4)


def test_identity_and_empty_absorption():
    a = from_images([2, None, 3, 2, 6, 6])
    assert identity(6) * a == a == a * identity(6)
    assert empty_map(6) * a == empty_map(6)
    assert (a * empty_map(6)) == empty_map(6)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(identity(2), identity(3))


def test_plus_examples():
    a = from_images([2, None, 3, 2, 6, 6])
    assert plus(a) == id_on({1, 3, 4, 5, 6}, 6)
    b = id_on({2, 5}, 6)
    assert plus(b) == b
    assert plus(from_images([3, 1, 2])) == identity(3)


def test_constructors():
    assert eps(2, 4, 6).img == (1, 2, 3, 2, 5, 6)
    assert tau(1, 2, 2).img == (2, 1)
    assert id_on(set(), 3) == empty_map(3)
    with pytest.raises(BadParams):
        eps(2, 2, 4)
    with pytest.raises(BadParams):
        id_on({5}, 3)


def test_attributes():
    a = from_images([2, None, 3, 2, 6, 6])
    assert a.dom() == frozenset({1, 3, 4, 5, 6})
    assert a.im() == frozenset({2, 3, 6})
    assert a.rank() == 3
    assert not a.is_total() and not a.is_injective()
    assert a.ker() == frozenset({frozenset({1, 4}), frozenset({3}),
                                 frozenset({5, 6})})


def test_family_sizes_against_formulas():
    for kind in ptrans.FAMILY_KINDS:
        for n in range(0, 4):
            assert len(family(kind, n)) == family_size(kind, n), (kind, n)
    assert family_size("PT", 2) == 9
    assert family_size("T", 3) == 27
    assert family_size("G", 3) == 6
    assert family_size("I", 2) == 7


def test_sing_t2_elements():
    assert family("SingT", 2) == [from_images([1, 1]), from_images([2, 2])]


def test_family_gens_generate():
    from conftest import brute_closure
    for kind, n in [("G", 3), ("T", 3), ("PT", 3), ("I", 3), ("E", 4),
                    ("SingT", 3), ("SingPT", 3)]:
        gens = family_gens(kind, n)
        got = brute_closure(gens, compose)
        want = set(family(kind, n))
        if identity(n) in want and identity(n) not in got:
            got.add(identity(n))
        assert got == want, (kind, n)


# --- unary identities ------------------------------------------------------------

def left_restriction_laws(elements):
    for x in elements:
        assert plus(x) * x == x                               # absorb on the left
    for x in elements:
        for y in elements:
            px, py = plus(x), plus(y)
            assert px * py == py * px                         # projections commute
            assert plus(px * y) == px * py                    # plus is a prefix
            assert x * py == plus(x * y) * x                  # shift a projection
            # derived laws: idempotency of the projections and of plus
            assert px * px == px
            assert plus(px) == px


def test_left_restriction_identities_small():
    for n in (0, 1, 2, 3):
        left_restriction_laws(family("PT", n))


def test_partial_identity_shift_laws():
    # alpha restricted on either side by a partial identity
    for n in (2, 3):
        pts = set(range(1, n + 1))
        for a in family("PT", n):
            for r in range(n + 1):
                for sub in itertools.combinations(sorted(pts), r):
                    ida = id_on(sub, n)
                    assert a * ida == id_on(a.preimage(sub), n) * a
                    assert ida * a == a.restrict(sub)


def test_rank_submultiplicative():
    for a in family("PT", 3):
        for b in family("PT", 3):
            assert (a * b).rank() <= min(a.rank(), b.rank())


def test_family_product_identities():
    for n in (2, 3, 4):
        E = family("E", n)
        T = family("T", n)
        G = family("G", n)
        SingE = family("SingE", n)
        SingT = family("SingT", n)
        prod = lambda A, B: {a * b for a in A for b in B}
        assert prod(E, T) == set(family("PT", n))
        assert prod(E, SingT) == set(family("SingPT", n))
        assert prod(SingE, T) == set(family("PTminusT", n))
        assert prod(SingE, SingT) == set(family("PTminusT", n))
        assert prod(E, G) == set(family("I", n))
        assert prod(SingE, G) == set(family("SingI", n))


# --- text and JSON ----------------------------------------------------------------

def test_two_line_round_trip():
    a = from_images([2, None, 3, 2, 6, 6])
    assert a.two_line() == "1 2 3 4 5 6 / 2 - 3 2 6 6"
    assert PartialMap.from_two_line(a.two_line()) == a
    with pytest.raises(BadParams):
        PartialMap.from_two_line("1 3 2 / 1 2 3")


def test_json_round_trip():
    a = from_images([2, None, 3, 2, 6, 6])
    assert PartialMap.from_json(a.to_json()) == a


@settings(max_examples=50, deadline=None)
@given(st.lists(st.one_of(st.none(), st.integers(1, 4)), min_size=4, max_size=4),
       st.lists(st.one_of(st.none(), st.integers(1, 4)), min_size=4, max_size=4),
       st.lists(st.one_of(st.none(), st.integers(1, 4)), min_size=4, max_size=4))
def test_composition_associative(xa, xb, xc):
    a, b, c = from_images(xa), from_images(xb), from_images(xc)
    assert (a * b) * c == a * (b * c)
