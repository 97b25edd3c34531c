"""Free left restriction monoid tests: products, the unary operation, the
word-collapsing relation, generators and the seeded sampling suite."""

import pytest
from hypothesis import given, settings, strategies as st

from actionpairs import freelrm
from actionpairs.freelrm import (LRElement, PrefixSet, Sampler, act_word,
                                 all_prefix_sets, down, element, embed_word,
                                 is_atom, lr_identity, lr_plus, lr_product,
                                 min_genset, parse, prefixes, sigma_related)


def test_product_example():
    x = element(["x"], "x")
    y = element(["y"], "y")
    assert x * y == element(["x", "xy"], "xy")


def test_identity_element():
    e = lr_identity()
    a = element(["xy", "yx"], "yx")
    assert e * a == a == a * e


def test_projection_product_is_union():
    a = element(["xx"], "")
    b = element(["yy"], "")
    assert a * b == element(["xx", "yy"], "")
    assert a * b == b * a
    assert a * a == a


def test_plus_examples():
    assert lr_plus(element(["x"], "x")) == element(["x"], "")
    p = element(["xy"], "")
    assert lr_plus(p) == p
    a = element(["xy", "yx"], "yx")
    assert lr_plus(lr_plus(a)) == lr_plus(a)


def test_act_word():
    A = PrefixSet(down(["y"]))
    assert act_word("", A) == A
    assert act_word("x", PrefixSet({""})) == PrefixSet(prefixes("x"))
    assert act_word("x", A) == PrefixSet(down(["xy"]))


def test_word_embedding_projection():
    w = embed_word("xy")
    assert lr_plus(w) == element(["xy"], "")


def test_sigma():
    a = element(["x"], "x")
    b = element(["x", "y"], "x")
    assert sigma_related(a, b)
    assert not sigma_related(a, element(["x"], ""))
    assert sigma_related(a, a)


def test_min_genset():
    gens = min_genset("x", 2)
    assert element(["x"], "") in gens
    assert element(["xx"], "") in gens
    assert embed_word("x") in gens
    assert len(gens) == 3

    # the generators generate everything of bounded size
    pool = {lr_identity()}
    frontier = [lr_identity()]
    gens2 = min_genset("xy", 3)
    seen = set(pool)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens2:
                c = a * g
                if max(len(w) for w in c.pset.words) <= 3 and c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    small = {LRElement(ps, w)
             for ps in all_prefix_sets("xy", 2) for w in ps.words}
    assert small <= seen


def test_atoms():
    pool = all_prefix_sets("xy", 3)
    for w in ("x", "xy", "yxx"):
        assert is_atom(PrefixSet(prefixes(w)), pool)
    assert not is_atom(PrefixSet(down(["x", "y"])), pool)


def test_parse_round_trip():
    a = element(["xy", "y"], "xy")
    assert parse(repr(a)) == a
    assert parse("{e}@e") == lr_identity()


def test_prefix_set_validation():
    with pytest.raises(ValueError):
        PrefixSet({"xy"})
    with pytest.raises(ValueError):
        PrefixSet(set())
    with pytest.raises(ValueError):
        LRElement(PrefixSet({""}), "x")


def test_sampled_laws():
    s = Sampler(seed=0xBEEF)
    for _ in range(1000):
        x, y, z = s.element(), s.element(), s.element()
        px, py = lr_plus(x), lr_plus(y)
        assert px * x == x
        assert px * py == py * px
        assert lr_plus(px * y) == px * py
        assert x * py == lr_plus(x * y) * x
        assert px * px == px
        assert lr_plus(px) == px
        assert (x * y) * z == x * (y * z)
        # right uniqueness and properness
        if x * y == x * z:
            assert y.word == z.word
        same = (lr_plus(x) == lr_plus(y)) and sigma_related(x, y)
        assert (x == y) == same


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_proper_by_construction(seed):
    s = Sampler(seed=seed)
    x, y = s.element(), s.element()
    assert (x == y) == (lr_plus(x) == lr_plus(y) and sigma_related(x, y))
