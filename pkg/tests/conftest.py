"""Shared fixtures: small tables and naive oracles used across the suite."""

import itertools

import pytest

from actionpairs import ptrans
from actionpairs.registry import monoid_table, ptrans_table


@pytest.fixture(scope="session")
def c2():
    return monoid_table("c2")


@pytest.fixture(scope="session")
def c3():
    return monoid_table("c3")


@pytest.fixture(scope="session")
def sl2():
    return monoid_table("sl2")


@pytest.fixture(scope="session")
def t2_table():
    return ptrans_table("T", 2)


@pytest.fixture(scope="session")
def e2_table():
    return ptrans_table("E", 2)


# --- independent oracles ------------------------------------------------------

def brute_closure(gens, product):
    """Naive fixpoint closure, independent of the library's BFS engine."""
    seen = set(gens)
    changed = True
    while changed:
        changed = False
        for a in list(seen):
            for b in list(seen):
                c = product(a, b)
                if c not in seen:
                    seen.add(c)
                    changed = True
    return seen


def brute_congruence(table, pairs, side):
    """Smallest equivalence containing `pairs` compatible on the given sides,
    computed as a raw fixpoint over classes of frozensets."""
    classes = {x: {x} for x in range(table.size)}

    def merge(a, b):
        ca, cb = classes[a], classes[b]
        if ca is cb:
            return False
        cu = ca | cb
        for x in cu:
            classes[x] = cu
        return True

    work = list(pairs)
    changed = True
    for a, b in work:
        merge(a, b)
    while changed:
        changed = False
        roots = {id(c): c for c in classes.values()}
        for c in roots.values():
            base = sorted(c)
            a = base[0]
            for b in base[1:]:
                for x in range(table.size):
                    if side in ("right", "two_sided"):
                        if merge(table.mul(a, x), table.mul(b, x)):
                            changed = True
                    if side in ("left", "two_sided"):
                        if merge(table.mul(x, a), table.mul(x, b)):
                            changed = True
    return {frozenset(c) for c in classes.values()}


def all_total_maps(n):
    return [ptrans.PartialMap(n, img)
            for img in itertools.product(range(1, n + 1), repeat=n)]
