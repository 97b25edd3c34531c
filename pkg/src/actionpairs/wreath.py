"""Tuples over M with an adjoined zero, and transformational wreath products.

A wreath element is a pair (tuple, partial map) whose tuple support equals
the map's domain; the product is (a, f)(b, g) = (a * f·b, fg) where f·b moves
entry b_{xf} to position x.  Entries are element ids of a base monoid table;
-1 is the reserved zero marker.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Optional, Sequence

from . import ptrans
from .fmonoid import CayleyTable, SizeBoundExceeded, closure_from_generators

ZERO = -1


class BaseMismatch(Exception):
    pass


class MTuple:
    """A length-n tuple over M_0 = M + {0}; entries index the base table."""

    __slots__ = ("base", "entries", "_hash")

    def __init__(self, base: CayleyTable, entries: Sequence[int]):
        if base.identity is None:
            raise ValueError("base must be a monoid table")
        entries = tuple(entries)
        if any(not (v == ZERO or 0 <= v < base.size) for v in entries):
            raise ValueError(f"bad entries {entries}")
        self.base = base
        self.entries = entries
        self._hash = hash(entries)

    def __eq__(self, other):
        return (isinstance(other, MTuple) and self.base is other.base
                and self.entries == other.entries)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MTuple({self.entries})"

    @property
    def n(self) -> int:
        return len(self.entries)

    def supp(self) -> frozenset:
        return frozenset(i + 1 for i, v in enumerate(self.entries) if v != ZERO)

    def __mul__(self, other: "MTuple") -> "MTuple":
        if self.base is not other.base or self.n != other.n:
            raise BaseMismatch("mismatched tuples")
        mul = self.base.mul
        return MTuple(self.base,
                      tuple(ZERO if a == ZERO or b == ZERO else mul(a, b)
                            for a, b in zip(self.entries, other.entries)))

    def restrict(self, points: Iterable[int]) -> "MTuple":
        keep = set(points)
        return MTuple(self.base, tuple(v if i + 1 in keep else ZERO
                                       for i, v in enumerate(self.entries)))


def ones(base: CayleyTable, n: int, support: Optional[Iterable[int]] = None) -> MTuple:
    """The indicator tuple 1_B (all-ones when no support is given)."""
    if support is None:
        return MTuple(base, (base.identity,) * n)
    keep = set(support)
    return MTuple(base, tuple(base.identity if i in keep else ZERO
                              for i in range(1, n + 1)))


def unit_tuple(base: CayleyTable, n: int, pos: int, a: int) -> MTuple:
    """Full-support tuple with entry a at pos and identities elsewhere."""
    return MTuple(base, tuple(a if i == pos else base.identity
                              for i in range(1, n + 1)))


def act(a: ptrans.PartialMap, t: MTuple) -> MTuple:
    """Position x of the result reads entry xa of t when x is in dom(a), else 0."""
    if a.n != t.n:
        raise ptrans.DegreeMismatch(f"degrees {a.n} and {t.n}")
    ent = t.entries
    return MTuple(t.base, tuple(ZERO if v == ptrans.UNDEF else ent[v - 1]
                                for v in a.img))


class WreathElement:
    __slots__ = ("tup", "pmap", "_hash")

    def __init__(self, tup: MTuple, pmap: ptrans.PartialMap):
        if tup.n != pmap.n:
            raise ptrans.DegreeMismatch(f"degrees {tup.n} and {pmap.n}")
        if tup.supp() != pmap.dom():
            raise ValueError("support must equal the map's domain")
        self.tup = tup
        self.pmap = pmap
        self._hash = hash((tup.entries, pmap.img))

    def __eq__(self, other):
        return (isinstance(other, WreathElement) and self.tup == other.tup
                and self.pmap == other.pmap)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"WreathElement({self.tup.entries}, {self.pmap.two_line()!r})"

    def __mul__(self, other):
        return wr_product(self, other)

    def to_json(self) -> str:
        return json.dumps({
            "tuple": [None if v == ZERO else v for v in self.tup.entries],
            "map": [None if v == ptrans.UNDEF else v for v in self.pmap.img],
        })

    @staticmethod
    def from_json(base: CayleyTable, text: str) -> "WreathElement":
        d = json.loads(text)
        tup = MTuple(base, tuple(ZERO if v is None else v for v in d["tuple"]))
        pmap = ptrans.PartialMap(
            len(d["map"]),
            tuple(ptrans.UNDEF if v is None else v for v in d["map"]))
        return WreathElement(tup, pmap)

    def diagram(self) -> str:
        """Two-row picture: labelled top vertices over the map's two-line form."""
        lab = " ".join("." if v == ZERO else str(v) for v in self.tup.entries)
        return f"[{lab}] over {self.pmap.two_line()}"


def wr_product(x: WreathElement, y: WreathElement) -> WreathElement:
    if x.tup.base is not y.tup.base:
        raise BaseMismatch("different base monoids")
    return WreathElement(x.tup * act(x.pmap, y.tup), x.pmap * y.pmap)


def wr_plus(x: WreathElement) -> WreathElement:
    """The embedded partial identity on dom of the map part."""
    d = x.pmap.dom()
    return WreathElement(ones(x.tup.base, x.tup.n, d), ptrans.id_on(d, x.tup.n))


def embed_pmap(base: CayleyTable, a: ptrans.PartialMap) -> WreathElement:
    return WreathElement(ones(base, a.n, a.dom()), a)


def embed_tuple(t: MTuple) -> WreathElement:
    return WreathElement(t, ptrans.id_on(t.supp(), t.n))


def wreath_identity(base: CayleyTable, n: int) -> WreathElement:
    return WreathElement(ones(base, n), ptrans.identity(n))


def wreath_elements(M: CayleyTable, kind: str, n: int) -> list[WreathElement]:
    """All pairs (tuple, map) with map in the family and support = domain."""
    out = []
    for a in ptrans.family(kind, n):
        dom = sorted(a.dom())
        for assign in itertools.product(range(M.size), repeat=len(dom)):
            ent = [ZERO] * n
            for p, v in zip(dom, assign):
                ent[p - 1] = v
            out.append(WreathElement(MTuple(M, ent), a))
    return out


def wreath_size(M_size: int, kind: str, n: int) -> int:
    """Sum over the family of |M|^(domain size); an independent counting oracle."""
    return sum(M_size ** len(a.dom()) for a in ptrans.family(kind, n))


def wreath_gens(M: CayleyTable, kind: str, n: int) -> Optional[list[WreathElement]]:
    """Natural generators: embedded per-coordinate base generators, embedded
    family generators, and the corank-one partial identities where the family
    has partial maps.  None when no standard set is known."""
    xs = [unit_tuple(M, n, i, g) for i in range(1, n + 1) for g in M.gens]
    ts = [ptrans.id_on(set(range(1, n + 1)) - {i}, n) for i in range(1, n + 1)]
    if kind in ("T", "G"):
        return [embed_tuple(t) for t in xs] + [embed_pmap(M, a) for a in ptrans.family_gens(kind, n)]
    if kind in ("PT", "I"):
        inner = "T" if kind == "PT" else "G"
        return ([embed_tuple(t) for t in xs]
                + [embed_pmap(M, a) for a in ptrans.family_gens(inner, n)]
                + [embed_pmap(M, t) for t in ts])
    if kind == "SingT":
        # one generator per idempotent eps and per pair of base elements
        return [WreathElement(MTuple(M, tuple(
                    a if k == i else (b if k == j else M.identity)
                    for k in range(1, n + 1))), ptrans.eps(i, j, n))
                for i in range(1, n + 1) for j in range(1, n + 1) if i != j
                for a in range(M.size) for b in range(M.size)]
    if kind == "SingPT":
        return wreath_gens(M, "SingT", n) + [embed_pmap(M, t) for t in ts]
    return None


def enumerate_wreath(M: CayleyTable, kind: str, n: int, *,
                     cap: int = 200_000) -> CayleyTable:
    """Cayley table of the wreath product of M with a named family.

    The element set is produced exhaustively, then numbered by a generator
    closure (falling back to the full element list as generators when no
    standard generating set covers the family).
    """
    elems = wreath_elements(M, kind, n)
    if len(elems) > cap:
        raise SizeBoundExceeded(f"wreath product has {len(elems)} elements")
    eset = set(elems)
    ident = wreath_identity(M, n)
    identity = ident if ident in eset else None
    gens = wreath_gens(M, kind, n)
    if gens is not None:
        try:
            t = closure_from_generators(gens, wr_product, identity_hint=identity,
                                        cap=len(elems) + 1)
            if t.size == len(elems):
                return t
        except SizeBoundExceeded:
            pass
    ordered = sorted(elems, key=lambda w: (w.pmap.img, w.tup.entries))
    gens = [w for w in ordered if identity is None or w != identity]
    return closure_from_generators(gens, wr_product, identity_hint=identity,
                                   cap=len(elems) + 1)
