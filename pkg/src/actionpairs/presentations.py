"""Builders for the catalogue of concrete presentations, each paired with
machine verification against an enumerated target.

Every builder returns a PresentationBundle: the presentation, the target
table (ground truth by direct enumeration; absent for the free-monoid
truncations, which are checked inside the model instead), and the letter
map realizing the generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import freelrm, ptrans, wreath
from .actionpair import (ActionTable, AmbientContext, HypothesisFailed,
                         check_pair_from_plus, semidirect, theta_and_friends)
from .fmonoid import (CayleyTable, Presentation, VerificationReport, Word,
                      congruence_closure, subtable, table_from_elements,
                      table_presentation, verify_presentation)


@dataclass
class PresentationBundle:
    pres: Presentation
    target: Optional[CayleyTable]
    gen_map: Optional[tuple]
    provenance: str
    expected_verify: bool = True
    notes: dict = field(default_factory=dict)

    def verify(self) -> VerificationReport:
        if self.target is None:
            raise ValueError(f"{self.provenance}: no finite target to verify against")
        return verify_presentation(self.pres, self.target, self.gen_map)

    def relations_hold_in(self, letter_values: Sequence, product: Callable,
                          identity=None) -> bool:
        """Evaluate every relation in an external model (used for the
        free-monoid truncations, whose targets are infinite)."""
        def ev(word: Word):
            if not word:
                return identity
            x = letter_values[word[0]]
            for k in word[1:]:
                x = product(x, letter_values[k])
            return x
        return all(ev(u) == ev(v) for u, v in self.pres.relations)


def _payload_index(table: CayleyTable) -> dict:
    return {e: i for i, e in enumerate(table.elements)}


def normal_forms_over(m: CayleyTable, letter_images: Sequence[int], *,
                      identity: Optional[int] = None) -> dict:
    """Shortlex-first words over the letters reaching elements of m by
    right multiplication (the identity, when given, gets the empty word)."""
    nf: dict = {}
    order = []
    if identity is not None:
        nf[identity] = ()
        order.append(identity)
    for k, e in enumerate(letter_images):
        if e not in nf:
            nf[e] = (k,)
            order.append(e)
    i = 0
    while i < len(order):
        e = order[i]
        i += 1
        for k, g in enumerate(letter_images):
            t = m.mul(e, g)
            if t not in nf:
                nf[t] = nf[e] + (k,)
                order.append(t)
    return nf


def delete_letters(pres: Presentation, drop: Sequence[str]) -> Presentation:
    """Remove letters and every relation mentioning them, renumbering."""
    dropset = {pres.letter(name) for name in drop}
    keep = [i for i in range(len(pres.alphabet)) if i not in dropset]
    remap = {old: new for new, old in enumerate(keep)}
    rels = [(tuple(remap[i] for i in u), tuple(remap[i] for i in v))
            for u, v in pres.relations
            if not (set(u) | set(v)) & dropset]
    return Presentation.make([pres.alphabet[i] for i in keep], rels, pres.kind)


# ---------------------------------------------------------------------------
# Transformation families
# ---------------------------------------------------------------------------

def _en(n: int) -> PresentationBundle:
    names = [f"t{i}" for i in range(1, n + 1)]
    rels = [((i, i), (i,)) for i in range(n)]
    rels += [((i, j), (j, i)) for i in range(n) for j in range(n)]
    pres = Presentation.make(names, rels, "monoid")
    from .registry import ptrans_table
    target = ptrans_table("E", n)
    idx = _payload_index(target)
    pts = set(range(1, n + 1))
    gen_map = tuple(idx[ptrans.id_on(pts - {i}, n)] for i in range(1, n + 1))
    return PresentationBundle(pres, target, gen_map, f"En(n={n})")


def _gn(n: int) -> PresentationBundle:
    if n < 2:
        raise ValueError("the symmetric presentation needs n >= 2")
    names = [f"s{i}" for i in range(1, n)]
    rels = [((i, i), ()) for i in range(n - 1)]
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            if j - i > 1:
                rels.append(((i, j), (j, i)))
            else:
                rels.append(((i, j, i), (j, i, j)))
    pres = Presentation.make(names, rels, "monoid")
    from .registry import ptrans_table
    target = ptrans_table("G", n)
    idx = _payload_index(target)
    gen_map = tuple(idx[ptrans.tau(i, i + 1, n)] for i in range(1, n))
    return PresentationBundle(pres, target, gen_map, f"Gn(n={n})")


def _tn_letters(n: int):
    names = [f"s{i}" for i in range(1, n)] + [f"l{i}" for i in range(1, n)] + \
            [f"r{i}" for i in range(1, n)]
    s = lambda i: i - 1
    l = lambda i: (n - 1) + i - 1
    r = lambda i: 2 * (n - 1) + i - 1
    return names, s, l, r


def _tn_relations(n: int):
    _, s, l, r = _tn_letters(n)
    R = []
    for i in range(1, n):
        R.append(((s(i), s(i)), ()))
        R += [((l(i),), (l(i), l(i))), ((l(i),), (r(i), l(i))),
              ((l(i),), (s(i), l(i))), ((l(i),), (r(i), s(i)))]
        R += [((r(i),), (r(i), r(i))), ((r(i),), (l(i), r(i))),
              ((r(i),), (s(i), r(i))), ((r(i),), (l(i), s(i)))]
    for i in range(1, n - 1):
        R.append(((l(i), l(i + 1)), (l(i), s(i + 1))))
        R.append(((r(i + 1), r(i)), (r(i + 1), s(i))))
        R.append(((l(i), r(i + 1)), (l(i),)))
        R.append(((r(i + 1), l(i)), (r(i + 1),)))
        R.append(((l(i + 1), l(i)), (l(i), l(i + 1), l(i))))
        R.append(((l(i + 1), l(i)), (l(i + 1), l(i), l(i + 1))))
        R.append(((r(i), r(i + 1)), (r(i), r(i + 1), r(i))))
        R.append(((r(i), r(i + 1)), (r(i + 1), r(i), r(i + 1))))
        R.append(((l(i + 1), s(i)), (s(i), s(i + 1), l(i), l(i + 1))))
        R.append(((r(i), s(i + 1)), (s(i + 1), s(i), r(i + 1), r(i))))
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) > 1:
                R.append(((s(i), s(j)), (s(j), s(i))))
                R.append(((l(i), l(j)), (l(j), l(i))))
                R.append(((r(i), r(j)), (r(j), r(i))))
                R.append(((s(i), l(j)), (l(j), s(i))))
                R.append(((s(i), r(j)), (r(j), s(i))))
            elif j == i + 1:
                R.append(((s(i), s(j), s(i)), (s(j), s(i), s(j))))
            if j not in (i, i + 1):
                R.append(((l(i), r(j)), (r(j), l(i))))
    return R


def _tn(n: int) -> PresentationBundle:
    if n < 2:
        raise ValueError("the full transformation presentation needs n >= 2")
    names, s, l, r = _tn_letters(n)
    pres = Presentation.make(names, _tn_relations(n), "monoid")
    from .registry import ptrans_table
    target = ptrans_table("T", n)
    idx = _payload_index(target)
    gm = [idx[ptrans.tau(i, i + 1, n)] for i in range(1, n)]
    gm += [idx[ptrans.eps(i, i + 1, n)] for i in range(1, n)]
    gm += [idx[ptrans.eps(i + 1, i, n)] for i in range(1, n)]
    return PresentationBundle(pres, target, tuple(gm), f"Tn(n={n})")


# ---------------------------------------------------------------------------
# Tuple monoids over a base monoid
# ---------------------------------------------------------------------------

def _base_letters(M: CayleyTable):
    """Letters of the multiplication-table presentation of the base monoid."""
    mp, elems = table_presentation(M)
    return mp, elems


def _tuples_table(M: CayleyTable, n: int, *, with_zero: bool) -> CayleyTable:
    vals = list(range(M.size)) + ([wreath.ZERO] if with_zero else [])
    def mul(a, b):
        return tuple(wreath.ZERO if (x == wreath.ZERO or y == wreath.ZERO)
                     else M.mul(x, y) for x, y in zip(a, b))
    elems = sorted(itertools.product(vals, repeat=n))
    ident = (M.identity,) * n
    gens = [tuple(g if k == i else M.identity for k in range(n))
            for i in range(n) for g in M.gens]
    if with_zero:
        gens += [tuple(wreath.ZERO if k == i else M.identity for k in range(n))
                 for i in range(n)]
    if not gens:
        gens = None
    t = table_from_elements(elems, mul, gens=gens, identity=ident)
    return t


def _coordinate_relations(M: CayleyTable, n: int):
    """Per-coordinate copies of the base relations plus cross-coordinate
    commuting; returns (letter names, relations, base letters per coordinate)."""
    mp, elems = _base_letters(M)
    k = len(mp.alphabet)
    names = [f"{mp.alphabet[j]}^{i}" for i in range(1, n + 1) for j in range(k)]
    def lid(i, j):          # coordinate i in 1..n, base letter j
        return (i - 1) * k + j
    rels = []
    for i in range(1, n + 1):
        for u, v in mp.relations:
            rels.append((tuple(lid(i, j) for j in u), tuple(lid(i, j) for j in v)))
    for i in range(1, n + 1):
        for i2 in range(1, n + 1):
            if i != i2:
                for j in range(k):
                    for j2 in range(k):
                        rels.append(((lid(i, j), lid(i2, j2)),
                                     (lid(i2, j2), lid(i, j))))
    return names, rels, k, elems, lid


def _mn(M: CayleyTable, n: int) -> PresentationBundle:
    names, rels, k, elems, lid = _coordinate_relations(M, n)
    pres = Presentation.make(names, rels, "monoid")
    target = _tuples_table(M, n, with_zero=False)
    idx = _payload_index(target)
    gm = tuple(idx[tuple(elems[j] if p == i else M.identity for p in range(1, n + 1))]
               for i in range(1, n + 1) for j in range(k))
    return PresentationBundle(pres, target, gm, f"Mn(|M|={M.size}, n={n})")


def _m0n(M: CayleyTable, n: int) -> PresentationBundle:
    names, rels, k, elems, lid = _coordinate_relations(M, n)
    base = len(names)
    names = names + [f"t{i}" for i in range(1, n + 1)]
    def tid(i):
        return base + i - 1
    for i in range(n):
        rels.append(((tid(i + 1), tid(i + 1)), (tid(i + 1),)))
        for j in range(n):
            rels.append(((tid(i + 1), tid(j + 1)), (tid(j + 1), tid(i + 1))))
    for i in range(1, n + 1):
        for i2 in range(1, n + 1):
            for j in range(k):
                if i != i2:
                    rels.append(((tid(i), lid(i2, j)), (lid(i2, j), tid(i))))
                else:
                    rels.append(((tid(i), lid(i, j)), (tid(i),)))
                    rels.append(((lid(i, j), tid(i)), (tid(i),)))
    pres = Presentation.make(names, rels, "monoid")
    target = _tuples_table(M, n, with_zero=True)
    idx = _payload_index(target)
    gm = [idx[tuple(elems[j] if p == i else M.identity for p in range(1, n + 1))]
          for i in range(1, n + 1) for j in range(k)]
    gm += [idx[tuple(wreath.ZERO if p == i else M.identity for p in range(1, n + 1))]
           for i in range(1, n + 1)]
    return PresentationBundle(pres, target, tuple(gm), f"M0n(|M|={M.size}, n={n})")


# ---------------------------------------------------------------------------
# Wreath products
# ---------------------------------------------------------------------------

def _wr_element(M: CayleyTable, n: int, i: int, j: int, a: int, b: int):
    ent = [M.identity] * n
    ent[i - 1], ent[j - 1] = a, b
    return wreath.WreathElement(wreath.MTuple(M, ent), ptrans.eps(i, j, n))


def _mwr_sing_tn_relations(M: CayleyTable, n: int, L):
    mul = M.mul
    Ms = range(M.size)
    one = M.identity
    R = []
    for i, j in itertools.permutations(range(1, n + 1), 2):
        for a, b, c, d in itertools.product(Ms, repeat=4):
            lhs = (L(i, j, a, b), L(i, j, c, d))
            mid = (L(i, j, mul(a, c), mul(b, c)),)
            R.append((lhs, mid))
            R.append((mid, (L(j, i, b, a), L(i, j, d, c))))
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        for a, b, c, d in itertools.product(Ms, repeat=4):
            R.append(((L(i, j, a, b), L(k, l, c, d)),
                      (L(k, l, c, d), L(i, j, a, b))))
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        for a, b, c in itertools.product(Ms, repeat=3):
            R.append(((L(i, k, a, b), L(j, k, one, c)), (L(i, k, a, b),)))
            R.append(((L(i, k, a, b), L(j, k, c, one)),
                      (L(k, i, b, a), L(j, i, c, one), L(i, k, one, one))))
        for a, b in itertools.product(Ms, repeat=2):
            R.append(((L(i, k, a, a), L(j, k, b, one)),
                      (L(i, k, one, one), L(j, k, b, one), L(i, k, a, one))))
        for a, b, c, d in itertools.product(Ms, repeat=4):
            lhs = (L(i, j, a, b), L(i, k, c, d))
            mid = (L(i, k, mul(a, c), d), L(i, j, one, mul(b, c)))
            R.append((lhs, mid))
            R.append((mid, (L(j, k, mul(b, c), d), L(i, j, mul(a, c), one))))
            lhs2 = (L(i, j, c, mul(a, d)), L(i, k, one, mul(b, d)))
            mid2 = (L(i, k, c, mul(b, d)), L(i, j, one, mul(a, d)))
            R.append((lhs2, mid2))
            R.append((mid2, (L(j, k, a, b), L(i, j, c, d))))
        R.append(((L(k, i, one, one), L(i, j, one, one), L(j, k, one, one)),
                  (L(i, k, one, one), L(k, j, one, one), L(j, i, one, one),
                   L(i, k, one, one))))
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        R.append(((L(k, i, one, one), L(i, j, one, one), L(j, k, one, one),
                   L(k, l, one, one)),
                  (L(i, k, one, one), L(k, l, one, one), L(l, i, one, one),
                   L(i, j, one, one), L(j, l, one, one))))
    return R


def _mwr_sing_tn(M: CayleyTable, n: int) -> PresentationBundle:
    if n < 2:
        raise ValueError("singular wreath presentations need n >= 2")
    pairs = list(itertools.permutations(range(1, n + 1), 2))
    Ms = range(M.size)
    combos = [(i, j, a, b) for (i, j) in pairs
              for a in Ms for b in Ms]
    pos = {c: idx for idx, c in enumerate(combos)}
    names = [f"e{i}{j};{a},{b}" for (i, j, a, b) in combos]
    def L(i, j, a, b):
        return pos[(i, j, a, b)]
    pres = Presentation.make(names, _mwr_sing_tn_relations(M, n, L), "semigroup")
    target = wreath.enumerate_wreath(M, "SingT", n)
    idx = _payload_index(target)
    gm = tuple(idx[_wr_element(M, n, i, j, a, b)] for (i, j, a, b) in combos)
    return PresentationBundle(pres, target, gm,
                              f"MwrSingTn(|M|={M.size}, n={n})")


def _mwr_sing_ptn(M: CayleyTable, n: int) -> PresentationBundle:
    inner = _mwr_sing_tn(M, n)
    base = len(inner.pres.alphabet)
    names = list(inner.pres.alphabet) + [f"t{i}" for i in range(1, n + 1)]
    def T(i):
        return base + i - 1
    combos = [(i, j, a, b) for (i, j) in itertools.permutations(range(1, n + 1), 2)
              for a in range(M.size) for b in range(M.size)]
    pos = {c: k for k, c in enumerate(combos)}
    def L(i, j, a, b):
        return pos[(i, j, a, b)]
    one = M.identity
    rels = list(inner.pres.relations)
    for i in range(1, n + 1):
        rels.append(((T(i), T(i)), (T(i),)))
        for j in range(1, n + 1):
            rels.append(((T(i), T(j)), (T(j), T(i))))
    for (i, j, a, b) in combos:
        for k in range(1, n + 1):
            e = L(i, j, a, b)
            if k == j:
                rels.append(((e, T(k)), (e,)))
            elif k == i:
                rels.append(((e, T(k)), (T(i), T(j), e)))
            else:
                rels.append(((e, T(k)), (T(k), e)))
    for i, j in itertools.permutations(range(1, n + 1), 2):
        rels.append(((T(j), L(i, j, one, one)), (T(j),)))
    pres = Presentation.make(names, rels, "semigroup")
    target = wreath.enumerate_wreath(M, "SingPT", n)
    idx = _payload_index(target)
    pts = set(range(1, n + 1))
    gm = [idx[_wr_element(M, n, i, j, a, b)] for (i, j, a, b) in combos]
    gm += [idx[wreath.embed_pmap(M, ptrans.id_on(pts - {i}, n))]
           for i in range(1, n + 1)]
    return PresentationBundle(pres, target, tuple(gm),
                              f"MwrSingPTn(|M|={M.size}, n={n})")


def _mwr_main_relations(M: CayleyTable, n: int, lid, tid, s, l, r, k, *,
                        use_t: bool, use_lr: bool):
    """The mixed relations of the main wreath presentations: letters of the
    acting family moved past coordinate letters and past the zero markers,
    plus the collapse of a marker against its own idempotent."""
    R = []
    xs = range(k)
    for i in range(1, n):
        for kk in range(1, n + 1):
            for j in xs:
                if kk == i:
                    R.append(((s(i), lid(i, j)), (lid(i + 1, j), s(i))))
                elif kk == i + 1:
                    R.append(((s(i), lid(i + 1, j)), (lid(i, j), s(i))))
                else:
                    R.append(((s(i), lid(kk, j)), (lid(kk, j), s(i))))
            if use_t:
                if kk == i:
                    R.append(((s(i), tid(i)), (tid(i + 1), s(i))))
                elif kk == i + 1:
                    R.append(((s(i), tid(i + 1)), (tid(i), s(i))))
                else:
                    R.append(((s(i), tid(kk)), (tid(kk), s(i))))
    if use_lr:
        for i in range(1, n):
            for kk in range(1, n + 1):
                for j in xs:
                    if kk == i:
                        R.append(((l(i), lid(i, j)),
                                  (lid(i, j), lid(i + 1, j), l(i))))
                        R.append(((r(i), lid(i, j)), (r(i),)))
                    elif kk == i + 1:
                        R.append(((l(i), lid(i + 1, j)), (l(i),)))
                        R.append(((r(i), lid(i + 1, j)),
                                  (lid(i, j), lid(i + 1, j), r(i))))
                    else:
                        R.append(((l(i), lid(kk, j)), (lid(kk, j), l(i))))
                        R.append(((r(i), lid(kk, j)), (lid(kk, j), r(i))))
                if use_t:
                    if kk == i:
                        R.append(((l(i), tid(i)), (tid(i), tid(i + 1), l(i))))
                        R.append(((r(i), tid(i)), (r(i),)))
                    elif kk == i + 1:
                        R.append(((l(i), tid(i + 1)), (l(i),)))
                        R.append(((r(i), tid(i + 1)), (tid(i), tid(i + 1), r(i))))
                    else:
                        R.append(((l(i), tid(kk)), (tid(kk), l(i))))
                        R.append(((r(i), tid(kk)), (tid(kk), r(i))))
        if use_t:
            for i in range(1, n):
                R.append(((tid(i), r(i)), (tid(i),)))
    return R


def _mwr_family(M: CayleyTable, n: int, family: str) -> PresentationBundle:
    """The four main wreath presentations, over the tuple letters together
    with the acting family's letters."""
    if n < 2:
        raise ValueError("wreath presentations need n >= 2")
    with_zero = family in ("PT", "I")
    if with_zero:
        tup = _m0n(M, n)
    else:
        tup = _mn(M, n)
    mp, elems = _base_letters(M)
    k = len(mp.alphabet)
    base = len(tup.pres.alphabet)
    def lid(i, j):
        return (i - 1) * k + j
    def tid(i):
        return n * k + i - 1

    total_family = "T" if family in ("PT", "T") else "G"
    if total_family == "T":
        fam_names, fs, fl, fr = _tn_letters(n)
        fam_rels = _tn_relations(n)
    else:
        fam_names = [f"s{i}" for i in range(1, n)]
        fam_rels = [((i, i), ()) for i in range(n - 1)]
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                if j - i > 1:
                    fam_rels.append(((i, j), (j, i)))
                else:
                    fam_rels.append(((i, j, i), (j, i, j)))
        fs = lambda i: i - 1
        fl = fr = None
    names = list(tup.pres.alphabet) + fam_names
    def s(i):
        return base + fs(i)
    if total_family == "T":
        def l(i):
            return base + fl(i)
        def r(i):
            return base + fr(i)
    else:
        l = r = None

    rels = list(tup.pres.relations)
    rels += [(tuple(base + i for i in u), tuple(base + i for i in v))
             for u, v in fam_rels]
    rels += _mwr_main_relations(M, n, lid, tid, s, l, r, k,
                                use_t=with_zero, use_lr=total_family == "T")
    if family == "I":
        for i in range(1, n):
            rels.append(((tid(i), tid(i + 1), s(i)), (tid(i), tid(i + 1))))
    pres = Presentation.make(names, rels, "monoid")

    target = wreath.enumerate_wreath(M, family, n)
    idx = _payload_index(target)
    pts = set(range(1, n + 1))
    gm = [idx[wreath.embed_tuple(wreath.unit_tuple(M, n, i, elems[j]))]
          for i in range(1, n + 1) for j in range(k)]
    if with_zero:
        gm += [idx[wreath.embed_pmap(M, ptrans.id_on(pts - {i}, n))]
               for i in range(1, n + 1)]
    gm += [idx[wreath.embed_pmap(M, ptrans.tau(i, i + 1, n))] for i in range(1, n)]
    if total_family == "T":
        gm += [idx[wreath.embed_pmap(M, ptrans.eps(i, i + 1, n))] for i in range(1, n)]
        gm += [idx[wreath.embed_pmap(M, ptrans.eps(i + 1, i, n))] for i in range(1, n)]
    return PresentationBundle(pres, target, tuple(gm),
                              f"Mwr{family}n(|M|={M.size}, n={n})")


# ---------------------------------------------------------------------------
# Intersection semilattices of subalgebra lattices
# ---------------------------------------------------------------------------

def _suba(alg, *, enlarged: bool) -> PresentationBundle:
    from .indalg import lattice
    lat = lattice(alg)
    maxes = sorted(lat.maximal(), key=lambda s: sorted(s))
    if not maxes:
        raise ValueError("the algebra has no maximal subalgebras")
    pos = {b: i for i, b in enumerate(maxes)}
    names = [f"x{{{','.join(str(x + 1) for x in sorted(b))}}}" for b in maxes]
    rels = [((i, i), (i,)) for i in range(len(maxes))]
    rels += [((i, j), (j, i)) for i in range(len(maxes)) for j in range(len(maxes))]
    if not enlarged:
        for b in maxes:
            for c in maxes:
                for d in maxes:
                    if b & c == b & d:
                        rels.append(((pos[b], pos[c]), (pos[b], pos[d])))
    else:
        meets = {}
        for b in maxes:
            for c in maxes:
                meets.setdefault(b & c, []).append((pos[b], pos[c]))
        for group in meets.values():
            first = group[0]
            for other in group[1:]:
                rels.append((first, other))
    pres = Presentation.make(names, rels, "monoid")
    target = lat.meet_table()
    idx = _payload_index(target)
    gm = tuple(idx[b] for b in maxes)
    tag = "SubA_enlarged" if enlarged else "SubA"
    expected = True
    if not enlarged:
        # the schema quantified over a shared left factor is complete exactly
        # for strong algebras; deliberate failures keep expected_verify False
        expected = alg.is_strong()[0]
    return PresentationBundle(pres, target, gm, f"{tag}({alg.family})",
                              expected_verify=expected)


# ---------------------------------------------------------------------------
# Free left restriction monoid truncations
# ---------------------------------------------------------------------------

def _words_up_to(alphabet: str, bound: int) -> list[str]:
    out = []
    layer = [""]
    for _ in range(bound):
        layer = [w + c for w in layer for c in sorted(alphabet)]
        out.extend(layer)
    return out


def _px_trunc(alphabet: str, bound: int) -> PresentationBundle:
    words = _words_up_to(alphabet, bound)
    pos = {w: i for i, w in enumerate(words)}
    names = [f"a[{w}]" for w in words]
    rels = [((pos[w], pos[v]), (pos[v], pos[w])) for w in words for v in words]
    rels += [((pos[w], pos[v]), (pos[w],))
             for w in words for v in words
             if v != w and w.startswith(v)]
    rels += [((pos[w], pos[w]), (pos[w],)) for w in words]
    pres = Presentation.make(names, rels, "monoid")
    bundle = PresentationBundle(pres, None, None,
                                f"PX(|X|={len(alphabet)}, L={bound})")
    bundle.notes["proj_words"] = words
    bundle.notes["word_letters"] = []
    return bundle


def _lx_trunc(alphabet: str, bound: int) -> PresentationBundle:
    words = _words_up_to(alphabet, bound)
    letters = sorted(alphabet)
    pos = {w: i for i, w in enumerate(words)}
    base = len(words)
    xpos = {c: base + i for i, c in enumerate(letters)}
    names = [f"a[{w}]" for w in words] + list(letters)
    inner = _px_trunc(alphabet, bound)
    rels = list(inner.pres.relations)
    for c in letters:
        for w in words:
            if len(w) + 1 <= bound:
                rels.append(((xpos[c], pos[w]), (pos[c + w], xpos[c])))
        rels.append(((xpos[c],), (pos[c], xpos[c])))
    pres = Presentation.make(names, rels, "monoid")
    bundle = PresentationBundle(pres, None, None,
                                f"LX(|X|={len(alphabet)}, L={bound})")
    bundle.notes["proj_words"] = words
    bundle.notes["word_letters"] = letters
    return bundle


def lrm_model_check(bundle: PresentationBundle) -> bool:
    """Evaluate a truncation bundle inside the free left restriction monoid:
    projection letters go to downset projections, word letters to embedded
    one-letter words."""
    values = [freelrm.element([w], "") for w in bundle.notes["proj_words"]]
    values += [freelrm.embed_word(c) for c in bundle.notes["word_letters"]]
    return bundle.relations_hold_in(values, freelrm.lr_product,
                                    identity=freelrm.lr_identity())


# ---------------------------------------------------------------------------
# Catalogue front end
# ---------------------------------------------------------------------------

FAMILIES = ("En", "Gn", "Tn", "Mn", "M0n", "MwrSingTn", "MwrSingPTn",
            "MwrPTn", "MwrGn", "MwrTn", "MwrIn", "SubA", "SubA_enlarged",
            "PX_truncated", "LX_truncated")


def build_catalog(family: str, *, n: Optional[int] = None,
                  base: Optional[CayleyTable] = None,
                  algebra=None, alphabet: str = "xy",
                  length: int = 3) -> PresentationBundle:
    if family == "En":
        return _en(n)
    if family == "Gn":
        return _gn(n)
    if family == "Tn":
        return _tn(n)
    if family in ("Mn", "M0n", "MwrSingTn", "MwrSingPTn",
                  "MwrPTn", "MwrGn", "MwrTn", "MwrIn"):
        if base is None:
            raise ValueError(f"{family} needs a base monoid")
        if family == "Mn":
            return _mn(base, n)
        if family == "M0n":
            return _m0n(base, n)
        if family == "MwrSingTn":
            return _mwr_sing_tn(base, n)
        if family == "MwrSingPTn":
            return _mwr_sing_ptn(base, n)
        return _mwr_family(base, n, family[3:-1])
    if family in ("SubA", "SubA_enlarged"):
        if algebra is None:
            raise ValueError("SubA needs an algebra instance")
        return _suba(algebra, enlarged=family.endswith("enlarged"))
    if family == "PX_truncated":
        return _px_trunc(alphabet, length)
    if family == "LX_truncated":
        return _lx_trunc(alphabet, length)
    raise KeyError(f"unknown family {family!r} (choose from {FAMILIES})")


# ---------------------------------------------------------------------------
# General pair presentations
# ---------------------------------------------------------------------------

@dataclass
class LetteredSubset:
    """A presentation for a subset of the ambient, with letters mapped to
    ambient ids; normal-form words are shortlex over the letter images."""
    pres: Presentation
    images: tuple            # letter -> ambient id

    def normal_forms(self, m: CayleyTable, *, identity=None) -> dict:
        return normal_forms_over(m, self.images, identity=identity)


def _check(cond, msg):
    if not cond:
        raise HypothesisFailed(msg)


def _product_subtable(ctx: AmbientContext, images: Sequence[int]):
    prod = sorted(ctx.product_set())
    tbl, old2new = subtable(ctx.m, prod, gens=list(images))
    return tbl, old2new


def lavers(ctx: AmbientContext, act: ActionTable, pres_u: LetteredSubset,
           pres_s: LetteredSubset) -> PresentationBundle:
    """Presentation of the semidirect product when it is a monoid: the two
    presentations side by side plus letter-shuffling relations moving acting
    letters past acted-on letters."""
    m = ctx.m
    ident = ctx.identity
    _check(ident in ctx.u_set and ident in ctx.s_set, "both parts must be submonoids")
    _check(all(act.splus(s) == ident for s in ctx.s_list()),
           "the action must be by monoid morphisms")
    nf_u = pres_u.normal_forms(m, identity=ident)
    nu = len(pres_u.pres.alphabet)

    rels = list(pres_u.pres.relations)
    rels += [(tuple(nu + i for i in u), tuple(nu + i for i in v))
             for u, v in pres_s.pres.relations]
    for xi, xs in enumerate(pres_s.images):
        for yi, yu in enumerate(pres_u.images):
            acted = nf_u[act(xs, yu)]
            rels.append(((nu + xi, yi), tuple(acted) + (nu + xi,)))
    names = [f"u:{a}" for a in pres_u.pres.alphabet] + \
            [f"s:{a}" for a in pres_s.pres.alphabet]
    pres = Presentation.make(names, rels, "monoid")

    sd = semidirect(ctx, act)
    gm = tuple(sd.id_of(u, ident) for u in pres_u.images) + \
        tuple(sd.id_of(ident, s) for s in pres_s.images)
    return PresentationBundle(pres, sd.table, gm, f"semidirect({ctx.name})")


def local_monoid_pres(ctx: AmbientContext, act: ActionTable,
                      pres_u: LetteredSubset,
                      pres_s: LetteredSubset) -> PresentationBundle:
    """Presentation of the local monoid of pairs absorbing their projection,
    for a monoidal action by semigroup morphisms: the shuffling relations
    plus one projection-prefix relation per acting letter."""
    m = ctx.m
    ident = ctx.identity
    _check(ident in ctx.u_set and ident in ctx.s_set, "both parts must be submonoids")
    nf_u = pres_u.normal_forms(m, identity=ident)
    nu = len(pres_u.pres.alphabet)

    rels = list(pres_u.pres.relations)
    rels += [(tuple(nu + i for i in u), tuple(nu + i for i in v))
             for u, v in pres_s.pres.relations]
    for xi, xs in enumerate(pres_s.images):
        for yi, yu in enumerate(pres_u.images):
            rels.append(((nu + xi, yi), tuple(nf_u[act(xs, yu)]) + (nu + xi,)))
        sp = act.splus(xs)
        if sp != ident:
            rels.append(((nu + xi,), tuple(nf_u[sp]) + (nu + xi,)))
    names = [f"u:{a}" for a in pres_u.pres.alphabet] + \
            [f"s:{a}" for a in pres_s.pres.alphabet]
    pres = Presentation.make(names, rels, "monoid")

    sd = semidirect(ctx, act)
    carrier = sorted(sd.mm)
    tbl, old2new = subtable(sd.table, carrier)
    gm = tuple(old2new[sd.id_of(u, ident)] for u in pres_u.images) + \
        tuple(old2new[sd.id_of(act.splus(s), s)] for s in pres_s.images)
    return PresentationBundle(pres, tbl, gm, f"local_monoid({ctx.name})")


PAIR_PRESENTATION_KINDS = (
    "product_monoid_strong",       # both submonoids, monoid morphisms, theta data
    "product_monoid",              # both submonoids, general action pair
    "product_monoid_reduced_family",
    "product_monoid_reduced_letters",
    "product_monoid_via_local",    # through the local monoid quotient
    "product_semigroup",           # only U a submonoid
    "product_semigroup_reduced_family",
    "product_semigroup_reduced_letters",
)


def general_pair_pres(kind: str, ctx: AmbientContext, act: ActionTable,
                      pres_u: LetteredSubset, pres_s: LetteredSubset, *,
                      omega_u: Optional[dict] = None,
                      v_subset: Optional[Sequence] = None,
                      omega_pairs: Optional[Sequence] = None) -> PresentationBundle:
    """Presentations for the product set of an action pair, assembled from
    presentations of the parts, shuffling relations, per-element right
    congruence data, and projection-prefix relations.

    The hypotheses of the selected variant are machine-checked: submonoid
    membership, the extension condition for the semigroup variants, join
    reductions for the reduced variants, and the generating property of all
    supplied congruence data.
    """
    if kind not in PAIR_PRESENTATION_KINDS:
        raise KeyError(f"unknown kind {kind!r}")
    m = ctx.m
    ident = ctx.identity
    rep, act2 = check_pair_from_plus(ctx)
    monoid_case = kind.startswith("product_monoid")
    semigroup_case = not monoid_case
    _check(ident in ctx.u_set, "U must be a submonoid")
    if monoid_case:
        _check(ident in ctx.s_set, "S must be a submonoid")
        _check(rep.weak if kind.endswith("strong") or kind.endswith("via_local")
               else rep.action, "pair axioms fail")
    else:
        _check(rep.action, "pair axioms fail")
        u_min = ctx.u_set - {ident}
        _check(all(m.mul(a, b) in u_min for a in u_min for b in u_min),
               "U minus the identity must be a subsemigroup")
        _check(u_min <= ctx.product_set(), "U minus the identity must lie in US")
        for u in ctx.u1():
            for s in ctx.s_list():
                v = m.mul(u, s)
                if v in ctx.u1() and m.mul(u, act.splus(s)) != v:
                    raise HypothesisFailed("the pair does not extend over S^1")

    strongish = all(act.splus(s) == ident for s in ctx.s_list())
    if kind == "product_monoid_strong":
        _check(strongish, "the action must be by monoid morphisms")

    word_kind = "monoid" if monoid_case else "semigroup"
    nu = len(pres_u.pres.alphabet)
    nf_u = pres_u.normal_forms(m, identity=ident)
    nf_s = pres_s.normal_forms(m, identity=ident if monoid_case else None)
    nf_s.setdefault(ident, ())

    def sword(s):
        return tuple(nu + i for i in nf_s[s])

    rels = list(pres_u.pres.relations)
    rels += [(tuple(nu + i for i in u), tuple(nu + i for i in v))
             for u, v in pres_s.pres.relations]
    # shuffling relations
    for xi, xs in enumerate(pres_s.images):
        for yi, yu in enumerate(pres_u.images):
            rels.append(((nu + xi, yi), tuple(nf_u[act(xs, yu)]) + (nu + xi,)))
    # projection-prefix relations
    if not strongish:
        for xi, xs in enumerate(pres_s.images):
            sp = act.splus(xs)
            if sp != ident:
                rels.append(((nu + xi,), tuple(nf_u[sp]) + (nu + xi,)))

    # right-congruence relations
    slist = ctx.s_list()
    if monoid_case:
        members = slist
        def rel_classes(u):
            bucket: dict = {}
            for s in members:
                bucket.setdefault(m.mul(u, s), []).append(s)
            return [c for c in bucket.values() if len(c) > 1]
    else:
        members = [ident] + slist
        def rel_classes(u):
            bucket: dict = {}
            for s in members:
                bucket.setdefault(m.mul(u, s), []).append(s)
            return [c for c in bucket.values() if len(c) > 1]

    def closure_matches(u, pairs) -> bool:
        from .actionpair import SPartition
        want = SPartition(members)
        for c in rel_classes(u):
            for s in c[1:]:
                want.union(c[0], s)
        got = SPartition(members)
        gens = list(ctx.s_gens) if ctx.s_gens else slist
        queue = [p for p in pairs if got.union(*p)]
        while queue:
            a, b = queue.pop()
            for g in gens:
                x, y = m.mul(a, g), m.mul(b, g)
                if got.union(x, y):
                    queue.append((x, y))
        return got == want

    if kind in ("product_monoid_via_local", "product_monoid_strong") and \
            omega_pairs is not None:
        # explicit congruence data on the semidirect product
        sd = semidirect(ctx, act)
        th = theta_and_friends(ctx, act, sd)
        if kind == "product_monoid_strong":
            part = congruence_closure(sd.table, omega_pairs, "two_sided")
            _check(part == th.theta, "the supplied pairs do not generate theta")
            for i, j in omega_pairs:
                (u1, s1), (u2, s2) = sd.table.elements[i], sd.table.elements[j]
                rels.append((tuple(nf_u[u1]) + sword(s1),
                             tuple(nf_u[u2]) + sword(s2)))
        else:
            carrier = sorted(sd.mm)
            tbl, old2new = subtable(sd.table, carrier)
            vart = congruence_closure(
                tbl, [(old2new[i], old2new[j]) for i, j in omega_pairs],
                "two_sided")
            fibres: dict = {}
            want = []
            for i in carrier:
                u, s = sd.table.elements[i]
                v = m.mul(u, s)
                if v in fibres:
                    want.append((old2new[fibres[v]], old2new[i]))
                else:
                    fibres[v] = i
            want_part = congruence_closure(tbl, want, "two_sided")
            _check(vart == want_part,
                   "the supplied pairs do not generate the local kernel")
            for i, j in omega_pairs:
                (u1, s1), (u2, s2) = sd.table.elements[i], sd.table.elements[j]
                rels.append((tuple(nf_u[u1]) + sword(s1),
                             tuple(nf_u[u2]) + sword(s2)))
    else:
        ulist = [u for u in ctx.u_list() if monoid_case or u != ident]
        if kind.endswith("reduced_family") or kind.endswith("reduced_letters"):
            if kind.endswith("reduced_letters"):
                _check(all(m.mul(a, b) == m.mul(b, a)
                           for a in ctx.u_list() for b in ctx.u_list()),
                       "U must be commutative for the letter reduction")
                v_subset = list(dict.fromkeys(pres_u.images))
                from .actionpair import SPartition
                for a in ctx.u_list():
                    for b in ctx.u_list():
                        joined = SPartition(members)
                        for u0 in (a, b):
                            for c in rel_classes(u0):
                                for s in c[1:]:
                                    joined.union(c[0], s)
                        target = SPartition(members)
                        for c in rel_classes(m.mul(a, b)):
                            for s in c[1:]:
                                target.union(c[0], s)
                        _check(joined == target,
                               "pairwise join reduction fails")
            else:
                _check(v_subset is not None, "the reduced variant needs V")
                from .actionpair import SPartition
                for u in ulist:
                    joined = SPartition(members)
                    for v in v_subset:
                        if any(m.mul(w, v) == u for w in ctx.u1()):
                            for c in rel_classes(v):
                                for s in c[1:]:
                                    joined.union(c[0], s)
                    target = SPartition(members)
                    for c in rel_classes(u):
                        for s in c[1:]:
                            target.union(c[0], s)
                    _check(joined == target, f"join reduction fails at {u}")
            pool = list(v_subset)
        else:
            pool = ulist
        if omega_u is None:
            omega_u = {}
            for u in pool:
                omega_u[u] = [(c[0], s) for c in rel_classes(u) for s in c[1:]]
        for u in pool:
            _check(closure_matches(u, omega_u.get(u, ())),
                   f"congruence data does not generate at {u}")
            for a, b in omega_u.get(u, ()):
                rels.append((tuple(nf_u[u]) + sword(a),
                             tuple(nf_u[u]) + sword(b)))

    names = [f"u:{a}" for a in pres_u.pres.alphabet] + \
            [f"s:{a}" for a in pres_s.pres.alphabet]
    pres = Presentation.make(names, rels, word_kind)
    images = tuple(pres_u.images) + tuple(pres_s.images)
    tbl, old2new = _product_subtable(ctx, images)
    gm = tuple(old2new[e] for e in images)
    return PresentationBundle(pres, tbl, gm, f"{kind}({ctx.name})")


def us_sd_pres(ctx: AmbientContext, act: ActionTable,
               pres_u: LetteredSubset) -> PresentationBundle:
    """Presentation of the semidirect product over one copy of the
    U-alphabet per element of the acting monoid: per-element copies of the
    U-relations, plus one relation per letter pair recording a product and
    an action value."""
    m = ctx.m
    ident = ctx.identity
    _check(ident in ctx.s_set, "S must be a submonoid")
    slist = ctx.s_list()
    spos = {s: i for i, s in enumerate(slist)}
    nletters = len(pres_u.pres.alphabet)
    nf_u = pres_u.normal_forms(m)
    nf_u.setdefault(ident, ())

    def yid(letter, s):
        return spos[s] * nletters + letter

    def subscript(word: Word, s):
        if not word:
            return ()
        return tuple(yid(c, ident) for c in word[:-1]) + (yid(word[-1], s),)

    rels = []
    for s in slist:
        for u, v in pres_u.pres.relations:
            rels.append((subscript(u, s), subscript(v, s)))
    for x in range(nletters):
        for y in range(nletters):
            for s in slist:
                for t in slist:
                    acted = act(s, pres_u.images[y])
                    word = (x,) + nf_u[acted]
                    rels.append(((yid(x, s), yid(y, t)),
                                 subscript(word, m.mul(s, t))))
    names = [f"{a}@{si}" for si in range(len(slist))
             for a in pres_u.pres.alphabet]
    pres = Presentation.make(names, rels, "semigroup")

    sd = semidirect(ctx, act)
    gm = tuple(sd.id_of(pres_u.images[x], s)
               for s in slist for x in range(nletters))
    return PresentationBundle(pres, sd.table, gm, f"sd_letters({ctx.name})")
