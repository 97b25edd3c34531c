"""Built-in tables, ambient wreath products and the pair catalogue.

The catalogue names mirror the standard transformation families: an ambient
is always a wreath product of a base monoid with all partial maps of a given
degree (the base defaulting to the trivial monoid, in which case the ambient
is the partial transformation monoid itself).
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Optional

from . import ptrans, wreath
from .actionpair import ActionTable, AmbientContext
from .fmonoid import CayleyTable, table_from_elements

BASE_MONOIDS = ("c1", "c2", "c3", "sl2")


def monoid_table(name: str) -> CayleyTable:
    """Built-in base monoids: cyclic groups of order 1..3 and the two-element
    semilattice.  A path to a serialized CayleyTable is also accepted."""
    key = name.lower()
    if key in ("c1", "trivial", "1"):
        return table_from_elements([0], lambda a, b: 0, identity=0)
    if key == "c2":
        return table_from_elements([0, 1], lambda a, b: (a + b) % 2, identity=0)
    if key == "c3":
        return table_from_elements([0, 1, 2], lambda a, b: (a + b) % 3, identity=0)
    if key == "sl2":
        return table_from_elements([0, 1], lambda a, b: max(a, b), identity=0)
    if name.endswith(".json"):
        with open(name) as fh:
            return CayleyTable.from_json(fh.read())
    raise KeyError(f"unknown monoid {name!r} (choose from {BASE_MONOIDS} or a .json path)")


@lru_cache(maxsize=None)
def _monoid_cached(name: str) -> CayleyTable:
    return monoid_table(name)


def ptrans_table(kind: str, n: int) -> CayleyTable:
    """Cayley table of a transformation family, payload PartialMap objects."""
    elems = ptrans.family(kind, n)
    ident = ptrans.identity(n)
    try:
        gens = ptrans.family_gens(kind, n)
    except ptrans.BadParams:
        gens = None
    if gens is not None:
        from .fmonoid import closure_from_generators
        t = closure_from_generators(gens, ptrans.compose,
                                    identity_hint=ident if ident in set(elems) else None,
                                    cap=len(elems) + 1)
        if t.size == len(elems):
            return t
    return table_from_elements(elems, ptrans.compose,
                               identity=ident if ident in set(elems) else None)


@lru_cache(maxsize=None)
def ambient_wreath(base_name: str, n: int) -> CayleyTable:
    """The wreath product of a base monoid with all partial maps of degree n."""
    return wreath.enumerate_wreath(_monoid_cached(base_name), "PT", n)


def ambient_plus_map(amb: CayleyTable) -> dict:
    """The left-restriction unary operation of a wreath ambient: the embedded
    partial identity on the domain of the map part."""
    idx = {w: i for i, w in enumerate(amb.elements)}
    return {i: idx[wreath.wr_plus(w)] for i, w in enumerate(amb.elements)}


U_KINDS = ("E", "SingE", "M0n", "Mn")
S_KINDS = ("PT", "T", "I", "G", "SingPT", "SingT", "SingI")


def subset_ids(amb: CayleyTable, kind: str, n: int) -> frozenset:
    """Element ids of a named subset of a wreath ambient.

    Plain family names select the wreath subproduct over that family; the
    prefix "pmap:" selects the embedded copy of the family itself (indicator
    tuple over the domain)."""
    def pick(pred):
        return frozenset(i for i, w in enumerate(amb.elements) if pred(w))

    if kind.startswith("pmap:"):
        inner = kind[5:]
        fam = set(ptrans.family(inner, n))
        base = amb.elements[0].tup.base
        return pick(lambda w: w.pmap in fam
                    and w.tup == wreath.ones(base, n, w.pmap.dom()))
    if kind == "E":
        return pick(lambda w: w.pmap.img == ptrans.plus(w.pmap).img
                    and all(v in (wreath.ZERO, w.tup.base.identity)
                            for v in w.tup.entries))
    if kind == "SingE":
        ident = ptrans.identity(n)
        return frozenset(i for i in subset_ids(amb, "E", n)
                         if amb.elements[i].pmap != ident)
    if kind == "M0n":
        return pick(lambda w: w.pmap == ptrans.id_on(w.tup.supp(), n))
    if kind == "Mn":
        return pick(lambda w: w.pmap == ptrans.identity(n))
    preds = {
        "PT": lambda a: True,
        "T": lambda a: a.is_total(),
        "I": lambda a: a.is_injective(),
        "G": lambda a: a.is_bijection(),
        "SingPT": lambda a: not a.is_bijection(),
        "SingT": lambda a: a.is_total() and not a.is_bijection(),
        "SingI": lambda a: a.is_injective() and not a.is_bijection(),
        "PTminusT": lambda a: not a.is_total(),
    }
    if kind in preds:
        return pick(lambda w: preds[kind](w.pmap))
    raise KeyError(f"unknown subset kind {kind!r}")


def _embedded_gens(amb: CayleyTable, kind: str, n: int) -> Optional[tuple]:
    """Ambient ids of natural generators for a named subset, when known."""
    idx = {w: i for i, w in enumerate(amb.elements)}
    base = amb.elements[0].tup.base
    try:
        if kind in ("E", "SingE"):
            pts = set(range(1, n + 1))
            gens = [wreath.embed_pmap(base, ptrans.id_on(pts - {i}, n))
                    for i in range(1, n + 1)]
        elif kind in ("T", "G", "I", "PT", "SingT", "SingPT"):
            gens = wreath.wreath_gens(base, kind, n)
        elif kind == "M0n":
            gens = [wreath.embed_tuple(wreath.unit_tuple(base, n, i, g))
                    for i in range(1, n + 1) for g in base.gens] + \
                   [wreath.embed_pmap(base, ptrans.id_on(
                       set(range(1, n + 1)) - {i}, n)) for i in range(1, n + 1)]
        elif kind == "Mn":
            gens = [wreath.embed_tuple(wreath.unit_tuple(base, n, i, g))
                    for i in range(1, n + 1) for g in base.gens]
        else:
            return None
    except ptrans.BadParams:
        return None
    if gens is None:
        return None
    return tuple(idx[g] for g in gens)


def make_pair(amb: CayleyTable, u_kind: str, s_kind: str, n: int, *,
              name: str = "") -> AmbientContext:
    """A catalogue pair inside a wreath ambient; the projection data is the
    ambient unary operation restricted to S.

    Semilattice-type pairs (E, SingE) act on wreath subproducts over total
    families; tuple-type pairs (M0n, Mn) act on embedded copies of the
    transformation families themselves."""
    u_ids = subset_ids(amb, u_kind, n)
    if u_kind in ("E", "SingE"):
        if s_kind in ("PT", "I", "SingPT", "SingI"):
            raise ValueError(f"semilattice pairs need total families, got {s_kind}")
        s_ids = subset_ids(amb, s_kind, n)
        s_gens = _embedded_gens(amb, s_kind, n)
    else:
        s_ids = subset_ids(amb, f"pmap:{s_kind}", n)
        s_gens = _embedded_pmap_gens(amb, s_kind, n)
    plus_all = ambient_plus_map(amb)
    plus = {s: plus_all[s] for s in s_ids}
    return AmbientContext(amb, u_ids, s_ids, plus,
                          name=name or f"({u_kind},{s_kind}) n={n}",
                          u_gens=_embedded_gens(amb, u_kind, n),
                          s_gens=s_gens)


def _embedded_pmap_gens(amb: CayleyTable, kind: str, n: int) -> Optional[tuple]:
    try:
        gens = ptrans.family_gens(kind, n)
    except ptrans.BadParams:
        return None
    base = amb.elements[0].tup.base
    idx = {w: i for i, w in enumerate(amb.elements)}
    return tuple(idx[wreath.embed_pmap(base, g)] for g in gens)


# ---------------------------------------------------------------------------
# The catalogue of pairs for a given degree and base monoid
# ---------------------------------------------------------------------------

# (U kind, S wreath kind, expected strong, expected proper, congruence rule)
CATALOGUE = (
    # semilattice-against-wreath pairs: all strong, none proper
    ("E", "T", True, False, "join_pairwise"),
    ("SingE", "T", True, False, "right_generators"),
    ("E", "SingT", True, False, "right_generators"),
    ("SingE", "SingT", True, False, "right_generators"),
    ("E", "G", True, False, "join_family"),
    ("SingE", "G", True, False, "right_generators"),
    # tuple-against-maps pairs
    ("M0n", "PT", False, False, "submonoids"),
    ("M0n", "I", False, False, "submonoids"),
    ("M0n", "T", True, False, "join_family"),
    ("M0n", "G", True, False, "group_join_family"),
    ("Mn", "T", True, True, "right_generators"),
    ("Mn", "G", True, True, "right_generators"),
    ("M0n", "SingPT", False, False, "generic"),
    ("M0n", "SingI", False, False, "generic"),
    ("M0n", "SingT", True, False, "right_generators"),
    ("Mn", "SingT", True, True, "right_generators"),
)


def catalogue_specs(n: int) -> list:
    out = []
    for u_kind, s_kind, strong, proper, rule in CATALOGUE:
        if n < 2 and s_kind.startswith("Sing"):
            continue
        out.append({"u": u_kind, "s": s_kind, "strong": strong,
                    "proper": proper, "rule": rule})
    return out


def catalogue_pair(base_name: str, n: int, u_kind: str, s_kind: str) -> AmbientContext:
    amb = ambient_wreath(base_name, n)
    return make_pair(amb, u_kind, s_kind, n,
                     name=f"({u_kind},{s_kind}) base={base_name} n={n}")


def expected_product_kind(u_kind: str, s_kind: str) -> str:
    """The named subset that each catalogue pair's product set must equal."""
    table = {
        ("E", "T"): "PT",
        ("SingE", "T"): "PTminusT",
        ("E", "SingT"): "SingPT",
        ("SingE", "SingT"): "PTminusT",
        ("E", "G"): "I",
        ("SingE", "G"): "SingI",
        ("M0n", "PT"): "PT",
        ("M0n", "I"): "I",
        ("M0n", "T"): "PT",
        ("M0n", "G"): "I",
        ("Mn", "T"): "T",
        ("Mn", "G"): "G",
        ("M0n", "SingPT"): "SingPT",
        ("M0n", "SingI"): "SingI",
        ("M0n", "SingT"): "SingPT",
        ("Mn", "SingT"): "SingT",
    }
    return table[(u_kind, s_kind)]


def omega_inputs(ctx: AmbientContext, act: ActionTable, rule: str,
                 u_kind: str, s_kind: str, n: int) -> dict:
    """Default inputs for the congruence generating rules, per catalogue pair:
    corank-one partial identities as the reduction family, single idempotent
    pairs or transpositions as the per-element generators."""
    amb = ctx.m
    base = amb.elements[0].tup.base
    idx = {w: i for i, w in enumerate(amb.elements)}
    pts = set(range(1, n + 1))
    ident = ctx.identity

    def emb(pm):
        return idx[wreath.embed_pmap(base, pm)]

    out: dict = {}
    if rule in ("join_family", "join_pairwise") and u_kind in ("E", "M0n"):
        if s_kind == "G" or rule == "join_family" and u_kind == "E":
            vs, om = [], {}
            for i in range(1, n + 1):
                v = emb(ptrans.id_on(pts - {i}, n))
                vs.append(v)
                if s_kind == "G":
                    om[v] = [(idx[wreath.embed_tuple(
                                  wreath.unit_tuple(base, n, i, g))], ident)
                             for g in base.gens if g != base.identity]
                elif pts - {i}:
                    om[v] = [(emb(ptrans.eps(min(pts - {i}), i, n)), ident)]
                else:
                    # degree one: the fibre over the empty set identifies
                    # everything, so relate every generator to the identity
                    om[v] = [(s, ident) for s in (ctx.s_gens or ctx.s_list())]
            if s_kind == "G":
                import itertools
                for i, j in itertools.combinations(sorted(pts), 2):
                    v = emb(ptrans.id_on(pts - {i, j}, n))
                    vs.append(v)
                    om[v] = [(emb(ptrans.tau(i, j, n)), ident)] + \
                            [(idx[wreath.embed_tuple(wreath.unit_tuple(base, n, k, g))],
                              ident)
                             for k in (i, j) for g in base.gens if g != base.identity]
            out["v_subset"] = vs
            out["omega_u"] = om
        else:
            vs, om = [], {}
            for i in range(1, n + 1):
                v = emb(ptrans.id_on(pts - {i}, n))
                vs.append(v)
                om[v] = ([(emb(ptrans.eps(min(pts - {i}), i, n)), ident)]
                         if pts - {i} else
                         [(s, ident) for s in (ctx.s_gens or ctx.s_list())])
            out["v_subset"] = vs
            out["omega_u"] = om
    elif rule == "group_join_family":
        import itertools
        vs, gam = [], {}
        for i, j in itertools.combinations(sorted(pts), 2):
            v = emb(ptrans.id_on(pts - {i, j}, n))
            vs.append(v)
            gam[v] = [emb(ptrans.tau(i, j, n))]
        out["v_subset"] = vs
        out["gamma_u"] = gam
    return out


def load_custom_algebra(path: str):
    """Custom universal algebras from JSON: carrier size plus operation tables."""
    from .indalg import AlgebraInstance
    with open(path) as fh:
        d = json.load(fh)
    return AlgebraInstance.from_dict(d)
