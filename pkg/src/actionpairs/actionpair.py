"""Classification of action pairs inside a concrete finite monoid.

A pair (U, S) of subsemigroups of an ambient monoid, together with a map
s -> s+ into U + {1}, is checked against the compatibility axioms; on
success the action of S on U + {1} is reconstructed and the machinery of
semidirect products, kernel congruences, congruence generating sets,
special-congruence axioms, proper covers and the central embedding all
operate on the resulting data.

Conventions: U1/S1 always mean the subsets extended by the ambient identity,
and the action is extended monoidally (the identity acts identically).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .fmonoid import (CayleyTable, CongruencePartition, closure_from_generators,
                      congruence_closure, is_compatible, quotient)


class NotSubsemigroup(Exception):
    pass


class AxiomFailed(Exception):
    def __init__(self, which, witness):
        super().__init__(f"{which} fails at {witness}")
        self.which = which
        self.witness = witness


class HypothesisFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# Contexts and reports
# ---------------------------------------------------------------------------

@dataclass
class AmbientContext:
    """A candidate pair inside an ambient monoid table.

    plus maps each member of S to an element of U1; u_gens/s_gens are
    optional generating sets (ambient ids) used to speed congruence work.
    """

    m: CayleyTable
    u_set: frozenset
    s_set: frozenset
    plus: dict
    name: str = ""
    u_gens: Optional[tuple] = None
    s_gens: Optional[tuple] = None

    def __post_init__(self):
        if self.m.identity is None:
            raise ValueError("ambient table must be a monoid")
        self.u_set = frozenset(self.u_set)
        self.s_set = frozenset(self.s_set)
        ident = self.m.identity
        for label, sub in (("U", self.u_set), ("S", self.s_set)):
            for a in sub:
                for b in sub:
                    if self.m.mul(a, b) not in sub:
                        raise NotSubsemigroup(f"{label} not closed at ({a},{b})")
        u1 = self.u_set | {ident}
        for s in self.s_set:
            if self.plus[s] not in u1:
                raise ValueError(f"plus({s}) escapes U1")

    @property
    def identity(self):
        return self.m.identity

    def u1(self) -> list:
        return sorted(self.u_set | {self.identity})

    def s1(self) -> list:
        return sorted(self.s_set | {self.identity})

    def s_list(self) -> list:
        return sorted(self.s_set)

    def u_list(self) -> list:
        return sorted(self.u_set)

    def product_set(self) -> frozenset:
        m = self.m
        return frozenset(m.mul(u, s) for u in self.u_set for s in self.s_set)


class ActionTable:
    """The action of S1 on U1, stored as a dense dict (s, u) -> u'."""

    def __init__(self, ctx: AmbientContext, table: dict):
        self.ctx = ctx
        self.table = dict(table)
        ident = ctx.identity
        for u in ctx.u1():
            self.table.setdefault((ident, u), u)

    def __call__(self, s, u):
        return self.table[(s, u)]

    def splus(self, s):
        if s == self.ctx.identity:
            return self.ctx.identity
        return self.table[(s, self.ctx.identity)]

    def verify_laws(self) -> list:
        """Action axioms: composition, semigroup morphisms, values in U1."""
        ctx = self.ctx
        m = ctx.m
        failures = []
        u1 = ctx.u1()
        u1set = set(u1)
        s1 = ctx.s1()
        for s in s1:
            for u in u1:
                if self(s, u) not in u1set:
                    failures.append(("action-range", (s, u)))
        for s in s1:
            for t in s1:
                st = m.mul(s, t)
                for u in u1:
                    if self(s, self(t, u)) != self(st, u):
                        failures.append(("action-composition", (s, t, u)))
                        break
        for s in s1:
            for u in u1:
                for v in u1:
                    if self(s, m.mul(u, v)) != m.mul(self(s, u), self(s, v)):
                        failures.append(("action-morphism", (s, u, v)))
                        break
        return failures


class SPartition:
    """Equivalence on the members of S, keyed by ambient element id."""

    def __init__(self, members: Sequence):
        self.members = list(members)
        self.pos = {s: i for i, s in enumerate(self.members)}
        self.parent = list(range(len(self.members)))

    def find(self, s):
        x = self.pos[s]
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, s, t):
        ra, rb = self.find(s), self.find(t)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def same(self, s, t) -> bool:
        return self.find(s) == self.find(t)

    def classes(self) -> list[list]:
        by_root: dict[int, list] = {}
        for s in self.members:
            by_root.setdefault(self.find(s), []).append(s)
        return sorted((sorted(c) for c in by_root.values()), key=lambda c: c[0])

    def is_trivial(self) -> bool:
        return all(len(c) == 1 for c in self.classes())

    def canonical(self):
        return tuple(tuple(c) for c in self.classes())

    def __eq__(self, other):
        return isinstance(other, SPartition) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())


W_CONDITION_NAMES = (
    "some u is a right identity for S",
    "every s has a right identity from U",
    "some u is a left identity for S",
    "every s has a left identity from U",
    "S is contained in US",
    "S meets US",
    "some v satisfies us = usv for all u, s",
    "every us has a right identity from U",
    "some v satisfies u = u.(s>v) for all u, s",
    "every (u, s) has v with u = u.(s>v)",
)

SPECIAL_AXIOM_NAMES = (
    "pairs absorb the projection on the right",
    "projection sections separate",
    "related pairs share their projection part",
    "trivial at the tuple identity",
    "per-element relations are right congruences",
    "per-element relations grow under left factors",
    "acting shifts per-element relations",
    "per-element relations survive twisted extension",
)


@dataclass
class PairReport:
    name: str = ""
    weak: bool = False
    action: bool = False
    strong: bool = False
    failures: list = field(default_factory=list)
    p_set: Optional[frozenset] = None
    p_closed_under_action: Optional[bool] = None
    sigma: Optional[SPartition] = None
    proper: Optional[bool] = None
    left_dense: Optional[bool] = None
    w_conditions: Optional[tuple] = None
    sigma_is_transitive_kappa: Optional[bool] = None
    sigma_equational_ok: Optional[bool] = None
    disjointness_ok: Optional[bool] = None
    right_unit_rule_ok: Optional[bool] = None
    mid_identity_ok: Optional[bool] = None

    def implication_chain_ok(self) -> bool:
        """strong => action => weak; proper => action."""
        if self.strong and not self.action:
            return False
        if self.action and not self.weak:
            return False
        if self.proper and not self.action:
            return False
        return True

    def to_dict(self, ctx: Optional[AmbientContext] = None):
        def words(ids):
            if ctx is None:
                return sorted(ids)
            return [list(ctx.m.nf[e]) for e in sorted(ids)]

        def witness(w):
            if ctx is not None and isinstance(w, int) and 0 <= w < ctx.m.size:
                return list(ctx.m.nf[w])
            return str(w)
        return {
            "name": self.name,
            "weak": self.weak,
            "action": self.action,
            "strong": self.strong,
            "proper": self.proper,
            "left_dense": self.left_dense,
            "p_size": len(self.p_set) if self.p_set is not None else None,
            "p_elements": words(self.p_set) if self.p_set is not None else None,
            "sigma_classes": len(self.sigma.classes()) if self.sigma else None,
            "w_conditions": list(self.w_conditions) if self.w_conditions else None,
            "mid_identity_ok": self.mid_identity_ok,
            "failures": [[which, [witness(w) for w in wit]]
                         for which, wit in self.failures],
        }


# ---------------------------------------------------------------------------
# Axioms and action reconstruction
# ---------------------------------------------------------------------------

def check_pair_from_plus(ctx: AmbientContext, *, strict: bool = False
                         ) -> tuple[PairReport, Optional[ActionTable]]:
    """Verify the pair axioms from the s -> s+ data and rebuild the action.

    Checks sU1 <= U1 s, then the four defining conditions of the projection
    map, then reconstructs s>u as v s+ for the least witness v with su = vs
    (re-checking that the choice of witness does not matter) and verifies
    that the result is a genuine action by semigroup morphisms satisfying
    the compatibility law su = (s>u) s.
    """
    m = ctx.m
    rep = PairReport(name=ctx.name)
    u1 = ctx.u1()
    slist = ctx.s_list()
    ident = ctx.identity

    def fail(which, witness):
        rep.failures.append((which, witness))
        if strict:
            raise AxiomFailed(which, witness)

    # sU1 <= U1 s, with witness lists per (s, value of su)
    witness: dict = {}
    for s in slist:
        traj = {}
        for v in u1:
            traj.setdefault(m.mul(v, s), []).append(v)
        for u in u1:
            su = m.mul(s, u)
            if su in traj:
                witness[(s, u)] = traj[su]
            else:
                fail("sU1-in-U1s", (s, u))
                return rep, None

    plus = ctx.plus
    for s in slist:
        if m.mul(plus[s], s) != s:
            fail("s-equals-plus-s", (s,))
    for s in slist:
        for t in slist:
            st = m.mul(s, t)
            if m.mul(s, plus[t]) != m.mul(plus[st], s):
                fail("shift-projection", (s, t))
            if plus[st] != m.mul(plus[st], plus[s]):
                fail("projection-absorbs", (s, t))

    # kernel condition: us = vt implies u s+ = v t+
    buckets: dict = {}
    for u in u1:
        for s in slist:
            buckets.setdefault(m.mul(u, s), []).append((u, s))
    a2_ok = True
    for val, items in buckets.items():
        u0, s0 = items[0]
        ref = m.mul(u0, plus[s0])
        for u, s in items[1:]:
            if m.mul(u, plus[s]) != ref:
                a2_ok = False
                fail("kernel-condition", ((u0, s0), (u, s)))
                break

    # reconstruct the action, least witness first, well-definedness re-checked
    table = {}
    well_defined = True
    for s in slist:
        for u in u1:
            vs = witness[(s, u)]
            vals = {m.mul(v, plus[s]) for v in vs}
            if len(vals) != 1:
                well_defined = False
                fail("action-ill-defined", (s, u, sorted(vs)[:2]))
            table[(s, u)] = m.mul(min(vs), plus[s])
    act = ActionTable(ctx, table)

    law_failures = act.verify_laws()
    for which, wit in law_failures:
        fail(which, wit)
    compat_ok = True
    for s in slist:
        for u in u1:
            if m.mul(s, u) != m.mul(act(s, u), s):
                compat_ok = False
                fail("compatibility", (s, u))
                break

    rep.weak = not law_failures and compat_ok and well_defined
    rep.action = rep.weak and a2_ok and not any(
        which in ("s-equals-plus-s", "shift-projection", "projection-absorbs")
        for which, _ in rep.failures)
    rep.strong = rep.action and all(plus[s] == ident for s in slist)
    return rep, act


def check_weak_pair(ctx: AmbientContext, act: ActionTable) -> PairReport:
    """Verify the compatibility axiom for a user-supplied action; the kernel
    condition is reported separately in the action verdict."""
    m = ctx.m
    rep = PairReport(name=ctx.name)
    failures = act.verify_laws()
    compat_ok = True
    for s in ctx.s_list():
        for u in ctx.u1():
            if m.mul(s, u) != m.mul(act(s, u), s):
                compat_ok = False
                failures.append(("compatibility", (s, u)))
                break
    rep.weak = compat_ok and not failures

    a2_ok = True
    buckets: dict = {}
    for u in ctx.u1():
        for s in ctx.s_list():
            buckets.setdefault(m.mul(u, s), []).append((u, s))
    for val, items in buckets.items():
        ref = m.mul(items[0][0], act.splus(items[0][1]))
        for u, s in items[1:]:
            if m.mul(u, act.splus(s)) != ref:
                a2_ok = False
                failures.append(("kernel-condition", ((items[0]), (u, s))))
                break
    rep.action = rep.weak and a2_ok
    rep.strong = rep.action and all(act.splus(s) == ctx.identity for s in ctx.s_list())
    rep.failures = failures
    return rep


# ---------------------------------------------------------------------------
# P, sigma, properness
# ---------------------------------------------------------------------------

def projection_semigroup(ctx: AmbientContext, act: ActionTable) -> frozenset:
    """The subsemigroup of U1 generated by the projections s+."""
    m = ctx.m
    gens = sorted({act.splus(s) for s in ctx.s_list()})
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for c in (m.mul(a, g), m.mul(g, a)):
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(seen)


def sigma_partition(ctx: AmbientContext, act: ActionTable,
                    p_set: frozenset) -> tuple[SPartition, bool]:
    """sigma as the transitive closure of {(s, t) : ps = qt for p, q in P1};
    also reports whether the one-step relation was already transitive."""
    m = ctx.m
    slist = ctx.s_list()
    part = SPartition(slist)
    p1 = sorted(p_set | {ctx.identity})
    buckets: dict = {}
    for s in slist:
        for p in p1:
            buckets.setdefault(m.mul(p, s), set()).add(s)
    onestep: dict = {s: {s} for s in slist}
    for group in buckets.values():
        group = sorted(group)
        for s in group[1:]:
            part.union(group[0], s)
        for s in group:
            onestep[s].update(group)
    transitive = all(set(c) <= onestep[c[0]] for c in part.classes())
    return part, transitive


def classify_proper(ctx: AmbientContext, act: ActionTable,
                    rep: PairReport) -> PairReport:
    """Fill the properness side of the report: P, sigma, the proper verdict,
    left-density of P in U, the ten one-sided identity conditions, and the
    equational cross-checks available when P is a semilattice or left-regular
    band."""
    m = ctx.m
    ident = ctx.identity
    u1 = ctx.u1()
    slist = ctx.s_list()

    p_set = projection_semigroup(ctx, act)
    rep.p_set = p_set
    rep.p_closed_under_action = all(act(s, p) in (p_set | {ident})
                                    for s in slist for p in p_set)

    sigma, transitive = sigma_partition(ctx, act, p_set)
    rep.sigma = sigma
    # kappa is reflexive, symmetric and compatible, so sigma is its
    # transitive closure; when P is right-reversible the two coincide
    p_els = sorted(p_set)
    right_reversible = all(
        any(m.mul(a, x) == m.mul(b, y) for a in p_els for b in p_els)
        for x in p_els for y in p_els) if p_els else True
    rep.sigma_is_transitive_kappa = (not right_reversible) or transitive

    # proper: us = vt  iff  u s+ = v t+ and s sigma t
    forward = True
    buckets: dict = {}
    for u in u1:
        for s in slist:
            buckets.setdefault(m.mul(u, s), []).append((u, s))
    for items in buckets.values():
        u0, s0 = items[0]
        ref = m.mul(u0, act.splus(s0))
        for u, s in items[1:]:
            if m.mul(u, act.splus(s)) != ref or not sigma.same(s, s0):
                forward = False
                break
        if not forward:
            break
    backward = True
    back: dict = {}
    for u in u1:
        for s in slist:
            key = (m.mul(u, act.splus(s)), sigma.find(s))
            back.setdefault(key, []).append((u, s))
    for items in back.values():
        val = m.mul(items[0][0], items[0][1])
        if any(m.mul(u, s) != val for u, s in items[1:]):
            backward = False
            break
    rep.proper = forward and backward

    # left density of P in U: every u admits p in P with pu in P
    rep.left_dense = all(any(m.mul(p, u) in p_set for p in p_els)
                         for u in ctx.u_list()) if p_els else False

    # the ten one-sided identity conditions
    us_pairs = [(u, s) for u in ctx.u_list() for s in slist]
    w1 = any(all(m.mul(s, u) == s for s in slist) for u in ctx.u_list())
    w2 = all(any(m.mul(s, u) == s for u in ctx.u_list()) for s in slist)
    w3 = any(all(m.mul(u, s) == s for s in slist) for u in ctx.u_list())
    w4 = all(any(m.mul(u, s) == s for u in ctx.u_list()) for s in slist)
    prod_set = ctx.product_set()
    w5 = all(s in prod_set for s in slist)
    w6 = any(s in prod_set for s in slist)
    w7 = any(all(m.mul(m.mul(u, s), v) == m.mul(u, s) for u, s in us_pairs)
             for v in ctx.u_list())
    w8 = all(any(m.mul(m.mul(u, s), v) == m.mul(u, s) for v in ctx.u_list())
             for u, s in us_pairs)
    w9 = any(all(m.mul(u, act(s, v)) == u for u, s in us_pairs)
             for v in ctx.u_list())
    w10 = all(any(m.mul(u, act(s, v)) == u for v in ctx.u_list())
              for u, s in us_pairs)
    rep.w_conditions = (w1, w2, w3, w4, w5, w6, w7, w8, w9, w10)

    # equational forms of sigma, available for proper pairs over a
    # commutative / left-regular-band P
    if rep.proper:
        commutative = all(m.mul(a, b) == m.mul(b, a) for a in p_els for b in p_els)
        lrb = all(m.mul(m.mul(a, b), a) == m.mul(a, b) for a in p_els for b in p_els)
        ok = True
        if commutative:
            for s in slist:
                for t in slist:
                    eq = m.mul(act.splus(t), s) == m.mul(act.splus(s), t)
                    if eq != sigma.same(s, t):
                        ok = False
        elif lrb:
            for s in slist:
                for t in slist:
                    sp, tp = act.splus(s), act.splus(t)
                    eq = m.mul(m.mul(sp, tp), s) == m.mul(sp, t)
                    if eq != sigma.same(s, t):
                        ok = False
        rep.sigma_equational_ok = ok

    if rep.strong:
        rep.disjointness_ok = (ctx.u_set & ctx.s_set) <= {ident}
    in_right_units = all(any(m.mul(s, t) == ident for t in range(m.size))
                         for s in slist)
    rep.right_unit_rule_ok = rep.strong if in_right_units else None

    # left density + trivial sigma forces properness; cross-check
    if rep.left_dense and sigma.is_trivial() and not rep.proper:
        rep.failures.append(("density-properness-mismatch", ()))
    return rep


# ---------------------------------------------------------------------------
# Semidirect products
# ---------------------------------------------------------------------------

@dataclass
class SemidirectResult:
    table: CayleyTable                   # U x S, payload (u, s) ambient pairs
    index: dict                          # (u, s) -> table id
    ulist: list
    slist: list
    m1: frozenset
    m2: frozenset
    mm: frozenset
    retraction: dict
    retraction_ok: bool
    is_monoid: bool
    monoid_rule_ok: bool                 # monoid iff both monoids + trivial projections
    mid_identity_ok: bool

    def id_of(self, u, s) -> int:
        return self.index[(u, s)]


def semidirect(ctx: AmbientContext, act: ActionTable) -> SemidirectResult:
    """The semidirect product on U x S under (u,s)(v,t) = (u.(s>v), st).

    Also computes the subsemigroups cut out by u = u s+ and u = (1>u), their
    intersection with its retraction, the monoid verdict, and checks that
    the pair of identities is a mid-identity of the extended product.
    """
    m = ctx.m
    ident = ctx.identity
    ulist = ctx.u_list()
    slist = ctx.s_list()

    def prod(x, y):
        (u, s), (v, t) = x, y
        return (m.mul(u, act(s, v)), m.mul(s, t))

    have_units = ident in ctx.u_set and ident in ctx.s_set
    if have_units:
        ugens = list(ctx.u_gens) if ctx.u_gens else [u for u in ulist if u != ident]
        gens = [(u, ident) for u in ugens] + [(ident, s) for s in slist]
        # (1, 1) is always a left identity here (the action is monoidal) but
        # a right identity only when every u absorbs every projection
        absorbing = all(m.mul(u, act.splus(s)) == u for u in ulist for s in slist)
        identity_hint = (ident, ident) if absorbing else None
    else:
        gens = [(u, s) for u in ulist for s in slist]
        identity_hint = None
    size = len(ulist) * len(slist)
    table = closure_from_generators(gens, prod, identity_hint=identity_hint,
                                    cap=size + 1)
    if table.size != size:
        raise ValueError("semidirect generators failed to cover U x S")
    index = {pair: i for i, pair in enumerate(table.elements)}

    m1 = frozenset(i for i, (u, s) in enumerate(table.elements)
                   if u == m.mul(u, act.splus(s)))
    m2 = frozenset(i for i, (u, s) in enumerate(table.elements)
                   if u == act(ident, u))
    mm = m1 & m2

    retraction = {}
    for i, (u, s) in enumerate(table.elements):
        img = (m.mul(act(ident, u), act.splus(s)), s)
        retraction[i] = index[img]
    retr_ok = all(retraction[j] in mm for j in retraction) and \
        all(retraction[j] == j for j in mm) and \
        all(retraction[table.mul(i, j)] ==
            table.mul(retraction[i], retraction[j])
            for i in range(table.size) for j in table.gens)

    trivial_proj = all(act.splus(s) == ident for s in slist)
    monoid_expected = have_units and trivial_proj
    has_identity = False
    if have_units:
        e = index[(ident, ident)]
        has_identity = all(table.mul(e, x) == x and table.mul(x, e) == x
                           for x in range(table.size))
    monoid_rule_ok = has_identity == monoid_expected

    # mid-identity of the extended product: x (1,1) y = x y reduces to
    # (u s+).(s>v) = u.(s>v) for all coordinates
    u1 = ctx.u1()
    s1 = ctx.s1()
    mid_ok = True
    for s in s1:
        for u in u1:
            usp = m.mul(u, act.splus(s))
            for v in u1:
                if m.mul(usp, act(s, v)) != m.mul(u, act(s, v)):
                    mid_ok = False
                    break
            if not mid_ok:
                break
        if not mid_ok:
            break

    return SemidirectResult(table, index, ulist, slist, m1, m2, mm,
                            retraction, retr_ok, has_identity, monoid_rule_ok,
                            mid_ok)


# ---------------------------------------------------------------------------
# The kernel congruence and its relatives
# ---------------------------------------------------------------------------

@dataclass
class ThetaResult:
    theta: CongruencePartition           # on sd.table
    theta_u: dict                        # u in U1 -> SPartition over S
    theta_u1: dict                       # u in U1 -> SPartition over S1
    stab: dict                           # u in U1 -> frozenset of s with us = u
    product_values: list                 # pi(u, s) per sd table id
    factorization_laws_ok: bool
    description_ok: bool                 # theta via projections + theta_{us+}


def theta_and_friends(ctx: AmbientContext, act: ActionTable,
                      sd: SemidirectResult) -> ThetaResult:
    """theta as the fibres of (u, s) -> us, the per-element right congruences
    on S and S1, the stabilizers, and the structural cross-checks."""
    m = ctx.m
    u1 = ctx.u1()
    slist = sd.slist
    s1 = ctx.s1()

    values = [m.mul(u, s) for (u, s) in sd.table.elements]
    theta = CongruencePartition(sd.table.size)
    first: dict = {}
    for i, v in enumerate(values):
        if v in first:
            theta.union(first[v], i)
        else:
            first[v] = i

    def fibre_partition(members, u):
        part = SPartition(members)
        bucket: dict = {}
        for s in members:
            bucket.setdefault(m.mul(u, s), []).append(s)
        for group in bucket.values():
            for s in group[1:]:
                part.union(group[0], s)
        return part

    theta_u = {u: fibre_partition(slist, u) for u in u1}
    theta_u1 = {u: fibre_partition(s1, u) for u in u1}
    stab = {u: frozenset(s for s in slist if m.mul(u, s) == u) for u in u1}

    # theta(u,s)(v,t) iff u s+ = v t+ and (s,t) in theta_{u s+}
    desc = CongruencePartition(sd.table.size)
    firstd: dict = {}
    for i, (u, s) in enumerate(sd.table.elements):
        usp = m.mul(u, act.splus(s))
        key = (usp, theta_u[usp].find(s) if usp in theta_u else s)
        if key in firstd:
            desc.union(firstd[key], i)
        else:
            firstd[key] = i
    description_ok = desc == theta

    # natural factorisations: existence, unique left part, sigma-related
    # right parts for proper pairs
    nf_ok = True
    prod_set = ctx.product_set()
    nf_by_value: dict = {}
    for (u, s) in sd.table.elements:
        if u == m.mul(u, act.splus(s)):
            nf_by_value.setdefault(m.mul(u, s), []).append((u, s))
    for a in prod_set:
        items = nf_by_value.get(a, [])
        if not items:
            nf_ok = False
            break
        if len({u for u, _ in items}) != 1:
            nf_ok = False
            break

    return ThetaResult(theta, theta_u, theta_u1, stab, values, nf_ok,
                       description_ok)


def quotient_matches_product(ctx: AmbientContext, sd: SemidirectResult,
                             th: ThetaResult) -> bool:
    """quotient(U x S, theta) is isomorphic to the product set US via us."""
    q = quotient(sd.table, th.theta)
    classes = th.theta.classes()
    to_value = {i: th.product_values[c[0]] for i, c in enumerate(classes)}
    if len(set(to_value.values())) != q.size:
        return False
    if set(to_value.values()) != set(ctx.product_set()):
        return False
    m = ctx.m
    for a in range(q.size):
        for k, g in enumerate(q.gens):
            if to_value[q.right[a][k]] != m.mul(to_value[a], to_value[g]):
                return False
    return True


# ---------------------------------------------------------------------------
# Congruence generating rules
# ---------------------------------------------------------------------------

OMEGA_RULES = (
    "generic",               # any action pair; two-sided closure
    "submonoids",            # U, S submonoids; two-sided closure
    "right_generators",      # strong + a one-sided identity condition; right closure
    "join_family",           # strong submonoids; family V with join reduction
    "join_pairwise",         # strong submonoids; commutative U, pairwise joins
    "group_generators",      # submonoids with S a group; stabilizer generators
    "group_join_family",     # group case with join reduction over V
    "group_join_pairwise",   # group case, commutative U, pairwise joins
)


@dataclass
class OmegaResult:
    rule: str
    hypotheses_ok: bool
    failures: list
    partition: Optional[CongruencePartition]
    matches_theta: Optional[bool]


def _pairs_for(part: SPartition) -> list:
    out = []
    for cls in part.classes():
        out.extend((cls[0], s) for s in cls[1:])
    return out


def _join(members: Sequence, parts: Iterable[SPartition]) -> SPartition:
    out = SPartition(members)
    for p in parts:
        for cls in p.classes():
            for s in cls[1:]:
                out.union(cls[0], s)
    return out


def _right_closure_on_s(ctx: AmbientContext, seed_pairs) -> SPartition:
    """Least right congruence on S containing the given pairs."""
    m = ctx.m
    slist = ctx.s_list()
    gens = list(ctx.s_gens) if ctx.s_gens else slist
    part = SPartition(slist)
    queue = [p for p in seed_pairs if part.union(*p)]
    while queue:
        a, b = queue.pop()
        for g in gens:
            x, y = m.mul(a, g), m.mul(b, g)
            if part.union(x, y):
                queue.append((x, y))
    return part


def _divides(ctx, v, u) -> bool:
    """v divides u on the left: u = wv for some w in U1."""
    m = ctx.m
    return any(m.mul(w, v) == u for w in ctx.u1())


def omega_check(ctx: AmbientContext, act: ActionTable, sd: SemidirectResult,
                th: ThetaResult, rule: str, *, omega_u: Optional[dict] = None,
                v_subset: Optional[Sequence] = None,
                gamma_u: Optional[dict] = None) -> OmegaResult:
    """Build a generating set for theta by the selected rule, verify the
    rule's hypotheses first, close it (as a right congruence for
    right_generators, two-sided otherwise) and compare with theta exactly.

    omega_u: per-element generating pairs for the right congruences on S
    (defaults to all their pairs); v_subset: the reduction family V;
    gamma_u: group generating sets for the stabilizers.
    """
    if rule not in OMEGA_RULES:
        raise ValueError(f"unknown rule {rule!r}")
    m = ctx.m
    ident = ctx.identity
    ulist = ctx.u_list()
    slist = ctx.s_list()
    failures: list = []

    rep, _ = check_pair_from_plus(ctx)
    if not rep.action:
        failures.append("not an action pair")
    strong = rep.strong
    have_units = ident in ctx.u_set and ident in ctx.s_set

    if omega_u is None:
        omega_u = {u: _pairs_for(th.theta_u[u]) for u in ulist}

    def omega_u_generates(u) -> bool:
        return _right_closure_on_s(ctx, omega_u.get(u, ())) == th.theta_u[u]

    if rule in ("submonoids", "join_family", "join_pairwise",
                "group_generators", "group_join_family", "group_join_pairwise"):
        if not have_units:
            failures.append("U and S must be submonoids")
    if rule in ("right_generators", "join_family", "join_pairwise"):
        if not strong:
            failures.append("pair is not strong")
    if rule == "right_generators":
        if rep.w_conditions is None:
            classify_proper(ctx, act, rep)
        if not any(rep.w_conditions):
            failures.append("no one-sided identity condition holds")
        for u in ulist:
            if not omega_u_generates(u):
                failures.append(f"generators miss theta_u at u={u}")
                break

    if rule in ("join_family", "join_pairwise"):
        if rule == "join_pairwise":
            if not all(m.mul(a, b) == m.mul(b, a) for a in ulist for b in ulist):
                failures.append("U is not commutative")
            for a in ulist:
                for b in ulist:
                    ab = m.mul(a, b)
                    if _join(slist, (th.theta_u[a], th.theta_u[b])) != th.theta_u[ab]:
                        failures.append(f"pairwise join fails at ({a},{b})")
                        break
                else:
                    continue
                break
            if v_subset is None:
                failures.append("join_pairwise needs a generating family V")
            else:
                seen = {ident}
                frontier = [ident]
                while frontier:
                    nxt = []
                    for x in frontier:
                        for v in v_subset:
                            y = m.mul(x, v)
                            if y not in seen:
                                seen.add(y)
                                nxt.append(y)
                    frontier = nxt
                if seen != set(ctx.u1()):
                    failures.append("V does not generate U as a monoid")
        else:
            if v_subset is None:
                failures.append("join_family needs the family V")
            else:
                for u in ulist:
                    parts = [th.theta_u[v] for v in v_subset if _divides(ctx, v, u)]
                    if _join(slist, parts) != th.theta_u[u]:
                        failures.append(f"join reduction fails at u={u}")
                        break
        if v_subset is not None:
            for v in v_subset:
                if not omega_u_generates(v):
                    failures.append(f"generators miss theta_u at v={v}")
                    break

    def group_closure(gens_s) -> frozenset:
        inv = {}
        for s in slist:
            for t in slist + [ident]:
                if m.mul(s, t) == ident and m.mul(t, s) == ident:
                    inv[s] = t
        seed = set()
        for s in gens_s:
            seed.add(s)
            if s not in inv:
                return frozenset()
            seed.add(inv[s])
        seen = {ident} | seed
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in seed:
                    c = m.mul(a, b)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return frozenset(seen)

    if rule in ("group_generators", "group_join_family", "group_join_pairwise"):
        is_group = all(any(m.mul(s, t) == ident and m.mul(t, s) == ident
                           for t in slist) for s in slist)
        if not is_group:
            failures.append("S is not a group")
        else:
            if gamma_u is None:
                gamma_u = {u: sorted(th.stab[u] - {ident}) for u in ulist}
            stab1 = {u: (th.stab[u] | {ident}) for u in ulist}

            def gamma_generates(u) -> bool:
                return group_closure(gamma_u.get(u, ())) == stab1[u]

            if rule == "group_generators":
                for u in ulist:
                    if not gamma_generates(u):
                        failures.append(f"generators miss the stabilizer at u={u}")
                        break
            elif rule == "group_join_family":
                if v_subset is None:
                    failures.append("group_join_family needs the family V")
                else:
                    for u in ulist:
                        gen_pool = [s for v in v_subset if _divides(ctx, v, u)
                                    for s in stab1[v]]
                        if group_closure(gen_pool) != stab1[u]:
                            failures.append(f"stabilizer join fails at u={u}")
                            break
                    for v in v_subset:
                        if not gamma_generates(v):
                            failures.append(f"generators miss the stabilizer at v={v}")
                            break
            else:
                if not all(m.mul(a, b) == m.mul(b, a) for a in ulist for b in ulist):
                    failures.append("U is not commutative")
                for a in ulist:
                    for b in ulist:
                        if group_closure(list(stab1[a]) + list(stab1[b])) != \
                                stab1[m.mul(a, b)]:
                            failures.append(f"pairwise stabilizer join fails ({a},{b})")
                            break
                    else:
                        continue
                    break
                if v_subset is None:
                    failures.append("group_join_pairwise needs V")

    if failures:
        return OmegaResult(rule, False, failures, None, None)

    # assemble the generating pairs inside the semidirect table
    pairs = []
    if rule == "generic":
        for u in ulist:
            for a, b in _pairs_for(th.theta_u[u]):
                pairs.append((sd.id_of(u, a), sd.id_of(u, b)))
        for u in ulist:
            for s in slist:
                pairs.append((sd.id_of(u, s),
                              sd.id_of(m.mul(u, act.splus(s)), s)))
        side = "two_sided"
    elif rule == "submonoids":
        for u in ulist:
            for a, b in _pairs_for(th.theta_u[u]):
                pairs.append((sd.id_of(u, a), sd.id_of(u, b)))
        for s in slist:
            pairs.append((sd.id_of(ident, s), sd.id_of(act.splus(s), s)))
        side = "two_sided"
    elif rule == "right_generators":
        for u in ulist:
            for a, b in omega_u.get(u, ()):
                pairs.append((sd.id_of(u, a), sd.id_of(u, b)))
        side = "right"
    elif rule in ("join_family", "join_pairwise"):
        for v in v_subset:
            for a, b in omega_u.get(v, ()):
                pairs.append((sd.id_of(v, a), sd.id_of(v, b)))
        side = "two_sided"
    elif rule == "group_generators":
        for u in ulist:
            for s in gamma_u.get(u, ()):
                pairs.append((sd.id_of(u, ident), sd.id_of(u, s)))
        side = "two_sided"
    else:
        if v_subset is None:
            v_subset = ulist
        for v in v_subset:
            for s in gamma_u.get(v, ()):
                pairs.append((sd.id_of(v, ident), sd.id_of(v, s)))
        side = "two_sided"

    part = congruence_closure(sd.table, pairs, side)
    return OmegaResult(rule, True, [], part, part == th.theta)


# ---------------------------------------------------------------------------
# Special congruences
# ---------------------------------------------------------------------------

@dataclass
class SpecialReport:
    congruence_ok: bool
    axioms: list
    failures: list

    @property
    def special(self) -> bool:
        return self.congruence_ok and all(self.axioms)


def check_special_congruence(ctx: AmbientContext, act: ActionTable,
                             sd: SemidirectResult,
                             sigma: CongruencePartition) -> SpecialReport:
    """Verify the eight axioms singling out the congruences on a semidirect
    product whose quotients arise from action pairs.  The relation at the
    tuple identity is read off sigma when U is a monoid and taken to be
    trivial otherwise."""
    m = ctx.m
    ident = ctx.identity
    ulist = ctx.u_list()
    slist = ctx.s_list()
    fails: list = []

    cong_ok = is_compatible(sd.table, sigma, "two_sided")
    if not cong_ok:
        fails.append("input relation is not a two-sided congruence")

    def sig_u(u) -> SPartition:
        part = SPartition(slist)
        if u == ident and ident not in ctx.u_set:
            return part
        firsts: dict = {}
        for s in slist:
            r = sigma.find(sd.id_of(u, s))
            if r in firsts:
                part.union(firsts[r], s)
            else:
                firsts[r] = s
        return part

    sig = {u: sig_u(u) for u in set(ulist) | {ident}}
    axioms = []

    ax1 = all(sigma.same(sd.id_of(u, s), sd.id_of(m.mul(u, act.splus(s)), s))
              for u in ulist for s in slist)
    axioms.append(ax1)

    ax2 = True
    roots: dict = {}
    for s in slist:
        sp = act.splus(s)
        if sp == ident and ident not in ctx.u_set:
            continue
        r = sigma.find(sd.id_of(sp, s))
        if r in roots:
            ax2 = False
            fails.append(f"projection sections collide: {roots[r]} vs {s}")
            break
        roots[r] = s
    axioms.append(ax2)

    ax3 = True
    for cls in sigma.classes():
        u0, s0 = sd.table.elements[cls[0]]
        ref = m.mul(u0, act.splus(s0))
        for i in cls[1:]:
            u, s = sd.table.elements[i]
            if m.mul(u, act.splus(s)) != ref:
                ax3 = False
                break
        if not ax3:
            break
    axioms.append(ax3)

    axioms.append(sig[ident].is_trivial())

    sgens = list(ctx.s_gens) if ctx.s_gens else slist
    ax5 = True
    for u in ulist:
        part = sig[u]
        for cls in part.classes():
            s0 = cls[0]
            for t in cls[1:]:
                if any(not part.same(m.mul(s0, g), m.mul(t, g)) for g in sgens):
                    ax5 = False
                    break
            if not ax5:
                break
        if not ax5:
            break
    axioms.append(ax5)

    ax6 = all(all(all(sig[m.mul(w, u)].same(cls[0], t) for t in cls[1:])
                  for cls in sig[u].classes())
              for u in ulist for w in ulist)
    axioms.append(ax6)

    ax7 = True
    for u in ulist:
        for cls in sig[u].classes():
            s0 = cls[0]
            for t in cls[1:]:
                for x in slist:
                    xu = act(x, u)
                    if not sig[xu].same(m.mul(x, s0), m.mul(x, t)):
                        ax7 = False
                        break
                if not ax7:
                    break
            if not ax7:
                break
        if not ax7:
            break
    axioms.append(ax7)

    ax8 = True
    for u in ulist:
        for cls in sig[u].classes():
            s0 = cls[0]
            for w in ulist:
                ref = m.mul(u, act(s0, w))
                if any(m.mul(u, act(t, w)) != ref for t in cls[1:]):
                    ax8 = False
                    break
                part = sig[ref] if (ref in sig) else sig_u(ref)
                if any(not part.same(s0, t) for t in cls[1:]):
                    ax8 = False
                    break
            if not ax8:
                break
        if not ax8:
            break
    axioms.append(ax8)

    for i, ok in enumerate(axioms):
        if not ok and not fails:
            fails.append(f"axiom {i + 1} ({SPECIAL_AXIOM_NAMES[i]}) fails")
    return SpecialReport(cong_ok, axioms, fails)


# ---------------------------------------------------------------------------
# Proper covers
# ---------------------------------------------------------------------------

@dataclass
class CoverResult:
    cover_table: CayleyTable             # the carrier monoid, payload (u, s)
    cover_ctx: AmbientContext
    cover_report: PairReport
    sigma_trivial: bool
    proper: bool
    psi: dict                            # cover product-set id -> ambient id
    surjective: bool
    u_copy_ok: bool
    s_copy_ok: bool
    psi_u_iso: Optional[bool]
    left_restriction_ok: Optional[bool] = None
    projection_separating: Optional[bool] = None
    unary_preserved: Optional[bool] = None


def proper_cover(ctx: AmbientContext, act: ActionTable, *,
                 ambient_plus: Optional[dict] = None) -> CoverResult:
    """Build the cover pair from sections (u, 1) and (s+, s) inside the
    monoid of pairs with u = u s+, and verify the covering morphism
    (u, s) -> us onto the original product set.

    When ambient_plus gives a left-restriction structure on the ambient
    product set (the projection case U = all s+), the carrier is also
    checked to be left restriction under (u, s)+ = (u, 1), with the
    covering morphism separating projections and preserving the unary
    operation.
    """
    m = ctx.m
    ident = ctx.identity
    u1 = ctx.u1()
    s1 = ctx.s1()

    elements = [(u, s) for u in u1 for s in s1
                if u == m.mul(u, act.splus(s))]

    def prod(x, y):
        (u, s), (v, t) = x, y
        return (m.mul(u, act(s, v)), m.mul(s, t))

    order = sorted(elements)
    gens = [e for e in order if e != (ident, ident)]
    carrier = closure_from_generators(gens, prod, identity_hint=(ident, ident),
                                      cap=len(elements) + 1)
    assert carrier.size == len(elements)
    cid = {e: i for i, e in enumerate(carrier.elements)}

    under = {u: cid[(u, ident)] for u in ctx.u_list()}
    over = {s: cid[(act.splus(s), s)] for s in ctx.s_list()}

    u_copy_ok = all(carrier.mul(under[a], under[b]) == under[m.mul(a, b)]
                    for a in ctx.u_list() for b in ctx.u_list())
    s_copy_ok = all(carrier.mul(over[a], over[b]) == over[m.mul(a, b)]
                    for a in ctx.s_list() for b in ctx.s_list())

    cover_plus = {over[s]: (cid[(act.splus(s), ident)]
                            if act.splus(s) != ident else carrier.identity)
                  for s in ctx.s_list()}
    cover_ctx = AmbientContext(carrier,
                               frozenset(under.values()),
                               frozenset(over.values()),
                               cover_plus,
                               name=f"cover({ctx.name})")
    rep, cover_act = check_pair_from_plus(cover_ctx)
    classify_proper(cover_ctx, cover_act, rep)

    prod_ids = sorted({carrier.mul(under[u], over[s])
                       for u in ctx.u_list() for s in ctx.s_list()})
    psi = {i: m.mul(*carrier.elements[i]) for i in prod_ids}
    target = ctx.product_set()
    surjective = set(psi.values()) == set(target)

    psi_u_iso = None
    if ident in ctx.s_set:
        psi_u_iso = len({psi[under[u]] for u in ctx.u_list()}) == len(ctx.u_set) \
            and all(psi[under[u]] == u for u in ctx.u_list())

    result = CoverResult(carrier, cover_ctx, rep,
                         rep.sigma.is_trivial() if rep.sigma else False,
                         bool(rep.proper), psi, surjective, u_copy_ok,
                         s_copy_ok, psi_u_iso)

    if ambient_plus is not None:
        # carrier unary operation (u, s)+ = (u, 1) on the cover product set
        cset = prod_ids
        cplus = {i: cid[(carrier.elements[i][0], ident)] for i in cset}
        result.left_restriction_ok = _left_restriction_laws(
            carrier, cset, cplus)
        projections = {cplus[i] for i in cset}
        result.projection_separating = len({psi.get(p, m.mul(*carrier.elements[p]))
                                            for p in projections}) == len(projections)
        result.unary_preserved = all(
            m.mul(*carrier.elements[cplus[i]]) == ambient_plus[psi[i]]
            for i in cset)
    return result


def _left_restriction_laws(table: CayleyTable, carrier: Iterable[int],
                           plus_of: dict) -> bool:
    """The four defining unary-semigroup identities, scanned exhaustively."""
    els = sorted(carrier)
    mul = table.mul
    for x in els:
        if mul(plus_of[x], x) != x:
            return False
    for x in els:
        for y in els:
            px, py = plus_of[x], plus_of[y]
            if mul(px, py) != mul(py, px):
                return False
            if plus_of[mul(px, y)] != mul(px, py):
                return False
            if mul(x, py) != mul(plus_of[mul(x, y)], x):
                return False
    return True


# ---------------------------------------------------------------------------
# Central embedding
# ---------------------------------------------------------------------------

@dataclass
class EmbedResult:
    hypotheses_ok: bool
    failures: list
    well_defined: Optional[bool] = None
    injective: Optional[bool] = None
    homomorphic: Optional[bool] = None
    u_embedding_injective: Optional[bool] = None
    values_semilattice: Optional[bool] = None
    us_size: Optional[int] = None
    sigma_class_count: Optional[int] = None

    @property
    def ok(self) -> bool:
        return bool(self.hypotheses_ok and self.well_defined and
                    self.injective and self.homomorphic)


def embed_central(ctx: AmbientContext, act: ActionTable, *,
                  us_cap: int = 10 ** 4, class_cap: int = 64) -> EmbedResult:
    """Embed the product monoid into a semidirect product over S modulo sigma,
    with first components the maps class -> V P built from the action orbit
    sets, assuming the projections generate a central submonoid of U.

    The codomain is never materialized: well-definedness, injectivity and
    the homomorphism law are checked pointwise on the product set.
    """
    m = ctx.m
    ident = ctx.identity
    failures: list = []

    rep, _ = check_pair_from_plus(ctx)
    classify_proper(ctx, act, rep)
    if not rep.proper:
        failures.append("pair is not proper")
    if ident not in ctx.u_set or ident not in ctx.s_set:
        failures.append("U and S must be submonoids")
    p_set = rep.p_set or projection_semigroup(ctx, act)
    p1 = sorted(p_set | {ident})
    if not all(m.mul(p, u) == m.mul(u, p) for p in p1 for u in ctx.u_list()):
        failures.append("projections are not central in U")

    us = sorted(ctx.product_set())
    if len(us) > us_cap:
        failures.append(f"product set too large: {len(us)}")
    sigma = rep.sigma
    classes = sigma.classes()
    if len(classes) > class_cap:
        failures.append(f"too many sigma classes: {len(classes)}")
    if failures:
        return EmbedResult(False, failures)

    class_of = {s: i for i, cls in enumerate(classes) for s in cls}
    reps = [cls[0] for cls in classes]
    cls_mul = [[class_of[m.mul(a, b)] for b in reps] for a in reps]

    def value(cls_idx, u) -> frozenset:
        orbit = {act(t, u) for t in classes[cls_idx]}
        return frozenset(m.mul(v, p) for v in orbit for p in p1)

    f_of = {u: tuple(value(i, u) for i in range(len(classes)))
            for u in ctx.u_list()}

    u_embedding_injective = len(set(f_of.values())) == len(ctx.u_set)

    # natural factorisations per product element
    nf: dict = {}
    for u in ctx.u_list():
        for s in ctx.s_list():
            if m.mul(u, act.splus(s)) == u:
                nf.setdefault(m.mul(u, s), []).append((u, s))
    well_defined = True
    psi = {}
    for a in us:
        items = nf.get(a, [])
        if not items:
            well_defined = False
            break
        images = {(f_of[u], class_of[s]) for u, s in items}
        if len(images) != 1:
            well_defined = False
            break
        psi[a] = next(iter(images))
    injective = well_defined and len(set(psi.values())) == len(us)

    homomorphic = well_defined
    if well_defined:
        for a in us:
            fa, ca = psi[a]
            for b in us:
                fb, cb = psi[b]
                shifted = tuple(fb[cls_mul[i][ca]] for i in range(len(classes)))
                star = tuple(frozenset(m.mul(x, y) for x in fa[i] for y in shifted[i])
                             for i in range(len(classes)))
                if psi[m.mul(a, b)] != (star, cls_mul[ca][cb]):
                    homomorphic = False
                    break
            if not homomorphic:
                break

    values_semilattice = None
    if ctx.u_set == p_set or ctx.u_set | {ident} == frozenset(p1):
        pool = {v for f in f_of.values() for v in f}
        frontier = list(pool)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(pool):
                    c = frozenset(m.mul(x, y) for x in a for y in b)
                    if c not in pool:
                        pool.add(c)
                        nxt.append(c)
            frontier = nxt
        values_semilattice = all(
            frozenset(m.mul(x, y) for x in a for y in a) == a for a in pool) and all(
            frozenset(m.mul(x, y) for x in a for y in b) ==
            frozenset(m.mul(y, x) for x in a for y in b)
            for a in pool for b in pool)

    return EmbedResult(True, [], well_defined, injective, homomorphic,
                       u_embedding_injective, values_semilattice,
                       len(us), len(classes))


# ---------------------------------------------------------------------------
# Pair construction helpers
# ---------------------------------------------------------------------------

def lr_pair(table: CayleyTable, plus_of: dict, *, name: str = "",
            s_gens: Optional[Sequence] = None) -> AmbientContext:
    """The (projections, everything) pair of a left restriction monoid."""
    projections = frozenset(plus_of[x] for x in range(table.size))
    return AmbientContext(table, projections,
                          frozenset(range(table.size)),
                          {s: plus_of[s] for s in range(table.size)},
                          name=name or "projection-pair",
                          s_gens=tuple(s_gens) if s_gens else None)
