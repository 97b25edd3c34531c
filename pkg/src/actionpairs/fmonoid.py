"""Finite semigroup/monoid engine.

Elements of a finite semigroup are integer ids attached to a CayleyTable.
A table stores right multiplication by its generators plus, for every
element, a shortlex-minimal word over the generators; the word list doubles
as the normal-form function used by the presentation machinery.

Presented monoids are enumerated with a node/coincidence procedure over the
right Cayley graph (bounded rewriting cannot certify completeness; a closed
graph can).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

Word = tuple[int, ...]

NODE_CAP = 5_000_000        # default enumeration budget (elements / nodes)
FULL_TABLE_CAP = 5000       # materialize the m x m table only below this


class SizeBoundExceeded(Exception):
    """Raised when a closure grows past its element cap."""


class BoundExceeded(Exception):
    """Raised by enumerate_presentation.

    undecided=True means the node budget ran out (no finiteness claim);
    undecided=False means enumeration finished but the monoid is larger
    than the requested bound, with its actual size in `size`.
    """

    def __init__(self, msg, *, undecided, size=None, nodes=None):
        super().__init__(msg)
        self.undecided = undecided
        self.size = size
        self.nodes = nodes


class NotACongruence(Exception):
    pass


def shortlex_key(w: Word):
    return (len(w), w)


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """A monoid or semigroup presentation over a named alphabet.

    Relations are stored canonically: shortlex-larger side first, duplicates
    and trivial pairs (w, w) removed, original order otherwise preserved.
    """

    alphabet: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]
    kind: str  # "monoid" | "semigroup"

    @staticmethod
    def make(alphabet: Sequence[str], relations: Iterable[tuple[Sequence[int], Sequence[int]]],
             kind: str = "monoid") -> "Presentation":
        if kind not in ("monoid", "semigroup"):
            raise ValueError(f"bad presentation kind {kind!r}")
        names = tuple(alphabet)
        if len(set(names)) != len(names):
            raise ValueError("alphabet letters must be distinct")
        seen = set()
        out = []
        for lhs, rhs in relations:
            u, v = tuple(lhs), tuple(rhs)
            for w in (u, v):
                if any(not (0 <= i < len(names)) for i in w):
                    raise ValueError(f"relation word {w} escapes the alphabet")
            if kind == "semigroup" and (not u or not v):
                raise ValueError("semigroup relations must have non-empty sides")
            if u == v:
                continue
            if shortlex_key(u) < shortlex_key(v):
                u, v = v, u
            if (u, v) in seen:
                continue
            seen.add((u, v))
            out.append((u, v))
        return Presentation(names, tuple(out), kind)

    def letter(self, name: str) -> int:
        return self.alphabet.index(name)

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "alphabet": list(self.alphabet),
            "relations": [[list(u), list(v)] for u, v in self.relations],
        })

    @staticmethod
    def from_json(text: str) -> "Presentation":
        d = json.loads(text)
        return Presentation.make(d["alphabet"],
                                 [(tuple(u), tuple(v)) for u, v in d["relations"]],
                                 d["kind"])


# ---------------------------------------------------------------------------
# Cayley tables
# ---------------------------------------------------------------------------

class CayleyTable:
    """A concretely enumerated finite semigroup or monoid.

    right[e][k] is e * gens[k].  nf[e] is a shortlex-minimal word over the
    generators evaluating to e (empty word = identity, monoids only).
    parent[e] encodes nf[e] = nf[p] + (k,), with p = -1 for one-letter words
    with no identity present; it lets products be evaluated without the full
    table.  elements, when set, carries the original payload objects.
    """

    __slots__ = ("size", "gens", "right", "nf", "parent", "identity",
                 "elements", "_full", "_left")

    def __init__(self, size, gens, right, nf, parent, identity=None, elements=None):
        self.size = size
        self.gens = list(gens)
        self.right = right
        self.nf = nf
        self.parent = parent
        self.identity = identity
        self.elements = elements
        self._full = None
        self._left = None

    # -- products ----------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        if self._full is not None:
            return self._full[a][b]
        x = a
        right = self.right
        for k in self.nf[b]:
            x = right[x][k]
        return x

    def mul_word(self, a: int, word: Word) -> int:
        x = a
        right = self.right
        for k in word:
            x = right[x][k]
        return x

    def eval_word(self, word: Word) -> int:
        """Evaluate a generator word to an element; empty word needs an identity."""
        if not word:
            if self.identity is None:
                raise ValueError("empty word in a table without identity")
            return self.identity
        x = self.gens[word[0]]
        right = self.right
        for k in word[1:]:
            x = right[x][k]
        return x

    def full_table(self):
        """Materialize and cache the m x m table (sizes under FULL_TABLE_CAP)."""
        if self._full is None:
            if self.size > FULL_TABLE_CAP:
                raise SizeBoundExceeded(f"table too big to materialize: {self.size}")
            full = []
            right = self.right
            parent = self.parent
            identity = self.identity
            for a in range(self.size):
                row = [0] * self.size
                for b in range(self.size):
                    if b == identity:
                        row[b] = a
                    else:
                        p, k = parent[b]
                        row[b] = right[a][k] if p < 0 or p == identity else right[row[p]][k]
                full.append(row)
            self._full = full
        return self._full

    def left_by_gen(self):
        """left[e][k] = gens[k] * e, built by the same parent recurrence."""
        if self._left is None:
            g = len(self.gens)
            right = self.right
            left = []
            for e in range(self.size):
                if e == self.identity:
                    left.append(list(self.gens))
                    continue
                p, j = self.parent[e]
                if p < 0 or p == self.identity:
                    left.append([right[self.gens[k]][j] for k in range(g)])
                else:
                    lp = left[p]
                    left.append([right[lp[k]][j] for k in range(g)])
            self._left = left
        return self._left

    # -- misc ----------------------------------------------------------------

    def is_identity_ok(self) -> bool:
        e = self.identity
        if e is None:
            return True
        return all(self.mul(e, x) == x and self.mul(x, e) == x for x in range(self.size))

    def to_json(self) -> str:
        return json.dumps({
            "size": self.size,
            "gens": list(self.gens),
            "table": [list(r) for r in self.right],
            "nf": [list(w) for w in self.nf],
        })

    @staticmethod
    def from_json(text: str) -> "CayleyTable":
        d = json.loads(text)
        size = d["size"]
        gens = list(d["gens"])
        right = [list(r) for r in d["table"]]
        nf = [tuple(w) for w in d["nf"]]
        identity = None
        parent: list = [None] * size
        for e in range(size):
            w = nf[e]
            if not w:
                identity = e
                continue
            if len(w) == 1:
                parent[e] = (identity if identity is not None else -1, w[0])
            else:
                prev = next(i for i in range(size) if nf[i] == w[:-1])
                parent[e] = (prev, w[-1])
        t = CayleyTable(size, gens, right, nf, parent, identity)
        if identity is None:
            ident = _detect_identity(t)
            t.identity = ident
        return t


def _detect_identity(t: CayleyTable) -> Optional[int]:
    # e is a two-sided identity iff it fixes every generator on both sides
    for e in range(t.size):
        if all(t.right[e][k] == t.gens[k] for k in range(len(t.gens))) and \
           all(t.mul(g, e) == g for g in t.gens):
            return e
    return None


def closure_from_generators(gens: Sequence, product: Callable,
                            identity_hint=None, *, cap: int = NODE_CAP,
                            full_cap: int = FULL_TABLE_CAP) -> CayleyTable:
    """Enumerate the semigroup generated by `gens` under `product`.

    Elements are numbered in shortlex-BFS discovery order (the identity
    hint, if given, comes first with the empty word as its normal form).
    Deterministic for a fixed generator order.
    """
    if not gens:
        raise ValueError("need at least one generator")
    index: dict = {}
    elems: list = []
    nf: list[Word] = []
    parent: list = []

    def register(x, word, par):
        if len(elems) >= cap:
            raise SizeBoundExceeded(f"closure exceeded cap {cap}")
        index[x] = len(elems)
        elems.append(x)
        nf.append(word)
        parent.append(par)
        return len(elems) - 1

    identity = None
    if identity_hint is not None:
        identity = register(identity_hint, (), None)
    gen_ids = []
    for k, g in enumerate(gens):
        if g in index:
            gen_ids.append(index[g])
        else:
            gen_ids.append(register(g, (k,), (identity if identity is not None else -1, k)))

    right: list[list[int]] = []
    e = 0
    while e < len(elems):
        row = []
        for k in range(len(gens)):
            p = product(elems[e], gens[k])
            j = index.get(p)
            if j is None:
                j = register(p, nf[e] + (k,), (e, k))
            row.append(j)
        right.append(row)
        e += 1

    t = CayleyTable(len(elems), gen_ids, right, nf, parent, identity, elems)
    if identity is None:
        t.identity = _detect_identity(t)
    elif not all(t.right[identity][k] == gen_ids[k] and
                 product(gens[k], identity_hint) == gens[k]
                 for k in range(len(gens))):
        raise ValueError("identity hint is not a two-sided identity")
    if t.size <= full_cap:
        t.full_table()
    return t


def table_from_elements(elements: Sequence, product: Callable, *,
                        gens: Optional[Sequence] = None, identity=None,
                        full_cap: int = FULL_TABLE_CAP) -> CayleyTable:
    """Build a table over an explicitly known element list.

    When no generating set is known, every element serves as a generator;
    normal forms are then single letters (the identity keeps the empty word).
    """
    if gens is None:
        gens = [x for x in elements if identity is None or x != identity]
        if not gens and identity is not None:
            gens = [identity]
    t = closure_from_generators(gens, product, identity_hint=identity,
                                cap=len(elements) + 1, full_cap=full_cap)
    if t.size != len(elements):
        raise ValueError("given generators do not generate the given elements")
    return t


def normal_form(table: CayleyTable, e: int) -> Word:
    """Stored shortlex-BFS word for element e."""
    return table.nf[e]


def associativity_audit(table: CayleyTable) -> bool:
    """Exhaustive (xy)z == x(yz) scan; meant for small tables."""
    full = table.full_table()
    n = table.size
    for a in range(n):
        fa = full[a]
        for b in range(n):
            fab = full[fa[b]]
            fb = full[b]
            for c in range(n):
                if fab[c] != fa[fb[c]]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Congruences
# ---------------------------------------------------------------------------

class CongruencePartition:
    """Union-find partition of a table's elements, tagged by closure side."""

    __slots__ = ("parent", "side")

    def __init__(self, n: int, side: str = "two_sided"):
        self.parent = list(range(n))
        self.side = side

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def canonical(self) -> tuple[int, ...]:
        """Per-element least class member; equal partitions compare equal."""
        n = len(self.parent)
        least = {}
        for x in range(n):
            r = self.find(x)
            if r not in least or x < least[r]:
                least[r] = x
        return tuple(least[self.find(x)] for x in range(n))

    def classes(self) -> list[list[int]]:
        by_root: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            by_root.setdefault(self.find(x), []).append(x)
        return sorted((sorted(c) for c in by_root.values()), key=lambda c: c[0])

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def __eq__(self, other):
        return isinstance(other, CongruencePartition) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())


def congruence_closure(table: CayleyTable, pairs: Iterable[tuple[int, int]],
                       side: str = "two_sided") -> CongruencePartition:
    """Smallest equivalence containing `pairs`, compatible on the given side(s).

    Union-find with a pending queue: each effective merge (a, b) is propagated
    to (a*g, b*g) per generator g, and to (g*a, g*b) for left/two-sided closure.
    """
    if side not in ("left", "right", "two_sided"):
        raise ValueError(f"bad side {side!r}")
    part = CongruencePartition(table.size, side)
    right = table.right
    left = table.left_by_gen() if side in ("left", "two_sided") else None
    g = len(table.gens)
    queue = []
    for a, b in pairs:
        if not (0 <= a < table.size and 0 <= b < table.size):
            raise ValueError(f"pair ({a},{b}) out of range")
        if part.union(a, b):
            queue.append((a, b))
    while queue:
        a, b = queue.pop()
        for k in range(g):
            if side in ("right", "two_sided"):
                x, y = right[a][k], right[b][k]
                if part.union(x, y):
                    queue.append((x, y))
            if side in ("left", "two_sided"):
                x, y = left[a][k], left[b][k]
                if part.union(x, y):
                    queue.append((x, y))
    return part


def is_compatible(table: CayleyTable, part: CongruencePartition, side: str) -> bool:
    """Re-scan compatibility of an equivalence on the requested side(s)."""
    right = table.right
    left = table.left_by_gen() if side in ("left", "two_sided") else None
    for cls in part.classes():
        a = cls[0]
        for b in cls[1:]:
            for k in range(len(table.gens)):
                if side in ("right", "two_sided") and \
                        not part.same(right[a][k], right[b][k]):
                    return False
                if side in ("left", "two_sided") and \
                        not part.same(left[a][k], left[b][k]):
                    return False
    return True


def quotient(table: CayleyTable, part: CongruencePartition) -> CayleyTable:
    """Quotient by a two-sided congruence; classes numbered by least member."""
    if not is_compatible(table, part, "two_sided"):
        raise NotACongruence("partition is not two-sided compatible")
    classes = part.classes()
    rep = [c[0] for c in classes]
    cls_of = {}
    for i, c in enumerate(classes):
        for x in c:
            cls_of[x] = i
    g = len(table.gens)
    right = [[cls_of[table.right[rep[i]][k]] for k in range(g)] for i in range(len(rep))]
    gens = [cls_of[x] for x in table.gens]
    identity = cls_of[table.identity] if table.identity is not None else None
    nf, parent = _bfs_words(right, gens, identity)
    q = CayleyTable(len(rep), gens, right, nf, parent, identity)
    if identity is None:
        q.identity = _detect_identity(q)
    if q.size <= FULL_TABLE_CAP:
        q.full_table()
    return q


def _bfs_words(right, gens, identity):
    """Shortlex-BFS words over `gens` reaching every element of a right table."""
    n = len(right)
    nf: list = [None] * n
    parent: list = [None] * n
    order = []
    if identity is not None:
        nf[identity] = ()
        order.append(identity)
    for k, ge in enumerate(gens):
        if nf[ge] is None:
            nf[ge] = (k,)
            parent[ge] = (identity if identity is not None else -1, k)
            order.append(ge)
    i = 0
    while i < len(order):
        e = order[i]
        i += 1
        for k in range(len(gens)):
            t = right[e][k]
            if nf[t] is None:
                nf[t] = nf[e] + (k,)
                parent[t] = (e, k)
                order.append(t)
    if any(w is None for w in nf):
        raise ValueError("generators do not reach every element")
    return nf, parent


# ---------------------------------------------------------------------------
# Presented monoids: node/coincidence enumeration
# ---------------------------------------------------------------------------

BUDGET_FACTOR = 60


def set_node_cap(value: int) -> None:
    """Override the global enumeration budget (the CLI honors the
    ACTIONPAIR_NODE_CAP environment variable through this)."""
    global NODE_CAP
    NODE_CAP = int(value)


def enumerate_presentation(p: Presentation, bound: int, *,
                           node_cap: Optional[int] = None) -> CayleyTable:
    """Enumerate the monoid/semigroup presented by `p` when it has <= bound elements.

    Builds the right Cayley graph by HLT-style relation tracing with
    coincidence processing, then re-verifies closure, so a returned table is
    certified complete.  The output numbering is canonical (shortlex-BFS from
    the empty word) and independent of processing order.
    """
    if node_cap is None:
        node_cap = min(NODE_CAP, max(2000, BUDGET_FACTOR * bound + 1000))
    nl = len(p.alphabet)
    rels = p.relations

    rows: list[list[int]] = [[-1] * nl]
    uf = [0]
    created = 1

    def find(x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    def new_node():
        nonlocal created
        if created >= node_cap:
            raise BoundExceeded(f"node budget {node_cap} exhausted",
                                undecided=True, nodes=created)
        uf.append(len(uf))
        rows.append([-1] * nl)
        created += 1
        return len(uf) - 1

    def merge(a, b):
        stack = [(a, b)]
        did = False
        while stack:
            x, y = stack.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            uf[y] = x
            did = True
            rx, ry = rows[x], rows[y]
            for k in range(nl):
                t1, t2 = rx[k], ry[k]
                if t1 == -1:
                    rx[k] = t2
                elif t2 != -1:
                    stack.append((t1, t2))
        return did

    def trace(n, word, define=True):
        x = find(n)
        for k in word:
            t = rows[x][k]
            if t == -1:
                if not define:
                    return None
                t = new_node()
                rows[x][k] = t
            x = find(t)
        return x

    while True:
        changed = False
        i = 0
        while i < len(rows):
            if find(i) == i:
                row = rows[i]
                for k in range(nl):
                    if row[k] == -1:
                        row[k] = new_node()
                        changed = True
                for u, v in rels:
                    if merge(trace(i, u), trace(i, v)):
                        changed = True
            i += 1
        if not changed:
            # verification pass: all relations must close without definitions
            ok = True
            for i in range(len(rows)):
                if find(i) != i:
                    continue
                for u, v in rels:
                    eu, ev = trace(i, u, define=False), trace(i, v, define=False)
                    if eu is None or ev is None or eu != ev:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                break

    live = [i for i in range(len(rows)) if find(i) == i]
    root = find(0)

    drop_root = False
    if p.kind == "semigroup":
        # the empty-word class leaves the semigroup iff nothing maps into it
        drop_root = not any(find(rows[i][k]) == root for i in live for k in range(nl))

    keep = [i for i in live if not (drop_root and i == root)]
    size = len(keep)
    if size > bound:
        raise BoundExceeded(f"presented size {size} exceeds bound {bound}",
                            undecided=False, size=size, nodes=created)

    # canonical renumbering: BFS from the empty word (or the letter images)
    newid = {}
    order = []
    if not drop_root:
        newid[root] = 0
        order.append(root)
    for k in range(nl):
        t = find(rows[root][k])
        if t not in newid:
            newid[t] = len(newid)
            order.append(t)
    qi = 0
    while qi < len(order):
        e = order[qi]
        qi += 1
        for k in range(nl):
            t = find(rows[e][k])
            if t not in newid:
                newid[t] = len(newid)
                order.append(t)
    assert len(order) == size

    right = [[newid[find(rows[e][k])] for k in range(nl)] for e in order]
    gens = [newid[find(rows[root][k])] for k in range(nl)]
    identity = newid[root] if not drop_root else None
    nf, parent = _bfs_words(right, gens, identity)
    t = CayleyTable(size, gens, right, nf, parent, identity)
    if identity is None:
        t.identity = _detect_identity(t)
    if size <= FULL_TABLE_CAP:
        t.full_table()
    return t


# ---------------------------------------------------------------------------
# Presentation verification
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    relations_hold: bool
    surjective: bool
    size_match: Optional[bool]          # None when enumeration was inconclusive
    presented_size: Optional[int]
    expected_size: int
    isomorphic: Optional[bool] = None
    failed_relation: Optional[tuple[Word, Word]] = None

    @property
    def ok(self) -> bool:
        return bool(self.relations_hold and self.surjective and self.size_match)

    @property
    def inconclusive(self) -> bool:
        return self.size_match is None

    def to_dict(self):
        return {
            "relations_hold": self.relations_hold,
            "surjective": self.surjective,
            "size_match": self.size_match,
            "presented_size": self.presented_size,
            "expected_size": self.expected_size,
            "isomorphic": self.isomorphic,
            "failed_relation":
                [list(self.failed_relation[0]), list(self.failed_relation[1])]
                if self.failed_relation else None,
        }


def _eval_map(p: Presentation, m: CayleyTable, gen_map: Sequence[int], word: Word) -> int:
    if not word:
        if m.identity is None:
            raise ValueError("empty word needs an identity in the target")
        return m.identity
    x = gen_map[word[0]]
    for k in word[1:]:
        x = m.mul(x, gen_map[k])
    return x


def verify_presentation(p: Presentation, m: CayleyTable,
                        gen_map: Sequence[int]) -> VerificationReport:
    """Three-verdict check that `p` presents `m` via letter -> element.

    relations_hold + surjective + size_match together certify the
    presentation by a finite cardinality argument; on success the presented
    table is also matched to `m` by a generator-respecting simultaneous BFS.
    """
    if len(gen_map) != len(p.alphabet):
        raise ValueError("gen_map must cover the alphabet")
    rep = VerificationReport(True, False, None, None, m.size)

    for u, v in p.relations:
        if _eval_map(p, m, gen_map, u) != _eval_map(p, m, gen_map, v):
            rep.relations_hold = False
            rep.failed_relation = (u, v)
            break

    seen = set(gen_map)
    if p.kind == "monoid":
        if m.identity is None:
            raise ValueError("monoid presentation against a table without identity")
        seen.add(m.identity)
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for b in gen_map:
                c = m.mul(a, b)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    rep.surjective = len(seen) == m.size

    try:
        t = enumerate_presentation(p, max(4 * m.size + 16, m.size + 1))
        rep.presented_size = t.size
        rep.size_match = t.size == m.size
    except BoundExceeded as e:
        if e.undecided:
            rep.size_match = None       # inconclusive, never success
            rep.presented_size = None
        else:
            rep.size_match = False
            rep.presented_size = e.size
        return rep

    if rep.ok:
        pairs = list(zip(t.gens, gen_map))
        if t.identity is not None and m.identity is not None:
            pairs.append((t.identity, m.identity))
        rep.isomorphic = iso_by_generators(t, m, pairs) is not None
    return rep


def iso_by_generators(t1: CayleyTable, t2: CayleyTable,
                      pairs: Iterable[tuple[int, int]]) -> Optional[dict]:
    """Simultaneous BFS matching: extends seed pairs to an isomorphism or fails.

    Requires the seed pairs' first components to generate t1 (together with
    its identity).  Right multiplication only; a resulting bijection that
    respects all generator columns is a homomorphism on the generated sets.
    """
    if t1.size != t2.size:
        return None
    fmap: dict[int, int] = {}
    back: dict[int, int] = {}
    queue = []
    seeds = list(pairs)
    if t1.identity is not None and t2.identity is not None:
        seeds.append((t1.identity, t2.identity))

    def put(a, b):
        if a in fmap:
            return fmap[a] == b
        if b in back:
            return False
        fmap[a] = b
        back[b] = a
        queue.append((a, b))
        return True

    gen_pairs = list(pairs)
    for a, b in seeds:
        if not put(a, b):
            return None
    while queue:
        a, b = queue.pop()
        for (g1, g2) in gen_pairs:
            if not put(t1.mul(a, g1), t2.mul(b, g2)):
                return None
    if len(fmap) != t1.size:
        return None
    # full homomorphism audit on the matched bijection
    for a in range(t1.size):
        for (g1, g2) in gen_pairs:
            if fmap[t1.mul(a, g1)] != t2.mul(fmap[a], g2):
                return None
    return fmap


def subtable(m: CayleyTable, subset: Iterable[int], *,
             gens: Optional[Sequence[int]] = None) -> tuple[CayleyTable, dict]:
    """Table of a subsemigroup of `m` on the given ids; returns (table, old->new).

    With no generating set every member acts as a generator.  The subset must
    be closed under the product.
    """
    ids = sorted(set(subset))
    idset = set(ids)
    identity = m.identity if m.identity in idset else None
    if gens is None:
        gens = [x for x in ids if x != identity]
    t = closure_from_generators(list(gens), m.mul, identity_hint=identity,
                                cap=len(ids) + 1)
    if t.size != len(ids) or any(e not in idset for e in t.elements):
        raise ValueError("subset is not closed / not generated by given gens")
    return t, {e: i for i, e in enumerate(t.elements)}


def table_presentation(m: CayleyTable) -> tuple[Presentation, list[int]]:
    """Multiplication-table presentation of a monoid: one letter per
    non-identity element, relations x_a x_b = word(ab)."""
    if m.identity is None:
        raise ValueError("table presentation requires a monoid")
    elems = [e for e in range(m.size) if e != m.identity]
    pos = {e: i for i, e in enumerate(elems)}
    names = [f"x{i}" for i in range(len(elems))]
    rels = []
    for a in elems:
        for b in elems:
            c = m.mul(a, b)
            rhs = () if c == m.identity else (pos[c],)
            rels.append(((pos[a], pos[b]), rhs))
    return Presentation.make(names, rels, "monoid"), elems
