"""Partial transformations of degree n and the standard families.

Points are 1-based externally and in serialized forms; internally the image
tuple stores 0 as the undefined marker, so entries live in {0} | {1..n}.
Composition is left to right: x(ab) is defined iff xa and (xa)b are.
"""

from __future__ import annotations

import itertools
import json
from typing import Iterable, Optional, Sequence

UNDEF = 0


class DegreeMismatch(Exception):
    pass


class BadParams(Exception):
    pass


class PartialMap:
    __slots__ = ("n", "img", "_hash")

    def __init__(self, n: int, img: Sequence[int]):
        img = tuple(img)
        if len(img) != n or any(not (v == UNDEF or 1 <= v <= n) for v in img):
            raise BadParams(f"bad image tuple {img} for degree {n}")
        self.n = n
        self.img = img
        self._hash = hash((n, img))

    def __eq__(self, other):
        return isinstance(other, PartialMap) and self.n == other.n and self.img == other.img

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PartialMap({self.n}, {self.two_line()!r})"

    def __call__(self, x: int) -> Optional[int]:
        v = self.img[x - 1]
        return None if v == UNDEF else v

    def __mul__(self, other: "PartialMap") -> "PartialMap":
        return compose(self, other)

    # -- basic attributes ---------------------------------------------------

    def dom(self) -> frozenset:
        return frozenset(x + 1 for x, v in enumerate(self.img) if v != UNDEF)

    def im(self) -> frozenset:
        return frozenset(v for v in self.img if v != UNDEF)

    def rank(self) -> int:
        return len(self.im())

    def is_total(self) -> bool:
        return UNDEF not in self.img

    def is_injective(self) -> bool:
        vals = [v for v in self.img if v != UNDEF]
        return len(vals) == len(set(vals))

    def is_bijection(self) -> bool:
        return self.is_total() and self.is_injective()

    def ker(self) -> frozenset:
        """Kernel classes on the domain, as a frozenset of frozensets."""
        by_val: dict[int, list[int]] = {}
        for x, v in enumerate(self.img):
            if v != UNDEF:
                by_val.setdefault(v, []).append(x + 1)
        return frozenset(frozenset(c) for c in by_val.values())

    def restrict(self, points: Iterable[int]) -> "PartialMap":
        keep = set(points)
        return PartialMap(self.n, tuple(v if x + 1 in keep else UNDEF
                                        for x, v in enumerate(self.img)))

    def preimage(self, points: Iterable[int]) -> frozenset:
        tgt = set(points)
        return frozenset(x + 1 for x, v in enumerate(self.img)
                         if v != UNDEF and v in tgt)

    # -- text and JSON forms -------------------------------------------------

    def two_line(self) -> str:
        top = " ".join(str(i) for i in range(1, self.n + 1))
        bot = " ".join("-" if v == UNDEF else str(v) for v in self.img)
        return f"{top} / {bot}"

    @staticmethod
    def from_two_line(text: str) -> "PartialMap":
        top, bot = (part.split() for part in text.split("/"))
        if [int(t) for t in top] != list(range(1, len(top) + 1)):
            raise BadParams(f"top row must read 1..n: {text!r}")
        if len(bot) != len(top):
            raise BadParams(f"row lengths differ: {text!r}")
        return PartialMap(len(top), tuple(UNDEF if b == "-" else int(b) for b in bot))

    def to_json(self) -> str:
        return json.dumps([None if v == UNDEF else v for v in self.img])

    @staticmethod
    def from_json(text: str, n: Optional[int] = None) -> "PartialMap":
        seq = json.loads(text)
        return PartialMap(len(seq) if n is None else n,
                          tuple(UNDEF if v is None else v for v in seq))


def compose(a: PartialMap, b: PartialMap) -> PartialMap:
    if a.n != b.n:
        raise DegreeMismatch(f"degrees {a.n} and {b.n}")
    bi = b.img
    return PartialMap(a.n, tuple(UNDEF if v == UNDEF else bi[v - 1] for v in a.img))


def plus(a: PartialMap) -> PartialMap:
    """The partial identity on dom(a)."""
    return PartialMap(a.n, tuple(x + 1 if v != UNDEF else UNDEF
                                 for x, v in enumerate(a.img)))


# -- constructors ------------------------------------------------------------

def from_images(seq: Sequence[Optional[int]]) -> PartialMap:
    return PartialMap(len(seq), tuple(UNDEF if v is None else v for v in seq))


def identity(n: int) -> PartialMap:
    return PartialMap(n, tuple(range(1, n + 1)))


def empty_map(n: int) -> PartialMap:
    return PartialMap(n, (UNDEF,) * n)


def id_on(points: Iterable[int], n: int) -> PartialMap:
    keep = set(points)
    if any(not 1 <= x <= n for x in keep):
        raise BadParams(f"points {sorted(keep)} outside 1..{n}")
    return PartialMap(n, tuple(x if x in keep else UNDEF for x in range(1, n + 1)))


def eps(x: int, y: int, n: int) -> PartialMap:
    """The total idempotent with image {1..n}-{y}, sending y to x."""
    if x == y or not (1 <= x <= n and 1 <= y <= n):
        raise BadParams(f"eps needs distinct points in 1..{n}, got {x},{y}")
    return PartialMap(n, tuple(x if z == y else z for z in range(1, n + 1)))


def tau(x: int, y: int, n: int) -> PartialMap:
    """The transposition of x and y."""
    if x == y or not (1 <= x <= n and 1 <= y <= n):
        raise BadParams(f"tau needs distinct points in 1..{n}, got {x},{y}")
    img = list(range(1, n + 1))
    img[x - 1], img[y - 1] = y, x
    return PartialMap(n, img)


def constant(v: int, n: int) -> PartialMap:
    return PartialMap(n, (v,) * n)


def tuple_to_pmap(n, img):
    return PartialMap(n, img)


MAKE_KINDS = {"id_on": id_on, "eps": eps, "tau": tau,
              "from_images": from_images, "constant": constant,
              "identity": identity, "empty": empty_map}


def make(kind: str, *args, **kwargs) -> PartialMap:
    """Constructor dispatcher over the named builders above."""
    try:
        builder = MAKE_KINDS[kind]
    except KeyError:
        raise BadParams(f"unknown constructor {kind!r}") from None
    return builder(*args, **kwargs)


# -- families -----------------------------------------------------------------

FAMILY_KINDS = ("PT", "T", "I", "G", "E", "SingPT", "SingT", "SingI",
                "SingE", "PTminusT")

FAMILY_CAP = 7  # exhaustive listing cap on the degree


def family(kind: str, n: int) -> list[PartialMap]:
    """Exhaustive, canonically ordered element list of a named family."""
    if kind not in FAMILY_KINDS:
        raise BadParams(f"unknown family {kind!r}")
    if n < 0 or n > FAMILY_CAP:
        raise BadParams(f"degree {n} outside 0..{FAMILY_CAP}")
    vals = range(0, n + 1)   # 0 is the undefined marker
    if kind in ("PT", "SingPT", "PTminusT"):
        maps = [PartialMap(n, img) for img in itertools.product(vals, repeat=n)]
        if kind == "SingPT":
            maps = [a for a in maps if not a.is_bijection()]
        elif kind == "PTminusT":
            maps = [a for a in maps if not a.is_total()]
    elif kind in ("T", "SingT"):
        maps = [PartialMap(n, img) for img in itertools.product(range(1, n + 1), repeat=n)]
        if kind == "SingT":
            maps = [a for a in maps if not a.is_bijection()]
    elif kind in ("I", "SingI"):
        maps = [PartialMap(n, img) for img in itertools.product(vals, repeat=n)]
        maps = [a for a in maps if a.is_injective()]
        if kind == "SingI":
            maps = [a for a in maps if not a.is_bijection()]
    elif kind == "G":
        maps = [PartialMap(n, perm) for perm in itertools.permutations(range(1, n + 1))]
    else:  # E, SingE
        maps = [id_on(sub, n) for k in range(n + 1)
                for sub in itertools.combinations(range(1, n + 1), k)]
        if kind == "SingE":
            maps = [a for a in maps if a != identity(n)]
    return sorted(maps, key=lambda a: a.img)


def family_gens(kind: str, n: int) -> list[PartialMap]:
    """Standard generator lists: adjacent transpositions for G, those plus
    the adjacent eps idempotents for T (and a lost point for PT/I), all eps
    for the singular part of T, and the corank-one partial identities for E."""
    if n < 0:
        raise BadParams("negative degree")
    if kind == "G":
        if n <= 1:
            return [identity(n)]
        return [tau(i, i + 1, n) for i in range(1, n)]
    if kind == "T":
        if n <= 1:
            return [identity(n)]
        return (family_gens("G", n)
                + [eps(i, i + 1, n) for i in range(1, n)]
                + [eps(i + 1, i, n) for i in range(1, n)])
    if kind == "PT":
        return family_gens("T", n) + [id_on(set(range(1, n + 1)) - {i}, n)
                                      for i in range(1, n + 1)]
    if kind == "I":
        base = family_gens("G", n)
        if n >= 1:
            base = base + [id_on(set(range(2, n + 1)), n)]
        return base
    if kind == "E":
        return [id_on(set(range(1, n + 1)) - {i}, n) for i in range(1, n + 1)] or [identity(0)]
    if kind == "SingT":
        return [eps(x, y, n) for x in range(1, n + 1) for y in range(1, n + 1) if x != y]
    if kind == "SingPT":
        return family_gens("SingT", n) + [id_on(set(range(1, n + 1)) - {i}, n)
                                          for i in range(1, n + 1)]
    raise BadParams(f"no standard generator list for {kind!r}")


def family_size(kind: str, n: int) -> int:
    """Counting formulas, used as independent oracles in tests."""
    import math
    if kind == "PT":
        return (n + 1) ** n
    if kind == "T":
        return n ** n
    if kind == "G":
        return math.factorial(n)
    if kind == "I":
        return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))
    if kind == "E":
        return 2 ** n
    if kind == "SingE":
        return 2 ** n - 1
    if kind == "SingT":
        return n ** n - math.factorial(n)
    if kind == "SingPT":
        return (n + 1) ** n - math.factorial(n)
    if kind == "SingI":
        return family_size("I", n) - math.factorial(n)
    if kind == "PTminusT":
        return (n + 1) ** n - n ** n
    raise BadParams(f"unknown family {kind!r}")
