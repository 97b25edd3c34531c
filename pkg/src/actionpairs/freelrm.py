"""The free left restriction monoid as a concrete decision procedure.

Elements are pairs (A, w) with A a non-empty finite prefix-closed set of
words and w a member of A; the product is (A, w)(B, v) = (A + wB, wv) and
the unary operation drops the word part.  Words are plain strings over a
single-character alphabet, with 'e' printing as the empty word.
"""

from __future__ import annotations

import random
from typing import Iterable


class AlphabetMismatch(Exception):
    pass


def prefixes(w: str) -> frozenset:
    return frozenset(w[:i] for i in range(len(w) + 1))


def down(words: Iterable[str]) -> frozenset:
    """Prefix closure of a set of words (always contains the empty word)."""
    out = {""}
    for w in words:
        out |= prefixes(w)
    return frozenset(out)


class PrefixSet:
    __slots__ = ("words", "_hash")

    def __init__(self, words: Iterable[str]):
        ws = frozenset(words)
        if not ws:
            raise ValueError("prefix sets are non-empty")
        if any(w[:i] not in ws for w in ws for i in range(len(w))):
            raise ValueError("set is not prefix-closed")
        if "" not in ws:
            raise ValueError("the empty word is always present")
        self.words = ws
        self._hash = hash(ws)

    def __eq__(self, other):
        return isinstance(other, PrefixSet) and self.words == other.words

    def __hash__(self):
        return self._hash

    def __contains__(self, w):
        return w in self.words

    def __or__(self, other):
        return PrefixSet(self.words | other.words)

    def shift(self, w: str) -> "PrefixSet":
        """wA together with the prefixes of w; prefix-closure is automatic."""
        return PrefixSet(prefixes(w) | {w + v for v in self.words})

    def sorted_words(self) -> list:
        return sorted(self.words, key=lambda v: (len(v), v))

    def __repr__(self):
        return "{" + ",".join(w or "e" for w in self.sorted_words()) + "}"


class LRElement:
    __slots__ = ("pset", "word", "_hash")

    def __init__(self, pset: PrefixSet, word: str):
        if word not in pset:
            raise ValueError(f"{word!r} is not in the prefix set")
        self.pset = pset
        self.word = word
        self._hash = hash((pset, word))

    def __eq__(self, other):
        return (isinstance(other, LRElement) and self.pset == other.pset
                and self.word == other.word)

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        return lr_product(self, other)

    def __repr__(self):
        return f"{self.pset!r}@{self.word or 'e'}"

    def to_json(self):
        import json
        return json.dumps({"set": self.pset.sorted_words(), "word": self.word})


def element(words: Iterable[str], word: str = "") -> LRElement:
    return LRElement(PrefixSet(down(words)), word)


def lr_identity() -> LRElement:
    return LRElement(PrefixSet({""}), "")


def embed_word(w: str) -> LRElement:
    return LRElement(PrefixSet(prefixes(w)), w)


def lr_product(x: LRElement, y: LRElement) -> LRElement:
    w = x.word
    merged = PrefixSet(x.pset.words | {w + v for v in y.pset.words})
    return LRElement(merged, w + y.word)


def lr_plus(x: LRElement) -> LRElement:
    return LRElement(x.pset, "")


def act_word(w: str, a: PrefixSet) -> PrefixSet:
    """The action of a word on prefix sets: prefix closure of the shift."""
    return a.shift(w)


def sigma_related(x: LRElement, y: LRElement) -> bool:
    """The least congruence collapsing all projections relates two elements
    exactly when their word parts agree."""
    return x.word == y.word


def min_genset(alphabet: Iterable[str], length_bound: int) -> list[LRElement]:
    """The unique minimum monoid generating set, truncated to projections of
    words up to the length bound: all w-downsets as projections, plus the
    letters themselves."""
    letters = sorted(alphabet)
    if any(len(c) != 1 for c in letters):
        raise AlphabetMismatch("letters must be single characters")
    words = [""]
    out = []
    for _ in range(length_bound):
        words = [w + c for w in words for c in letters]
        out.extend(LRElement(PrefixSet(prefixes(w)), "") for w in words)
    out.extend(embed_word(c) for c in letters)
    return out


def all_prefix_sets(alphabet: Iterable[str], length_bound: int) -> list[PrefixSet]:
    """Every prefix-closed set of words of length <= the bound (small scales)."""
    letters = sorted(alphabet)
    out = [frozenset({""})]
    frontier = [frozenset({""})]
    seen = set(frontier)
    while frontier:
        nxt = []
        for ws in frontier:
            for w in ws:
                if len(w) < length_bound:
                    for c in letters:
                        ext = ws | {w + c}
                        if ext not in seen:
                            seen.add(ext)
                            nxt.append(ext)
                            out.append(ext)
        frontier = nxt
    return [PrefixSet(ws) for ws in out]


def is_atom(target: PrefixSet, pool: Iterable[PrefixSet]) -> bool:
    """No factorization target = A | B in the pool without one factor equal
    to the target (union is the semilattice product on prefix sets)."""
    for a in pool:
        if not a.words <= target.words:
            continue
        for b in pool:
            if a.words | b.words == target.words and \
                    a != target and b != target:
                return False
    return True


class Sampler:
    """Seeded random elements: prefix sets from up to four words of length
    up to four, paired with a random member word."""

    def __init__(self, alphabet="xy", seed=0x5EED):
        self.alphabet = sorted(alphabet)
        self.rng = random.Random(seed)

    def word(self, max_len=4) -> str:
        k = self.rng.randint(0, max_len)
        return "".join(self.rng.choice(self.alphabet) for _ in range(k))

    def prefix_set(self) -> PrefixSet:
        k = self.rng.randint(0, 4)
        return PrefixSet(down(self.word() for _ in range(k)))

    def element(self) -> LRElement:
        ps = self.prefix_set()
        word = self.rng.choice(ps.sorted_words())
        return LRElement(ps, word)


def parse(text: str) -> LRElement:
    """Text form "{e,x,xy}@xy" with 'e' for the empty word."""
    body, _, word = text.partition("@")
    body = body.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"bad element text {text!r}")
    words = [w.strip() for w in body[1:-1].split(",") if w.strip()]
    words = ["" if w == "e" else w for w in words]
    word = word.strip()
    return LRElement(PrefixSet(down(words) | frozenset(words)),
                     "" if word in ("e", "") else word)
