"""Free metabelian Lie ring over ZZ on generators x1..xn.

Elements are sparse integer combinations of basis monomials.  A basis
monomial is a left-normed word (i1, ..., im): the generator x_{i1} for m = 1,
and for m >= 2 a word whose second letter is the smallest letter overall,
strictly smaller than the first, with the tail ascending:

    i2 < i1,  i2 <= i3 <= ... <= im.

Words of length >= 2 span the derived subring M'; the metabelian law says any
bracket of two such words vanishes, which is what makes the word calculus
below complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Union

from .errors import DegreeMismatch, NotInDerivedSubalgebra

LieWord = tuple[int, ...]
Exponents = tuple[int, ...]


# ---------------------------------------------------------------------------
# multidegrees and the standard order


def mdeg(word: LieWord, n: int) -> Exponents:
    out = [0] * n
    for letter in word:
        out[letter - 1] += 1
    return tuple(out)


def mdeg_key(delta: Exponents):
    """Sort key realising the dominance order: delta > gamma iff they differ
    at some largest index k with delta_k > gamma_k.  Reversing the vector
    turns that rule into plain tuple comparison."""
    return tuple(reversed(delta))


def std_key(n: int, word: LieWord):
    """Sort key for the standard order on words: total degree first (a fixed
    convention for mixed-degree comparisons, where the dominance rule alone
    could rank a short word above a long one), then multidegree dominance,
    then lexicographic comparison of the letter sequences."""
    return (len(word), mdeg_key(mdeg(word, n)), word)


def compare_std(n: int, u: LieWord, v: LieWord) -> int:
    """-1, 0 or 1 as u is below, equal to, or above v in the standard order."""
    ku, kv = std_key(n, u), std_key(n, v)
    return (ku > kv) - (ku < kv)


def iter_multidegrees(n: int, total: int) -> Iterator[Exponents]:
    """All exponent vectors over n variables with the given total degree."""
    for spots in combinations_with_replacement(range(n), total):
        out = [0] * n
        for s in spots:
            out[s] += 1
        yield tuple(out)


def multidegrees_up_to(n: int, max_total: int) -> list[Exponents]:
    """Multidegrees with 1 <= |delta| <= max_total, ascending by total degree
    and then by the dominance order."""
    out: list[Exponents] = []
    for d in range(1, max_total + 1):
        block = sorted(iter_multidegrees(n, d), key=mdeg_key)
        out.extend(block)
    return out


def letters_of(delta: Exponents) -> tuple[int, ...]:
    """The ascending letter multiset of an exponent vector."""
    out: list[int] = []
    for i, e in enumerate(delta, start=1):
        out.extend([i] * e)
    return tuple(out)


# ---------------------------------------------------------------------------
# word rewriting


def _word_nf(word: LieWord) -> dict[LieWord, int]:
    """Normal form of one left-normed word as {basis word: coefficient}.

    Letters at positions >= 3 permute freely, so the tail is sorted.  If the
    smallest letter sits in the tail, one application of

        [a, b, z, ...] = [a, z, b, ...] - [b, z, a, ...]

    moves it to position 2; since the moved letter is the global minimum,
    both resulting words are already in basis shape after sorting their
    tails, so no further rewriting is needed.  Swapping the first two letters
    only flips the sign.
    """
    m = len(word)
    if m == 1:
        return {word: 1}
    a, b = word[0], word[1]
    if a == b:
        return {}
    tail = sorted(word[2:])
    low = min(word)
    if b == low:
        return {(a, b, *tail): 1}
    if a == low:
        return {(b, a, *tail): -1}
    rest = list(tail)
    rest.remove(low)
    w_keep = (a, low, *sorted(rest + [b]))
    w_swap = (b, low, *sorted(rest + [a]))
    return {w_keep: 1, w_swap: -1}


def _is_basis_word(word: LieWord) -> bool:
    if len(word) == 1:
        return True
    if len(word) < 1:
        return False
    a, b = word[0], word[1]
    tail = word[2:]
    return b < a and all(x <= y for x, y in zip((b,) + tail, tail))


# ---------------------------------------------------------------------------
# element types


def _merge(acc: dict, key, coeff: int) -> None:
    c = acc.get(key, 0) + coeff
    if c:
        acc[key] = c
    else:
        acc.pop(key, None)


class LiePoly:
    """Integer combination of basis words over a fixed generator count.

    Instances are immutable; arithmetic returns fresh objects.  The raw
    constructor trusts its input, so build elements through `gen`,
    `from_word`, `free_normal_form` or arithmetic.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[LieWord, int]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", dict(terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("LiePoly is immutable")

    @classmethod
    def zero(cls, n: int) -> "LiePoly":
        return cls(n, {})

    @classmethod
    def gen(cls, n: int, i: int) -> "LiePoly":
        if not (1 <= i <= n):
            raise ValueError(f"generator x{i} out of range 1..{n}")
        return cls(n, {(i,): 1})

    @classmethod
    def from_word(cls, n: int, word: Iterable[int], coeff: int = 1) -> "LiePoly":
        word = tuple(word)
        for letter in word:
            if not (1 <= letter <= n):
                raise ValueError(f"letter x{letter} out of range 1..{n}")
        if not word:
            return cls.zero(n)
        return cls(n, {w: c * coeff for w, c in _word_nf(word).items() if c * coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, LiePoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: "LiePoly") -> "LiePoly":
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _merge(acc, w, c)
        return LiePoly(self.n, acc)

    def __sub__(self, other: "LiePoly") -> "LiePoly":
        return self + (-other)

    def __neg__(self) -> "LiePoly":
        return LiePoly(self.n, {w: -c for w, c in self.terms.items()})

    def __mul__(self, k: int) -> "LiePoly":
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return LiePoly.zero(self.n)
        return LiePoly(self.n, {w: c * k for w, c in self.terms.items()})

    __rmul__ = __mul__

    def _check(self, other: "LiePoly") -> None:
        if self.n != other.n:
            raise DegreeMismatch(
                f"mixing elements over {self.n} and {other.n} generators"
            )

    def sorted_terms(self) -> list[tuple[LieWord, int]]:
        """Terms greatest-first in the standard order."""
        return sorted(
            self.terms.items(), key=lambda t: std_key(self.n, t[0]), reverse=True
        )

    def support(self) -> frozenset[int]:
        return frozenset(l for w in self.terms for l in w)

    def in_derived(self) -> bool:
        return all(len(w) >= 2 for w in self.terms)

    def homogeneous_components(self) -> dict[Exponents, "LiePoly"]:
        buckets: dict[Exponents, dict[LieWord, int]] = {}
        for w, c in self.terms.items():
            buckets.setdefault(mdeg(w, self.n), {})[w] = c
        return {d: LiePoly(self.n, t) for d, t in buckets.items()}

    def multidegree(self) -> Exponents:
        comps = {mdeg(w, self.n) for w in self.terms}
        if len(comps) != 1:
            raise DegreeMismatch("element is not homogeneous")
        return comps.pop()

    def __repr__(self):
        return f"LiePoly({self.n}, {dict(self.sorted_terms())})"


class CommPoly:
    """Element of the integer polynomial ring ZZ[x1..xn], sparse on
    exponent vectors."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponents, int]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", dict(terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("CommPoly is immutable")

    @classmethod
    def zero(cls, n: int) -> "CommPoly":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "CommPoly":
        return cls(n, {(0,) * n: 1})

    @classmethod
    def gen(cls, n: int, i: int) -> "CommPoly":
        if not (1 <= i <= n):
            raise ValueError(f"variable x{i} out of range 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def monomial(cls, n: int, exps: Iterable[int], coeff: int = 1) -> "CommPoly":
        exps = tuple(exps)
        if len(exps) != n or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        return cls(n, {exps: coeff} if coeff else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, CommPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: "CommPoly") -> "CommPoly":
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _merge(acc, e, c)
        return CommPoly(self.n, acc)

    def __sub__(self, other: "CommPoly") -> "CommPoly":
        return self + (-other)

    def __neg__(self) -> "CommPoly":
        return CommPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Union["CommPoly", int]) -> "CommPoly":
        if isinstance(other, int):
            if other == 0:
                return CommPoly.zero(self.n)
            return CommPoly(self.n, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        acc: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _merge(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return CommPoly(self.n, acc)

    __rmul__ = __mul__

    def _check(self, other: "CommPoly") -> None:
        if self.n != other.n:
            raise DegreeMismatch(
                f"mixing polynomials over {self.n} and {other.n} variables"
            )

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        return sorted(
            self.terms.items(),
            key=lambda t: (sum(t[0]), mdeg_key(t[0])),
            reverse=True,
        )

    def __repr__(self):
        return f"CommPoly({self.n}, {dict(self.sorted_terms())})"


# ---------------------------------------------------------------------------
# raw (possibly nested) bracket expressions


@dataclass(frozen=True)
class RawGen:
    index: int


@dataclass(frozen=True)
class RawBracket:
    items: tuple  # of RawGen | RawBracket, length >= 2


RawAtom = Union[RawGen, RawBracket]
RawTerms = Iterable[tuple[int, RawAtom]]
LieLike = Union[LiePoly, RawTerms]


def _eval_atom(n: int, atom: RawAtom) -> LiePoly:
    if isinstance(atom, RawGen):
        return LiePoly.gen(n, atom.index)
    acc = _eval_atom(n, atom.items[0])
    for item in atom.items[1:]:
        acc = free_bracket(acc, _eval_atom(n, item))
    return acc


def free_normal_form(n: int, expr: LieLike) -> LiePoly:
    """Canonical form of a raw expression (or of a LiePoly, a no-op)."""
    if isinstance(expr, LiePoly):
        if expr.n != n:
            raise DegreeMismatch(f"element over {expr.n} generators, expected {n}")
        return expr
    acc = LiePoly.zero(n)
    for coeff, atom in expr:
        acc = acc + coeff * _eval_atom(n, atom)
    return acc


def free_bracket(p: LiePoly, q: LiePoly) -> LiePoly:
    """[p, q] in the free metabelian ring.

    Term by term: brackets of two length >= 2 words vanish (metabelian law);
    a trailing generator appends to the word; a leading generator appends to
    the other word with a sign flip.
    """
    p._check(q)
    acc: dict[LieWord, int] = {}
    for u, cu in p.terms.items():
        for v, cv in q.terms.items():
            if len(v) == 1:
                word, sign = u + v, 1
            elif len(u) == 1:
                word, sign = v + u, -1
            else:
                continue
            c = sign * cu * cv
            for w, k in _word_nf(word).items():
                _merge(acc, w, c * k)
    return LiePoly(p.n, acc)


def module_action(u: LiePoly, f: CommPoly) -> LiePoly:
    """The right action of ZZ[x1..xn] on the derived subring: u.x_i = [u, x_i]
    extended multiplicatively and additively.  Requires u without length-1
    terms; the letters of each monomial append in any fixed order (ascending
    here) since tail letters permute."""
    if u.n != f.n:
        raise DegreeMismatch(f"element over {u.n} generators, action over {f.n}")
    if not u.in_derived():
        raise NotInDerivedSubalgebra(
            "module action needs an element of the derived subring"
        )
    acc: dict[LieWord, int] = {}
    for w, cw in u.terms.items():
        for exps, cf in f.terms.items():
            word = w + letters_of(exps)
            c = cw * cf
            for nw, k in _word_nf(word).items():
                _merge(acc, nw, c * k)
    return LiePoly(u.n, acc)


def is_torsion_pair(u: LiePoly, f: CommPoly) -> bool:
    """True iff u.f = 0 with u != 0 and f != 0.  The free module is
    torsion-free, so this is always False there; the hook exists so the
    property can be asserted."""
    if u.is_zero() or f.is_zero():
        return False
    return module_action(u, f).is_zero()
